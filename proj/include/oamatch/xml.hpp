#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oamatch::xml {

struct MalformedXmlError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Small non-validating XML document model. Enough for RDF/XML ontology
// files and OAEI Alignment Format files: elements, attributes, text,
// comments, CDATA, DOCTYPE internal-subset ENTITY declarations.
struct Element {
    std::string name;                                        // as written, prefix kept
    std::vector<std::pair<std::string, std::string>> attrs;  // document order
    std::vector<Element> children;
    std::string text;                                        // concatenated character data

    // Local part after the namespace prefix, e.g. "rdf:about" -> "about".
    std::string local_name() const;
    const std::string* attr(std::string_view name) const;        // exact match
    const std::string* attr_local(std::string_view local) const; // by local part
    const Element* child_local(std::string_view local) const;    // first match
};

// Parses a complete document; returns the root element.
// Throws MalformedXmlError on unparseable input.
Element parse(std::string_view document);

std::string escape(std::string_view text);

} // namespace oamatch::xml
