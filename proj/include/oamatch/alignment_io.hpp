#pragma once

#include "oamatch/model.hpp"

#include <string_view>

namespace oamatch {

struct MalformedAlignmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnresolvedEntityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reads an OAEI Alignment Format document (Cell/entity1/entity2/
// relation/measure). Entity IRIs are resolved against the two
// ontologies by fragment; an IRI matching neither is an error.
Alignment parse_alignment(std::string_view document, const Ontology& onto1,
                          const Ontology& onto2);

// Emits Alignment Format XML, one Cell per correspondence, measure =
// confidence, relation "=". parse_alignment of the output recovers the
// correspondence set.
std::string serialize_alignment(const Alignment& al, const Ontology& onto1,
                                const Ontology& onto2);

} // namespace oamatch
