#include "oamatch/alignment_io.hpp"

#include "oamatch/xml.hpp"

#include <cstdio>
#include <functional>
#include <sstream>

namespace oamatch {

namespace {

std::string iri_fragment(std::string_view iri) {
    auto hash = iri.rfind('#');
    if (hash != std::string_view::npos) return std::string(iri.substr(hash + 1));
    auto slash = iri.rfind('/');
    if (slash != std::string_view::npos) return std::string(iri.substr(slash + 1));
    return std::string(iri);
}

EntityId resolve_iri(const std::string& iri, const Ontology& onto) {
    std::string frag = iri_fragment(iri);
    for (auto kind : {EntityKind::Class, EntityKind::ObjectProperty, EntityKind::DataProperty})
        if (const EntityId* e = onto.find(frag, kind)) return *e;
    throw UnresolvedEntityError("entity IRI <" + iri + "> matches nothing in ontology '" +
                                onto.name + "'");
}

} // namespace

Alignment parse_alignment(std::string_view document, const Ontology& onto1,
                          const Ontology& onto2) {
    xml::Element root;
    try {
        root = xml::parse(document);
    } catch (const xml::MalformedXmlError& e) {
        throw MalformedAlignmentError(e.what());
    }

    Alignment al;
    al.pair = {onto1.name, onto2.name};

    std::function<void(const xml::Element&)> walk = [&](const xml::Element& el) {
        if (el.local_name() == "Cell") {
            const xml::Element* e1 = el.child_local("entity1");
            const xml::Element* e2 = el.child_local("entity2");
            if (!e1 || !e2)
                throw MalformedAlignmentError("Cell without entity1/entity2");
            const std::string* iri1 = e1->attr_local("resource");
            const std::string* iri2 = e2->attr_local("resource");
            if (!iri1 || !iri2)
                throw MalformedAlignmentError("Cell entity without rdf:resource");
            Correspondence c;
            c.source = resolve_iri(*iri1, onto1);
            c.target = resolve_iri(*iri2, onto2);
            c.confidence = 1.0;
            if (const xml::Element* m = el.child_local("measure")) {
                try {
                    c.confidence = std::stod(m->text);
                } catch (const std::exception&) {
                    throw MalformedAlignmentError("unparseable measure '" + m->text + "'");
                }
            }
            al.add(std::move(c));
            return;
        }
        for (const auto& child : el.children) walk(child);
    };
    walk(root);
    return al;
}

std::string serialize_alignment(const Alignment& al, const Ontology& onto1,
                                const Ontology& onto2) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
        << "<rdf:RDF xmlns=\"http://knowledgeweb.semanticweb.org/heterogeneity/alignment\"\n"
        << "         xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\"\n"
        << "         xmlns:xsd=\"http://www.w3.org/2001/XMLSchema#\">\n"
        << "<Alignment>\n"
        << "  <xml>yes</xml>\n"
        << "  <level>0</level>\n"
        << "  <type>11</type>\n"
        << "  <onto1>" << xml::escape(onto1.base_iri) << "</onto1>\n"
        << "  <onto2>" << xml::escape(onto2.base_iri) << "</onto2>\n";
    for (const auto& c : al.correspondences) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", c.confidence);
        std::string measure(buf);
        if (measure.find('.') == std::string::npos &&
            measure.find('e') == std::string::npos)
            measure += ".0";
        out << "  <map>\n"
            << "    <Cell>\n"
            << "      <entity1 rdf:resource=\"" << xml::escape(onto1.iri_of(c.source))
            << "\"/>\n"
            << "      <entity2 rdf:resource=\"" << xml::escape(onto2.iri_of(c.target))
            << "\"/>\n"
            << "      <relation>=</relation>\n"
            << "      <measure rdf:datatype=\"http://www.w3.org/2001/XMLSchema#float\">"
            << measure << "</measure>\n"
            << "    </Cell>\n"
            << "  </map>\n";
    }
    out << "</Alignment>\n</rdf:RDF>\n";
    return out.str();
}

} // namespace oamatch
