#include "oamatch/ontology_io.hpp"

#include "oamatch/xml.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace oamatch {

std::string case_fold(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

namespace {

std::string iri_fragment(std::string_view iri) {
    auto hash = iri.rfind('#');
    if (hash != std::string_view::npos) return std::string(iri.substr(hash + 1));
    auto slash = iri.rfind('/');
    if (slash != std::string_view::npos) return std::string(iri.substr(slash + 1));
    return std::string(iri);
}

struct Builder {
    std::string name;
    std::set<EntityId> entities;
    std::vector<Statement> statements;
    std::map<EntityId, std::string> labels;
    ParseStats stats;

    EntityId add(const std::string& local, EntityKind kind) {
        EntityId e{name, local, kind};
        entities.insert(e);
        return e;
    }

    void skip(std::string note) {
        ++stats.skipped_constructs;
        stats.skipped_notes.push_back(std::move(note));
    }

    // rdf:about / rdf:ID, empty if anonymous.
    static std::string node_id(const xml::Element& el) {
        if (const auto* about = el.attr_local("about")) return iri_fragment(*about);
        if (const auto* id = el.attr_local("ID")) return iri_fragment(*id);
        return {};
    }

    // A named class reference: rdf:resource attribute or a single nested
    // named class element. Empty string when the reference is anonymous.
    std::string class_ref(const xml::Element& el) {
        if (const auto* res = el.attr_local("resource")) return iri_fragment(*res);
        for (const auto& c : el.children) {
            if (c.local_name() == "Class") {
                std::string id = node_id(c);
                if (!id.empty()) return id;
            }
        }
        return {};
    }

    void handle_class(const xml::Element& el) {
        std::string id = node_id(el);
        if (id.empty()) {
            skip("anonymous class expression");
            return;
        }
        EntityId cls = add(id, EntityKind::Class);
        for (const auto& child : el.children) {
            std::string local = child.local_name();
            if (local == "subClassOf") {
                std::string super = class_ref(child);
                if (super.empty()) {
                    skip("subClassOf with non-named superclass on " + id);
                    continue;
                }
                EntityId sup = add(super, EntityKind::Class);
                statements.push_back({SubClassStmt{cls, sup}});
            } else if (local == "label") {
                if (!child.text.empty()) labels[cls] = child.text;
            } else if (local == "equivalentClass" || local == "disjointWith" ||
                       local == "unionOf" || local == "intersectionOf" ||
                       local == "complementOf" || local == "oneOf") {
                skip(local + " on class " + id);
            }
            // comments and annotations are ignored silently
        }
    }

    void handle_property(const xml::Element& el, EntityKind kind) {
        std::string id = node_id(el);
        if (id.empty()) {
            skip("anonymous property");
            return;
        }
        EntityId prop = add(id, kind);
        std::vector<std::string> domains;
        std::vector<std::string> ranges;
        for (const auto& child : el.children) {
            std::string local = child.local_name();
            if (local == "domain") {
                std::string d = class_ref(child);
                if (d.empty())
                    skip("non-named domain on property " + id);
                else
                    domains.push_back(d);
            } else if (local == "range") {
                if (const auto* res = child.attr_local("resource"))
                    ranges.push_back(iri_fragment(*res));
                else {
                    std::string r = class_ref(child);
                    if (r.empty())
                        skip("non-named range on property " + id);
                    else
                        ranges.push_back(r);
                }
            } else if (local == "label") {
                if (!child.text.empty()) labels[prop] = child.text;
            } else if (local == "inverseOf" || local == "subPropertyOf") {
                skip(local + " on property " + id);
            }
        }
        if (domains.empty() || ranges.empty()) {
            if (domains.empty() != ranges.empty())
                skip("property " + id + " with incomplete domain/range signature");
            return;
        }
        // one atomic signature per (domain, range) combination
        for (const auto& d : domains) {
            EntityId dom = add(d, EntityKind::Class);
            for (const auto& r : ranges) {
                PropertyRange range;
                if (kind == EntityKind::DataProperty)
                    range = r; // datatype local name stays a plain string
                else
                    range = add(r, EntityKind::Class);
                statements.push_back({PropertySignatureStmt{prop, dom, range}});
            }
        }
    }

    void handle_node(const xml::Element& el) {
        std::string local = el.local_name();
        if (local == "Class") {
            handle_class(el);
        } else if (local == "ObjectProperty") {
            handle_property(el, EntityKind::ObjectProperty);
        } else if (local == "DatatypeProperty") {
            handle_property(el, EntityKind::DataProperty);
        } else if (local == "Description") {
            // typed via rdf:type
            const xml::Element* type = el.child_local("type");
            if (!type) return;
            const auto* res = type->attr_local("resource");
            if (!res) return;
            std::string t = iri_fragment(*res);
            if (t == "Class")
                handle_class(el);
            else if (t == "ObjectProperty")
                handle_property(el, EntityKind::ObjectProperty);
            else if (t == "DatatypeProperty")
                handle_property(el, EntityKind::DataProperty);
        } else if (local == "Ontology" || local == "AnnotationProperty" ||
                   local == "FunctionalProperty" || local == "TransitiveProperty" ||
                   local == "SymmetricProperty" || local == "InverseFunctionalProperty") {
            // ontology header and property axioms we do not model
            if (local != "Ontology")
                skip(local + " axiom");
        } else if (local == "Restriction" || local == "AllDifferent") {
            skip(local);
        }
    }
};

} // namespace

ParsedOntology parse_ontology(std::string_view document, const std::string& name) {
    xml::Element root;
    try {
        root = xml::parse(document);
    } catch (const xml::MalformedXmlError& e) {
        throw MalformedOntologyError(e.what());
    }

    Builder b;
    b.name = name;

    std::string base = "http://" + name + "#";
    if (const auto* xb = root.attr("xml:base"))
        base = xb->ends_with("#") || xb->ends_with("/") ? *xb : *xb + "#";
    else if (const auto* xd = root.attr("xmlns"))
        base = *xd;

    if (root.local_name() == "RDF") {
        for (const auto& child : root.children) b.handle_node(child);
    } else {
        b.handle_node(root);
    }

    ParsedOntology out;
    out.ontology.name = name;
    out.ontology.base_iri = base;
    out.ontology.entities.assign(b.entities.begin(), b.entities.end());
    out.ontology.statements = std::move(b.statements);
    out.ontology.labels = std::move(b.labels);
    out.stats = std::move(b.stats);
    return out;
}

ResolveResult resolve_name(const Ontology& onto, std::string_view surface) {
    std::string exact(surface);
    std::string folded = case_fold(surface);
    std::string underscored = folded;
    std::replace(underscored.begin(), underscored.end(), ' ', '_');

    auto stage = [&](auto&& pred) {
        std::vector<EntityId> hits;
        for (const auto& e : onto.entities)
            if (pred(e)) hits.push_back(e);
        return hits;
    };

    std::vector<std::vector<EntityId>> stages;
    stages.push_back(stage([&](const EntityId& e) { return e.local == exact; }));
    stages.push_back(stage([&](const EntityId& e) { return case_fold(e.local) == folded; }));
    stages.push_back(
        stage([&](const EntityId& e) { return case_fold(e.local) == underscored; }));
    stages.push_back(stage([&](const EntityId& e) {
        auto it = onto.labels.find(e);
        return it != onto.labels.end() && case_fold(it->second) == folded;
    }));

    for (auto& hits : stages) {
        if (hits.size() == 1)
            return {ResolveResult::Status::Found, hits.front(), {}};
        if (hits.size() > 1) return {ResolveResult::Status::Ambiguous, {}, std::move(hits)};
    }
    return {ResolveResult::Status::NotFound, {}, {}};
}

} // namespace oamatch
