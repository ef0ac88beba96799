#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace oamatch {

enum class EntityKind { Class, ObjectProperty, DataProperty };

const char* to_string(EntityKind k);

// A named entity inside one ontology, identified by its IRI fragment.
struct EntityId {
    std::string ontology;
    std::string local;
    EntityKind kind;

    auto operator<=>(const EntityId&) const = default;
};

struct SubClassStmt {
    EntityId sub;
    EntityId super;
};

// Range is either a class of the same ontology or a datatype local name
// (datatypes are never matched, so they stay plain strings).
using PropertyRange = std::variant<EntityId, std::string>;

struct PropertySignatureStmt {
    EntityId property;
    EntityId domain;
    PropertyRange range;
};

struct Statement {
    std::variant<SubClassStmt, PropertySignatureStmt> form;

    bool is_subclass() const { return std::holds_alternative<SubClassStmt>(form); }
    const SubClassStmt& subclass() const { return std::get<SubClassStmt>(form); }
    const PropertySignatureStmt& signature() const {
        return std::get<PropertySignatureStmt>(form);
    }
};

struct Ontology {
    std::string name;
    std::string base_iri;                       // e.g. "http://cmt#"
    std::vector<EntityId> entities;             // sorted, unique
    std::vector<Statement> statements;          // document order
    std::map<EntityId, std::string> labels;

    bool contains(const EntityId& e) const;
    const EntityId* find(const std::string& local, EntityKind kind) const;
    std::string iri_of(const EntityId& e) const { return base_iri + e.local; }
};

struct Provenance {
    std::string strategy;
    std::string raw_line;
};

struct Correspondence {
    EntityId source;
    EntityId target;
    double confidence = 1.0;                    // in [0,1]
    std::optional<Provenance> provenance;

    // relation is always equivalence ("=") in this artifact.
};

// Set of correspondences for one ontology pair. No duplicate
// (source, target) pairs; duplicates merge keeping max confidence.
struct Alignment {
    std::pair<std::string, std::string> pair;
    std::vector<Correspondence> correspondences; // sorted by (source, target)

    void add(Correspondence c);
    bool contains(const EntityId& s, const EntityId& t) const;
    std::size_t size() const { return correspondences.size(); }
};

struct PairMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace oamatch
