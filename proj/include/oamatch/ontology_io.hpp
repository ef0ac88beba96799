#pragma once

#include "oamatch/model.hpp"

#include <string_view>

namespace oamatch {

struct ParseStats {
    int skipped_constructs = 0;             // anonymous classes, restrictions, unions, ...
    std::vector<std::string> skipped_notes; // short description per skip
};

struct ParsedOntology {
    Ontology ontology;
    ParseStats stats;
};

struct MalformedOntologyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses the RDF/XML subset used by the OAEI conference track: named
// classes, subclass axioms with named superclasses, object/data
// properties with named domains and ranges. Anything else is skipped
// and counted, never an error. Empty ontologies are fine.
ParsedOntology parse_ontology(std::string_view document, const std::string& name);

struct ResolveResult {
    enum class Status { Found, NotFound, Ambiguous };
    Status status = Status::NotFound;
    EntityId entity;                 // valid iff Found
    std::vector<EntityId> candidates; // the tie, iff Ambiguous

    bool found() const { return status == Status::Found; }
};

// Maps an LLM surface form back to an entity. Stages, first hit wins:
// exact local name, case-folded local name, space->underscore plus
// case-fold, case-folded label. A tie within one stage is Ambiguous.
ResolveResult resolve_name(const Ontology& onto, std::string_view surface);

std::string case_fold(std::string_view s);

} // namespace oamatch
