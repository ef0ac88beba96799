#pragma once

#include "oamatch/model.hpp"
#include "oamatch/prompt.hpp"

#include <span>

namespace oamatch {

struct UnresolvedLine {
    std::string line;
    std::string reason;

    auto operator<=>(const UnresolvedLine&) const = default;
};

struct ExtractionReport {
    std::pair<std::string, std::string> pair;
    StrategyId strategy = StrategyId::P1;
    Alignment correspondences;          // carries provenance per entry
    std::vector<UnresolvedLine> unresolved;
    int hedged_count = 0;
};

// Scans a model response line by line for match statements:
//   X = Y       X <-> Y       X matches Y
//   Pred1 (A, B) = Pred2 (C, D)        (pairs Pred1 with Pred2)
// plus numbered/bulleted variants. Names resolve against (a, b); if
// that fails the swapped order is tried once. Hedged lines keep the
// match at confidence 0.5; "no match" lines produce nothing; anything
// that matched a pattern but cannot be resolved lands in unresolved.
// Never throws.
ExtractionReport extract(const std::string& response, const Ontology& a, const Ontology& b,
                         StrategyId strategy);

// Set-union with max-confidence merge; unresolved entries deduplicated.
// All reports must come from the same ontology pair.
ExtractionReport merge_reports(std::span<const ExtractionReport> reports);

} // namespace oamatch
