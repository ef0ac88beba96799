#pragma once

#include "oamatch/model.hpp"

#include <span>

namespace oamatch {

struct EvalResult {
    long tp = 0;
    long fp = 0;
    long fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    // P = tp/(tp+fp), R = tp/(tp+fn), F1 = 2PR/(P+R); empty denominators
    // give 0, so an empty prediction scores P=0 (documented convention,
    // some OAEI tooling uses P=1 there).
    static EvalResult from_counts(long tp, long fp, long fn);
};

// Correspondences compare as unordered (source, target) identity;
// confidence is ignored here, thresholds apply upstream.
EvalResult evaluate(const Alignment& predicted, const Alignment& reference);

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct EmptyInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unweighted per-pair mean of each metric independently (the mean F1 is
// not the F1 of means). Token-limited pairs must be excluded before the
// call.
Metrics macro_average(std::span<const Metrics> results);
Metrics macro_average(std::span<const EvalResult> results);

enum class FpCategory { InversePropertySuspect, SubclassFanOut, Hedged, Other };

const char* to_string(FpCategory c);

struct DiagnosticsReport {
    std::map<FpCategory, std::vector<Correspondence>> buckets;

    std::size_t total() const;
};

// Buckets every false positive into exactly one category, precedence
// InversePropertySuspect > SubclassFanOut > Hedged > Other.
//   InversePropertySuspect  both sides are properties and the predicted
//                           counterpart's (domain, range) is the swap of
//                           the source's, i.e. the match points at the
//                           inverse property
//   SubclassFanOut          one entity absorbs >= 2 predictions whose
//                           other sides are siblings/descendants under a
//                           common named superclass
//   Hedged                  confidence < 1.0
DiagnosticsReport classify_false_positives(const Alignment& predicted,
                                           const Alignment& reference, const Ontology& a,
                                           const Ontology& b);

} // namespace oamatch
