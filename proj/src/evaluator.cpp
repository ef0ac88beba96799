#include "oamatch/evaluator.hpp"

#include "oamatch/ontology_io.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace oamatch {

EvalResult EvalResult::from_counts(long tp, long fp, long fn) {
    EvalResult r;
    r.tp = tp;
    r.fp = fp;
    r.fn = fn;
    r.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    r.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    r.f1 = r.precision + r.recall > 0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    return r;
}

EvalResult evaluate(const Alignment& predicted, const Alignment& reference) {
    if (predicted.pair != reference.pair)
        throw PairMismatchError("evaluate: predicted pair " + predicted.pair.first + "-" +
                                predicted.pair.second + " vs reference " +
                                reference.pair.first + "-" + reference.pair.second);
    long tp = 0;
    for (const auto& c : predicted.correspondences)
        if (reference.contains(c.source, c.target)) ++tp;
    long fp = static_cast<long>(predicted.size()) - tp;
    long fn = static_cast<long>(reference.size()) - tp;
    return EvalResult::from_counts(tp, fp, fn);
}

Metrics macro_average(std::span<const Metrics> results) {
    if (results.empty()) throw EmptyInputError("macro_average of zero results");
    Metrics m;
    for (const auto& r : results) {
        m.precision += r.precision;
        m.recall += r.recall;
        m.f1 += r.f1;
    }
    auto n = static_cast<double>(results.size());
    m.precision /= n;
    m.recall /= n;
    m.f1 /= n;
    return m;
}

Metrics macro_average(std::span<const EvalResult> results) {
    std::vector<Metrics> metrics;
    metrics.reserve(results.size());
    for (const auto& r : results) metrics.push_back({r.precision, r.recall, r.f1});
    return macro_average(std::span<const Metrics>(metrics));
}

const char* to_string(FpCategory c) {
    switch (c) {
    case FpCategory::InversePropertySuspect: return "InversePropertySuspect";
    case FpCategory::SubclassFanOut: return "SubclassFanOut";
    case FpCategory::Hedged: return "Hedged";
    case FpCategory::Other: return "Other";
    }
    return "?";
}

std::size_t DiagnosticsReport::total() const {
    std::size_t n = 0;
    for (const auto& [_, v] : buckets) n += v.size();
    return n;
}

namespace {

bool is_property(const EntityId& e) { return e.kind != EntityKind::Class; }

// strict ancestors in the SubClass graph, cycle-safe
std::map<EntityId, std::set<EntityId>> ancestor_closure(const Ontology& o) {
    std::map<EntityId, std::set<EntityId>> parents;
    for (const auto& s : o.statements)
        if (s.is_subclass()) parents[s.subclass().sub].insert(s.subclass().super);

    std::map<EntityId, std::set<EntityId>> closure;
    std::function<const std::set<EntityId>&(const EntityId&, std::set<EntityId>&)> walk =
        [&](const EntityId& e, std::set<EntityId>& visiting) -> const std::set<EntityId>& {
        auto done = closure.find(e);
        if (done != closure.end()) return done->second;
        std::set<EntityId> anc;
        if (visiting.insert(e).second) {
            auto it = parents.find(e);
            if (it != parents.end())
                for (const auto& p : it->second) {
                    anc.insert(p);
                    const auto& up = walk(p, visiting);
                    anc.insert(up.begin(), up.end());
                }
            visiting.erase(e);
        }
        return closure.emplace(e, std::move(anc)).first->second;
    };
    std::set<EntityId> visiting;
    for (const auto& e : o.entities)
        if (e.kind == EntityKind::Class) walk(e, visiting);
    return closure;
}

// siblings or descendants under a common named superclass, or one on the
// ancestor path of the other
bool related_under_superclass(const EntityId& x, const EntityId& y,
                              const std::map<EntityId, std::set<EntityId>>& closure) {
    auto ix = closure.find(x);
    auto iy = closure.find(y);
    if (ix != closure.end() && ix->second.contains(y)) return true;
    if (iy != closure.end() && iy->second.contains(x)) return true;
    if (ix == closure.end() || iy == closure.end()) return false;
    std::vector<EntityId> common;
    std::set_intersection(ix->second.begin(), ix->second.end(), iy->second.begin(),
                          iy->second.end(), std::back_inserter(common));
    return !common.empty();
}

} // namespace

DiagnosticsReport classify_false_positives(const Alignment& predicted,
                                           const Alignment& reference, const Ontology& a,
                                           const Ontology& b) {
    if (predicted.pair != reference.pair)
        throw PairMismatchError("classify_false_positives: mismatched pairs");

    auto closure_a = ancestor_closure(a);
    auto closure_b = ancestor_closure(b);

    // classes correspond across the pair when predicted so, or when
    // their case-folded names agree
    auto corresponds = [&](const EntityId& x, const EntityId& y) {
        if (predicted.contains(x, y)) return true;
        return case_fold(x.local) == case_fold(y.local);
    };

    auto signatures_of = [](const Ontology& o, const EntityId& prop) {
        std::vector<const PropertySignatureStmt*> sigs;
        for (const auto& s : o.statements)
            if (!s.is_subclass() && s.signature().property == prop)
                sigs.push_back(&s.signature());
        return sigs;
    };

    auto inverse_suspect = [&](const Correspondence& c) {
        if (!is_property(c.source) || !is_property(c.target)) return false;
        for (const auto* sig_a : signatures_of(a, c.source)) {
            const EntityId* range_a = std::get_if<EntityId>(&sig_a->range);
            if (!range_a) continue;
            for (const auto* sig_b : signatures_of(b, c.target)) {
                const EntityId* range_b = std::get_if<EntityId>(&sig_b->range);
                if (!range_b) continue;
                // swapped signature: domain <-> range across the pair
                if (corresponds(sig_a->domain, *range_b) &&
                    corresponds(*range_a, sig_b->domain))
                    return true;
            }
        }
        return false;
    };

    auto fan_out = [&](const Correspondence& c) {
        for (const auto& other : predicted.correspondences) {
            if (other.target == c.target && other.source != c.source &&
                related_under_superclass(c.source, other.source, closure_a))
                return true;
            if (other.source == c.source && other.target != c.target &&
                related_under_superclass(c.target, other.target, closure_b))
                return true;
        }
        return false;
    };

    DiagnosticsReport report;
    for (const auto& c : predicted.correspondences) {
        if (reference.contains(c.source, c.target)) continue;
        FpCategory category = FpCategory::Other;
        if (inverse_suspect(c))
            category = FpCategory::InversePropertySuspect;
        else if (fan_out(c))
            category = FpCategory::SubclassFanOut;
        else if (c.confidence < 1.0)
            category = FpCategory::Hedged;
        report.buckets[category].push_back(c);
    }
    return report;
}

} // namespace oamatch
