#include "oamatch/model.hpp"

#include <algorithm>

namespace oamatch {

const char* to_string(EntityKind k) {
    switch (k) {
    case EntityKind::Class: return "Class";
    case EntityKind::ObjectProperty: return "ObjectProperty";
    case EntityKind::DataProperty: return "DataProperty";
    }
    return "?";
}

bool Ontology::contains(const EntityId& e) const {
    return std::binary_search(entities.begin(), entities.end(), e);
}

const EntityId* Ontology::find(const std::string& local, EntityKind kind) const {
    for (const auto& e : entities)
        if (e.kind == kind && e.local == local) return &e;
    return nullptr;
}

static auto corr_key(const Correspondence& c) {
    return std::tie(c.source, c.target);
}

void Alignment::add(Correspondence c) {
    auto it = std::lower_bound(correspondences.begin(), correspondences.end(), c,
                               [](const Correspondence& x, const Correspondence& y) {
                                   return corr_key(x) < corr_key(y);
                               });
    if (it != correspondences.end() && corr_key(*it) == corr_key(c)) {
        if (c.confidence > it->confidence) {
            it->confidence = c.confidence;
            it->provenance = std::move(c.provenance);
        }
        return;
    }
    correspondences.insert(it, std::move(c));
}

bool Alignment::contains(const EntityId& s, const EntityId& t) const {
    Correspondence probe{s, t, 0.0, std::nullopt};
    auto it = std::lower_bound(correspondences.begin(), correspondences.end(), probe,
                               [](const Correspondence& x, const Correspondence& y) {
                                   return corr_key(x) < corr_key(y);
                               });
    return it != correspondences.end() && it->source == s && it->target == t;
}

} // namespace oamatch
