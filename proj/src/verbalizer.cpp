#include "oamatch/verbalizer.hpp"

#include <algorithm>
#include <deque>
#include <iostream>
#include <set>

namespace oamatch {

std::string humanize(const std::string& local) {
    std::string out = local;
    std::replace(out.begin(), out.end(), '_', ' ');
    return out;
}

namespace {

std::string surface(const EntityId& e, const std::map<EntityId, std::string>& labels,
                    bool use_labels) {
    if (use_labels) {
        auto it = labels.find(e);
        if (it != labels.end()) return humanize(it->second);
    }
    return humanize(e.local);
}

std::string range_surface(const PropertyRange& r,
                          const std::map<EntityId, std::string>& labels, bool use_labels) {
    if (const EntityId* e = std::get_if<EntityId>(&r)) return surface(*e, labels, use_labels);
    return humanize(std::get<std::string>(r));
}

} // namespace

std::string verbalize_statement(const Statement& s,
                                const std::map<EntityId, std::string>& labels,
                                bool use_labels) {
    if (s.is_subclass()) {
        const auto& sc = s.subclass();
        return "Is-a (" + surface(sc.sub, labels, use_labels) + ", " +
               surface(sc.super, labels, use_labels) + ")";
    }
    const auto& sig = s.signature();
    // property names keep their camelCase verbatim
    return sig.property.local + " (" + surface(sig.domain, labels, use_labels) + ", " +
           range_surface(sig.range, labels, use_labels) + ")";
}

std::vector<VerbalizedLine> verbalize_ontology(const Ontology& o, StatementOrder order,
                                               bool use_labels) {
    std::vector<const Statement*> ordered;
    ordered.reserve(o.statements.size());

    auto push_all = [&](bool subclasses) {
        for (const auto& s : o.statements)
            if (s.is_subclass() == subclasses) ordered.push_back(&s);
    };

    switch (order) {
    case StatementOrder::AsParsed:
        for (const auto& s : o.statements) ordered.push_back(&s);
        break;
    case StatementOrder::ClassesThenProperties:
        push_all(true);
        push_all(false);
        break;
    case StatementOrder::RootFirst: {
        // roots = classes that are never a subclass
        std::set<EntityId> subs;
        for (const auto& s : o.statements)
            if (s.is_subclass()) subs.insert(s.subclass().sub);
        std::deque<EntityId> queue;
        std::set<EntityId> seen;
        for (const auto& e : o.entities)
            if (e.kind == EntityKind::Class && !subs.contains(e)) {
                queue.push_back(e);
                seen.insert(e);
            }
        std::vector<bool> emitted(o.statements.size(), false);
        while (!queue.empty()) {
            EntityId parent = queue.front();
            queue.pop_front();
            for (std::size_t i = 0; i < o.statements.size(); ++i) {
                const Statement& s = o.statements[i];
                if (emitted[i] || !s.is_subclass() || s.subclass().super != parent)
                    continue;
                emitted[i] = true;
                ordered.push_back(&s);
                if (seen.insert(s.subclass().sub).second) queue.push_back(s.subclass().sub);
            }
        }
        bool leftover = false;
        for (std::size_t i = 0; i < o.statements.size(); ++i)
            if (!emitted[i] && o.statements[i].is_subclass()) {
                if (!leftover)
                    std::cerr << "warning: subclass cycle in ontology '" << o.name
                              << "', falling back to parse order for unreachable statements\n";
                leftover = true;
                ordered.push_back(&o.statements[i]);
            }
        push_all(false);
        break;
    }
    }

    std::vector<VerbalizedLine> lines;
    lines.reserve(ordered.size());
    for (const Statement* s : ordered)
        lines.push_back({verbalize_statement(*s, o.labels, use_labels), s});
    return lines;
}

} // namespace oamatch
