#include "oamatch/prompt.hpp"

#include <algorithm>

namespace oamatch {

const char* const kProblemDefinition =
    "In this task, we are given two ontologies in the form of Relation(Subject, Object), "
    "which consist of classes and properties.";
const char* const kOntology1Header = "Ontology 1:";
const char* const kOntology2Header = "Ontology 2:";
const char* const kContinuedMarker = "continued:";
const char* const kPerEntityQuestion =
    "For a class/property in the first ontology, which class/property in ontology 2 is "
    "the best match?";

namespace {

const std::string kObjectiveSemantic =
    "Our objective is to provide ontology mapping for the provided ontologies based on "
    "their semantic similarities.";
const std::string kObjectiveComplete =
    "Provide a complete and comprehensive matching of the ontologies";
const std::string kObjectiveAccurate =
    "Match these two ontologies and provide the most accurate matching you can do";

} // namespace

const char* to_string(StrategyId id) {
    static const char* names[] = {"P1", "P2", "P3", "P4", "P5", "P6", "P7"};
    return names[static_cast<int>(id)];
}

std::optional<StrategyId> strategy_from_string(std::string_view name) {
    for (int i = 0; i < 7; ++i)
        if (name == to_string(static_cast<StrategyId>(i)))
            return static_cast<StrategyId>(i);
    return std::nullopt;
}

const std::array<Strategy, 7>& list_strategies() {
    static const std::array<Strategy, 7> strategies = {{
        {StrategyId::P1, "Put all the information in a single prompt.", kObjectiveSemantic},
        {StrategyId::P2, "Changing the objective of the prompts.", kObjectiveComplete},
        {StrategyId::P3, "Changing the objective of the prompt.", kObjectiveAccurate},
        {StrategyId::P4,
         "Separate the class and data/object properties in two consecutive prompts.",
         kObjectiveSemantic},
        {StrategyId::P5, "Following the P4 pattern but changing the objective of the prompt.",
         kObjectiveAccurate},
        {StrategyId::P6,
         "Following the P4 pattern but changing the order of triples to prioritize the "
         "root class entities.",
         kObjectiveSemantic},
        {StrategyId::P7,
         "First provide the ontologies, then ask for the best match of each "
         "class/property of the first ontology.",
         kObjectiveSemantic},
    }};
    return strategies;
}

int estimate_tokens(std::string_view text) {
    return static_cast<int>((text.size() + 3) / 4);
}

std::vector<EntityId> query_order(const Ontology& o) {
    std::vector<EntityId> out;
    auto push = [&](const EntityId& e) {
        if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    };
    // classes in first-appearance order
    for (const auto& s : o.statements) {
        if (s.is_subclass()) {
            push(s.subclass().sub);
            push(s.subclass().super);
        } else {
            push(s.signature().domain);
            if (const EntityId* r = std::get_if<EntityId>(&s.signature().range)) push(*r);
        }
    }
    for (const auto& e : o.entities)
        if (e.kind == EntityKind::Class) push(e);
    // then properties
    std::vector<EntityId> props;
    auto push_prop = [&](const EntityId& e) {
        if (std::find(props.begin(), props.end(), e) == props.end()) props.push_back(e);
    };
    for (const auto& s : o.statements)
        if (!s.is_subclass()) push_prop(s.signature().property);
    for (const auto& e : o.entities)
        if (e.kind != EntityKind::Class) push_prop(e);
    // drop classes collected into the property pass guard
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const EntityId& e) { return e.kind != EntityKind::Class; }),
              out.end());
    out.insert(out.end(), props.begin(), props.end());
    return out;
}

namespace {

std::vector<std::string> line_texts(const Ontology& o, StatementOrder order, bool use_labels,
                                    bool subclasses_only, bool properties_only) {
    std::vector<std::string> out;
    for (const auto& line : verbalize_ontology(o, order, use_labels)) {
        bool is_sub = line.source->is_subclass();
        if (subclasses_only && !is_sub) continue;
        if (properties_only && is_sub) continue;
        out.push_back(line.text);
    }
    return out;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += '\n';
        out += parts[i];
    }
    return out;
}

struct PlanBuilder {
    const TokenBudget& budget;
    std::vector<PlanMessage> messages;

    void add_single(std::string text) {
        int est = estimate_tokens(text);
        if (est > budget.message_cap())
            throw TokenLimitExceeded("prompt of " + std::to_string(est) +
                                     " tokens exceeds budget of " +
                                     std::to_string(budget.message_cap()) +
                                     " and this strategy cannot split it");
        messages.push_back({std::move(text), est});
    }

    // Packs units (scaffold text, triple lines, trailing objective) into
    // as few messages as fit; overflow continues in "continued:" messages,
    // split at unit boundaries only.
    void add_chunked(const std::vector<std::string>& units) {
        std::string current;
        auto flush = [&] {
            if (current.empty()) return;
            messages.push_back({current, estimate_tokens(current)});
            current.clear();
        };
        for (const auto& unit : units) {
            std::string candidate = current.empty() ? unit : current + "\n" + unit;
            if (estimate_tokens(candidate) <= budget.message_cap()) {
                current = std::move(candidate);
                continue;
            }
            flush();
            std::string cont = std::string(kContinuedMarker) + "\n" + unit;
            if (estimate_tokens(cont) > budget.message_cap())
                throw TokenLimitExceeded("a single prompt line of " +
                                         std::to_string(estimate_tokens(unit)) +
                                         " tokens exceeds the budget of " +
                                         std::to_string(budget.message_cap()));
            current = std::move(cont);
        }
        flush();
    }
};

std::string both_blocks(const std::vector<std::string>& lines1,
                        const std::vector<std::string>& lines2) {
    return std::string(kOntology1Header) + "\n" + join(lines1) + "\n\n" + kOntology2Header +
           "\n" + join(lines2);
}

std::vector<std::string> block_units(const std::string& scaffold,
                                     const std::vector<std::string>& lines1,
                                     const std::vector<std::string>& lines2,
                                     const std::string& trailer) {
    std::vector<std::string> units;
    units.push_back(scaffold.empty() ? std::string(kOntology1Header)
                                     : scaffold + "\n\n" + kOntology1Header);
    units.insert(units.end(), lines1.begin(), lines1.end());
    units.push_back(std::string("\n") + kOntology2Header);
    units.insert(units.end(), lines2.begin(), lines2.end());
    if (!trailer.empty()) units.push_back("\n" + trailer);
    return units;
}

} // namespace

PromptPlan build_prompts(StrategyId strategy, const Ontology& a, const Ontology& b,
                         const TokenBudget& budget, bool use_labels) {
    if (budget.reserve_for_reply >= budget.max_tokens || budget.max_tokens <= 0)
        throw TokenLimitExceeded("invalid token budget: reserve_for_reply must stay below "
                                 "max_tokens");

    PlanBuilder builder{budget};
    const std::string pd = kProblemDefinition;
    const auto& descriptors = list_strategies();
    const std::string objective = descriptors[static_cast<int>(strategy)].objective_text;

    auto all_a = line_texts(a, StatementOrder::AsParsed, use_labels, false, false);
    auto all_b = line_texts(b, StatementOrder::AsParsed, use_labels, false, false);

    switch (strategy) {
    case StrategyId::P1:
        builder.add_single(pd + "\n\n" + both_blocks(all_a, all_b) + "\n\n" + objective);
        break;
    case StrategyId::P2:
    case StrategyId::P3:
        builder.add_single(pd + "\n\n" + both_blocks(all_a, all_b));
        builder.add_single(objective);
        break;
    case StrategyId::P4:
    case StrategyId::P5:
    case StrategyId::P6: {
        StatementOrder class_order = strategy == StrategyId::P6 ? StatementOrder::RootFirst
                                                                : StatementOrder::AsParsed;
        auto classes_a = line_texts(a, class_order, use_labels, true, false);
        auto classes_b = line_texts(b, class_order, use_labels, true, false);
        auto props_a = line_texts(a, StatementOrder::AsParsed, use_labels, false, true);
        auto props_b = line_texts(b, StatementOrder::AsParsed, use_labels, false, true);
        builder.add_chunked(block_units(pd, classes_a, classes_b, ""));
        builder.add_chunked(block_units("", props_a, props_b, objective));
        break;
    }
    case StrategyId::P7: {
        std::vector<std::string> context;
        context.push_back(pd + "\n\n" + kOntology1Header);
        context.insert(context.end(), all_a.begin(), all_a.end());
        builder.add_chunked(context);
        std::vector<std::string> units;
        units.push_back(std::string(kPerEntityQuestion) + "\n\n" + kOntology2Header);
        units.insert(units.end(), all_b.begin(), all_b.end());
        builder.add_chunked(units);
        for (const EntityId& e : query_order(a)) {
            std::string name = humanize(e.local);
            builder.add_single("For \"" + name +
                               "\" in the first ontology, which class/property in ontology "
                               "2 is the best match?");
        }
        break;
    }
    }

    PromptPlan plan;
    plan.strategy = strategy;
    plan.pair = {a.name, b.name};
    plan.messages = std::move(builder.messages);
    plan.expects_responses = static_cast<int>(plan.messages.size());
    return plan;
}

} // namespace oamatch
