#pragma once

#include "oamatch/model.hpp"
#include "oamatch/verbalizer.hpp"

#include <array>

namespace oamatch {

enum class StrategyId { P1, P2, P3, P4, P5, P6, P7 };

const char* to_string(StrategyId id);
std::optional<StrategyId> strategy_from_string(std::string_view name);

struct Strategy {
    StrategyId id;
    std::string description;
    std::string objective_text;
};

// The seven built-in strategies, stable order P1..P7.
const std::array<Strategy, 7>& list_strategies();

struct TokenBudget {
    int max_tokens = 8192;
    int reserve_for_reply = 1024; // must stay below max_tokens

    int message_cap() const { return max_tokens - reserve_for_reply; }
};

struct PlanMessage {
    std::string text;
    int token_estimate = 0;
};

struct PromptPlan {
    StrategyId strategy;
    std::pair<std::string, std::string> pair;
    std::vector<PlanMessage> messages; // all role "user"
    int expects_responses = 0;
};

struct TokenLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ceil(chars / 4); the estimator the 8192-token limit is checked against.
int estimate_tokens(std::string_view text);

// Builds the multi-turn plan for one strategy on one ontology pair.
//
// P1-P3 deliver all triples ahead of the objective in a single prompt;
// if that prompt exceeds the per-message budget the strategy fails with
// TokenLimitExceeded (the dash cells of the report). P4-P7 split content
// across messages by design, and oversized messages are further chunked
// at line boundaries into "continued:" messages; only a single line that
// alone exceeds the budget makes them fail.
PromptPlan build_prompts(StrategyId strategy, const Ontology& a, const Ontology& b,
                         const TokenBudget& budget, bool use_labels = false);

// Ontology-1 entities in the order P7 queries them: classes then
// properties, each in first-appearance (parse) order.
std::vector<EntityId> query_order(const Ontology& o);

// Fixed prompt fragments (exposed for tests and the mock backend).
extern const char* const kProblemDefinition;
extern const char* const kOntology1Header;
extern const char* const kOntology2Header;
extern const char* const kContinuedMarker;
extern const char* const kPerEntityQuestion;

} // namespace oamatch
