#pragma once

#include "oamatch/backend.hpp"
#include "oamatch/evaluator.hpp"
#include "oamatch/extractor.hpp"
#include "oamatch/ontology_io.hpp"

#include <filesystem>

namespace oamatch {

// The OAEI conference track: seven ontologies, 21 unordered pairs.
const std::vector<std::string>& conference_ontologies();
std::vector<std::pair<std::string, std::string>> conference_pairs();

struct CorpusMissingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LayoutInvalidError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FetchFailedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Expected corpus layout:
//   <dir>/ontologies/<name>.owl      (7 files)
//   <dir>/reference/<a>-<b>.rdf      (21 ra1 files)
struct Corpus {
    std::filesystem::path dir;
    std::map<std::string, Ontology> ontologies;
    std::map<std::string, ParseStats> parse_stats;

    const Ontology& get(const std::string& name) const;
    Alignment reference(const std::string& a, const std::string& b) const;
};

// Verifies layout and parses all seven ontologies.
Corpus load_corpus(const std::filesystem::path& dir);

// Copies a local corpus directory, or downloads the per-file layout from
// an http(s) base URL, into `dest`; verifies 7 + 21 files and writes
// sha256 checksums. Idempotent for unchanged sources.
void fetch_corpus(const std::string& source, const std::filesystem::path& dest);

struct RunConfig {
    std::filesystem::path corpus_dir;
    std::vector<std::pair<std::string, std::string>> pairs;      // empty = all 21
    std::vector<StrategyId> strategies;                          // empty = P1..P7
    BackendConfig backend;
    TokenBudget budget;
    double min_confidence = 0.0;
    std::filesystem::path out_dir = "out";
    std::filesystem::path cache_dir;                             // empty = no cache
    int workers = 2;
    bool use_labels = false;
    bool micro_average = false;   // add a pooled-counts average row to report.md
};

struct CellResult {
    std::pair<std::string, std::string> pair;
    StrategyId strategy;
    enum class Status { Ok, TokenLimited, Failed } status = Status::Ok;
    std::string error;            // for TokenLimited / Failed
    EvalResult eval;
};

struct ExperimentResult {
    std::vector<CellResult> cells; // deterministic order: pair-major, strategy-minor
    int exit_code = 0;             // 0 ok, 1 partial cell failures
};

// Runs the (pair x strategy) grid: plan, complete, extract, evaluate,
// diagnose. Per-cell artifacts (transcript, extraction, alignment XML,
// diagnostics) land under out_dir, plus report.csv and report.md with a
// Table-3-shaped grid (dash cells for token-limited pairs, Average row
// excluding them). Cell failures are isolated, never abort the grid.
ExperimentResult run_experiment(const RunConfig& cfg);

} // namespace oamatch
