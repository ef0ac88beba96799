// oamatch: ontology alignment experiment runner.
//
// Pipelines the OAEI conference track through verbalization, prompt
// strategies P1-P7, a chat backend (mock or OpenAI-compatible remote),
// response extraction, and P/R/F1 evaluation with diagnostics.

#include "oamatch/alignment_io.hpp"
#include "oamatch/experiment.hpp"
#include "oamatch/ontology_io.hpp"
#include "oamatch/verbalizer.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace oamatch;
using nlohmann::json;

std::string read_file_or_die(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::pair<std::string, std::string> split_pair(const std::string& spec) {
    auto comma = spec.find(',');
    auto dash = spec.find('-');
    auto pos = comma != std::string::npos ? comma : dash;
    if (pos == std::string::npos)
        throw CLI::ValidationError("--pair expects 'onto1,onto2' or 'onto1-onto2'");
    return {spec.substr(0, pos), spec.substr(pos + 1)};
}

StrategyId parse_strategy(const std::string& name) {
    auto s = strategy_from_string(name);
    if (!s) throw CLI::ValidationError("unknown strategy '" + name + "' (use P1..P7)");
    return *s;
}

// Flat JSON config file; CLI flags override file values. The API secret
// comes only from the environment (OPENAI_API_KEY by default).
void apply_config_file(RunConfig& cfg, const std::string& path) {
    json j = json::parse(read_file_or_die(path));
    // keys mirror the long flags; the _dir spellings are also accepted
    for (const char* k : {"corpus", "corpus_dir"})
        if (j.contains(k)) cfg.corpus_dir = j[k].get<std::string>();
    for (const char* k : {"out", "out_dir"})
        if (j.contains(k)) cfg.out_dir = j[k].get<std::string>();
    for (const char* k : {"cache", "cache_dir"})
        if (j.contains(k)) cfg.cache_dir = j[k].get<std::string>();
    if (j.contains("backend"))
        cfg.backend.kind = j["backend"].get<std::string>() == "remote"
                               ? BackendConfig::Kind::Remote
                               : BackendConfig::Kind::Mock;
    if (j.contains("endpoint")) cfg.backend.endpoint = j["endpoint"].get<std::string>();
    if (j.contains("model")) cfg.backend.model = j["model"].get<std::string>();
    if (j.contains("temperature")) cfg.backend.temperature = j["temperature"].get<double>();
    if (j.contains("api_key_env")) cfg.backend.api_key_env = j["api_key_env"].get<std::string>();
    if (j.contains("budget")) cfg.budget.max_tokens = j["budget"].get<int>();
    if (j.contains("reserve")) cfg.budget.reserve_for_reply = j["reserve"].get<int>();
    if (j.contains("min_confidence")) cfg.min_confidence = j["min_confidence"].get<double>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
    if (j.contains("use_labels")) cfg.use_labels = j["use_labels"].get<bool>();
    if (j.contains("pairs"))
        for (const auto& p : j["pairs"]) cfg.pairs.push_back(split_pair(p.get<std::string>()));
    if (j.contains("strategies"))
        for (const auto& s : j["strategies"])
            cfg.strategies.push_back(parse_strategy(s.get<std::string>()));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Naive LLM ontology alignment pipeline (OAEI conference track)"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.corpus_dir = "data/corpus";

    std::string config_path;
    std::string backend_name;
    std::vector<std::string> pair_specs;
    std::vector<std::string> strategy_names;

    app.add_option("--config", config_path, "JSON config file (flags override it)");
    auto* opt_backend =
        app.add_option("--backend", backend_name, "mock or remote")->check(CLI::IsMember({"mock", "remote"}));
    app.add_option("--corpus", cfg.corpus_dir, "corpus directory");
    app.add_option("--budget", cfg.budget.max_tokens, "token budget");
    app.add_option("--reserve", cfg.budget.reserve_for_reply, "tokens reserved for the reply");
    app.add_option("--min-confidence", cfg.min_confidence, "confidence threshold for scoring");
    app.add_option("--out", cfg.out_dir, "output directory");
    app.add_option("--workers", cfg.workers, "concurrent grid cells");
    app.add_option("--cache", cfg.cache_dir, "response cache directory");
    app.add_option("--endpoint", cfg.backend.endpoint, "chat-completions base URL");
    app.add_option("--model", cfg.backend.model, "model name");
    auto* opt_pairs = app.add_option("--pairs", pair_specs, "pair selectors, e.g. cmt,sigkdd");
    auto* opt_strategies = app.add_option("--strategies", strategy_names, "strategies, e.g. P1 P3");
    app.add_flag("--use-labels", cfg.use_labels, "verbalize rdfs:label instead of IRI fragments");
    app.add_flag("--micro", cfg.micro_average, "add pooled-counts average to report.md");

    // fetch
    auto* fetch = app.add_subcommand("fetch", "download or import the conference corpus");
    std::string fetch_source;
    fetch->add_option("source", fetch_source, "base URL or local directory")->required();

    // ingest
    auto* ingest = app.add_subcommand("ingest", "parse the corpus and print coverage stats");

    // verbalize
    auto* verbalize = app.add_subcommand("verbalize", "emit one triple line per statement");
    std::string verb_onto, verb_file, verb_order = "as-parsed", verb_out;
    verbalize->add_option("--ontology", verb_onto, "corpus ontology name");
    verbalize->add_option("--file", verb_file, "standalone RDF/XML file");
    verbalize->add_option("--order", verb_order, "as-parsed, root-first, classes-then-properties")
        ->check(CLI::IsMember({"as-parsed", "root-first", "classes-then-properties"}));
    verbalize->add_option("-o,--output", verb_out, "write to file instead of stdout");

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "print the prompt plan for one pair");
    std::string plan_strategy = "P1", plan_pair, plan_format = "text";
    plan_cmd->add_option("--strategy", plan_strategy, "P1..P7")->required();
    plan_cmd->add_option("--pair", plan_pair, "onto1,onto2")->required();
    plan_cmd->add_option("--format", plan_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // match
    auto* match = app.add_subcommand("match", "run backend for selected cells, write alignments");
    bool match_dump_extraction = false;
    match->add_flag("--dump-extraction", match_dump_extraction,
                    "also print extraction reports as JSON");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "score a predicted alignment against ra1");
    std::string eval_pred, eval_pair, eval_ref;
    eval_cmd->add_option("--predicted", eval_pred, "predicted alignment XML")->required();
    eval_cmd->add_option("--pair", eval_pair, "onto1,onto2")->required();
    eval_cmd->add_option("--reference", eval_ref, "reference XML (default: corpus ra1)");

    // report
    auto* report = app.add_subcommand("report", "run the full experiment grid and write reports");

    // diagnose
    auto* diagnose = app.add_subcommand("diagnose", "classify false positives of a predicted alignment");
    std::string diag_pred, diag_pair;
    diagnose->add_option("--predicted", diag_pred, "predicted alignment XML")->required();
    diagnose->add_option("--pair", diag_pair, "onto1,onto2")->required();

    try {
        // --config is applied first so explicit flags can override it
        for (int i = 1; i < argc - 1; ++i)
            if (std::string(argv[i]) == "--config") apply_config_file(cfg, argv[i + 1]);

        app.parse(argc, argv);

        if (opt_backend->count())
            cfg.backend.kind = backend_name == "remote" ? BackendConfig::Kind::Remote
                                                        : BackendConfig::Kind::Mock;
        if (opt_pairs->count()) {
            cfg.pairs.clear();
            for (const auto& p : pair_specs) cfg.pairs.push_back(split_pair(p));
        }
        if (opt_strategies->count()) {
            cfg.strategies.clear();
            for (const auto& s : strategy_names) cfg.strategies.push_back(parse_strategy(s));
        }
        if (*fetch) {
            fetch_corpus(fetch_source, cfg.corpus_dir);
            std::cout << "corpus ready at " << cfg.corpus_dir.string() << "\n";
            return 0;
        }

        if (*ingest) {
            Corpus corpus = load_corpus(cfg.corpus_dir);
            for (const auto& name : conference_ontologies()) {
                const Ontology& o = corpus.get(name);
                const ParseStats& stats = corpus.parse_stats.at(name);
                std::size_t classes = 0, props = 0;
                for (const auto& e : o.entities)
                    (e.kind == EntityKind::Class ? classes : props) += 1;
                std::cout << name << ": " << classes << " classes, " << props
                          << " properties, " << o.statements.size() << " statements, "
                          << stats.skipped_constructs << " constructs skipped\n";
            }
            return 0;
        }

        if (*verbalize) {
            Ontology onto;
            if (!verb_file.empty()) {
                onto = parse_ontology(read_file_or_die(verb_file),
                                      std::filesystem::path(verb_file).stem().string())
                           .ontology;
            } else if (!verb_onto.empty()) {
                onto = load_corpus(cfg.corpus_dir).get(verb_onto);
            } else {
                throw CLI::ValidationError("verbalize needs --ontology or --file");
            }
            StatementOrder order = verb_order == "root-first"
                                       ? StatementOrder::RootFirst
                                       : verb_order == "classes-then-properties"
                                             ? StatementOrder::ClassesThenProperties
                                             : StatementOrder::AsParsed;
            std::ostringstream out;
            for (const auto& line : verbalize_ontology(onto, order, cfg.use_labels))
                out << line.text << "\n";
            if (verb_out.empty()) {
                std::cout << out.str();
            } else {
                std::ofstream f(verb_out, std::ios::binary);
                f << out.str();
            }
            return 0;
        }

        if (*plan_cmd) {
            Corpus corpus = load_corpus(cfg.corpus_dir);
            auto [name_a, name_b] = split_pair(plan_pair);
            PromptPlan plan = build_prompts(parse_strategy(plan_strategy), corpus.get(name_a),
                                            corpus.get(name_b), cfg.budget, cfg.use_labels);
            if (plan_format == "json") {
                json messages = json::array();
                for (const auto& m : plan.messages)
                    messages.push_back(
                        {{"role", "user"}, {"text", m.text}, {"token_estimate", m.token_estimate}});
                json j{{"strategy", to_string(plan.strategy)},
                       {"pair", {plan.pair.first, plan.pair.second}},
                       {"messages", messages},
                       {"expects_responses", plan.expects_responses}};
                std::cout << j.dump(2) << "\n";
            } else {
                for (std::size_t i = 0; i < plan.messages.size(); ++i) {
                    std::cout << "--- message " << i + 1 << " (" << plan.messages[i].token_estimate
                              << " tokens) ---\n"
                              << plan.messages[i].text << "\n";
                }
                std::cout << "expects " << plan.expects_responses << " responses\n";
            }
            return 0;
        }

        if (*match || *report) {
            ExperimentResult result = run_experiment(cfg);
            if (match_dump_extraction && *match)
                std::cout << "extraction reports written under "
                          << (cfg.out_dir / "cells").string() << "\n";
            std::size_t ok = 0, limited = 0, failed = 0;
            for (const auto& cell : result.cells) {
                switch (cell.status) {
                case CellResult::Status::Ok: ++ok; break;
                case CellResult::Status::TokenLimited: ++limited; break;
                case CellResult::Status::Failed: ++failed; break;
                }
            }
            std::cout << ok << " cells completed, " << limited << " token-limited, " << failed
                      << " failed; reports in " << cfg.out_dir.string() << "\n";
            return result.exit_code;
        }

        if (*eval_cmd || *diagnose) {
            Corpus corpus = load_corpus(cfg.corpus_dir);
            auto [name_a, name_b] = split_pair(*eval_cmd ? eval_pair : diag_pair);
            const Ontology& a = corpus.get(name_a);
            const Ontology& b = corpus.get(name_b);
            Alignment predicted = parse_alignment(
                read_file_or_die(*eval_cmd ? eval_pred : diag_pred), a, b);
            Alignment filtered;
            filtered.pair = predicted.pair;
            for (const auto& c : predicted.correspondences)
                if (c.confidence >= cfg.min_confidence) filtered.add(c);
            Alignment reference = !eval_ref.empty() && *eval_cmd
                                      ? parse_alignment(read_file_or_die(eval_ref), a, b)
                                      : corpus.reference(name_a, name_b);
            if (*eval_cmd) {
                EvalResult r = evaluate(filtered, reference);
                std::cout << "tp=" << r.tp << " fp=" << r.fp << " fn=" << r.fn
                          << " precision=" << r.precision << " recall=" << r.recall
                          << " f1=" << r.f1 << "\n";
            } else {
                DiagnosticsReport d = classify_false_positives(filtered, reference, a, b);
                json buckets = json::object();
                for (const auto& [cat, list] : d.buckets) {
                    json entries = json::array();
                    for (const auto& c : list)
                        entries.push_back({{"source", c.source.local},
                                           {"target", c.target.local},
                                           {"confidence", c.confidence}});
                    buckets[to_string(cat)] = entries;
                }
                std::cout << json{{"buckets", buckets}}.dump(2) << "\n";
            }
            return 0;
        }

        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const CorpusMissingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const LayoutInvalidError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const FetchFailedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
