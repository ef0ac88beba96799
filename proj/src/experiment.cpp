#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "oamatch/experiment.hpp"

#include "oamatch/alignment_io.hpp"
#include "oamatch/ontology_io.hpp"

#include "httplib.h"
#include "json.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace oamatch {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string>& conference_ontologies() {
    static const std::vector<std::string> names = {"cmt",  "conference", "confOf", "edas",
                                                   "ekaw", "iasted",     "sigkdd"};
    return names;
}

std::vector<std::pair<std::string, std::string>> conference_pairs() {
    const auto& names = conference_ontologies();
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            pairs.emplace_back(names[i], names[j]);
    return pairs;
}

const Ontology& Corpus::get(const std::string& name) const {
    auto it = ontologies.find(name);
    if (it == ontologies.end())
        throw CorpusMissingError("ontology '" + name + "' not loaded");
    return it->second;
}

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusMissingError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, std::string_view content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

fs::path ontology_path(const fs::path& dir, const std::string& name) {
    return dir / "ontologies" / (name + ".owl");
}

fs::path reference_path(const fs::path& dir, const std::string& a, const std::string& b) {
    return dir / "reference" / (a + "-" + b + ".rdf");
}

std::vector<std::string> missing_files(const fs::path& dir) {
    std::vector<std::string> missing;
    for (const auto& name : conference_ontologies())
        if (!fs::exists(ontology_path(dir, name)))
            missing.push_back(ontology_path(dir, name).lexically_relative(dir).string());
    for (const auto& [a, b] : conference_pairs())
        if (!fs::exists(reference_path(dir, a, b)))
            missing.push_back(reference_path(dir, a, b).lexically_relative(dir).string());
    return missing;
}

} // namespace

Alignment Corpus::reference(const std::string& a, const std::string& b) const {
    return parse_alignment(read_file(reference_path(dir, a, b)), get(a), get(b));
}

Corpus load_corpus(const fs::path& dir) {
    if (!fs::is_directory(dir))
        throw CorpusMissingError("corpus directory not found: " + dir.string());
    if (auto missing = missing_files(dir); !missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += "\n  " + m;
        throw LayoutInvalidError("corpus layout invalid, missing files:" + list);
    }
    Corpus corpus;
    corpus.dir = dir;
    for (const auto& name : conference_ontologies()) {
        ParsedOntology parsed = parse_ontology(read_file(ontology_path(dir, name)), name);
        corpus.parse_stats[name] = std::move(parsed.stats);
        corpus.ontologies[name] = std::move(parsed.ontology);
    }
    return corpus;
}

void fetch_corpus(const std::string& source, const fs::path& dest) {
    auto is_url = source.rfind("http://", 0) == 0 || source.rfind("https://", 0) == 0;

    if (is_url) {
        auto scheme_end = source.find("://");
        auto path_start = source.find('/', scheme_end + 3);
        std::string base =
            path_start == std::string::npos ? source : source.substr(0, path_start);
        std::string prefix =
            path_start == std::string::npos ? "" : source.substr(path_start);
        if (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

        httplib::Client client(base);
        client.set_follow_location(true);
        auto download = [&](const std::string& remote, const fs::path& local) {
            auto res = client.Get(prefix + remote);
            if (!res || res->status != 200)
                throw FetchFailedError("download failed: " + source + remote +
                                       (res ? " (status " + std::to_string(res->status) + ")"
                                            : " (" + httplib::to_string(res.error()) + ")"));
            write_file(local, res->body);
        };
        for (const auto& name : conference_ontologies())
            download("/" + name + ".owl", ontology_path(dest, name));
        for (const auto& [a, b] : conference_pairs())
            download("/reference/" + a + "-" + b + ".rdf", reference_path(dest, a, b));
    } else {
        fs::path src(source);
        if (!fs::is_directory(src))
            throw FetchFailedError("source is neither a URL nor a directory: " + source);
        // accept our layout or a flat directory of the same file names
        auto locate = [&](const fs::path& rel) -> fs::path {
            if (fs::exists(src / rel)) return src / rel;
            if (fs::exists(src / rel.filename())) return src / rel.filename();
            return {};
        };
        for (const auto& name : conference_ontologies()) {
            fs::path rel = fs::path("ontologies") / (name + ".owl");
            if (fs::path found = locate(rel); !found.empty())
                write_file(dest / rel, read_file(found));
        }
        for (const auto& [a, b] : conference_pairs()) {
            fs::path rel = fs::path("reference") / (a + "-" + b + ".rdf");
            if (fs::path found = locate(rel); !found.empty())
                write_file(dest / rel, read_file(found));
        }
    }

    if (auto missing = missing_files(dest); !missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += "\n  " + m;
        throw LayoutInvalidError("fetched corpus incomplete, missing:" + list);
    }

    // record checksums, sorted for idempotent output
    std::vector<std::string> lines;
    for (const auto& name : conference_ontologies())
        lines.push_back(sha256_hex(read_file(ontology_path(dest, name))) +
                        "  ontologies/" + name + ".owl");
    for (const auto& [a, b] : conference_pairs())
        lines.push_back(sha256_hex(read_file(reference_path(dest, a, b))) + "  reference/" +
                        a + "-" + b + ".rdf");
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    write_file(dest / "checksums.txt", out);
}

namespace {

json entity_json(const EntityId& e) {
    return {{"ontology", e.ontology}, {"local", e.local}, {"kind", to_string(e.kind)}};
}

json correspondence_json(const Correspondence& c) {
    json j{{"source", entity_json(c.source)},
           {"target", entity_json(c.target)},
           {"confidence", c.confidence}};
    if (c.provenance)
        j["provenance"] = {{"strategy", c.provenance->strategy},
                           {"raw_line", c.provenance->raw_line}};
    return j;
}

json extraction_json(const ExtractionReport& r) {
    json corrs = json::array();
    for (const auto& c : r.correspondences.correspondences)
        corrs.push_back(correspondence_json(c));
    json unresolved = json::array();
    for (const auto& u : r.unresolved)
        unresolved.push_back({{"line", u.line}, {"reason", u.reason}});
    return {{"pair", {r.pair.first, r.pair.second}},
            {"strategy", to_string(r.strategy)},
            {"correspondences", corrs},
            {"unresolved", unresolved},
            {"hedged_count", r.hedged_count}};
}

json diagnostics_json(const DiagnosticsReport& d) {
    json buckets = json::object();
    for (auto cat : {FpCategory::InversePropertySuspect, FpCategory::SubclassFanOut,
                     FpCategory::Hedged, FpCategory::Other}) {
        json list = json::array();
        auto it = d.buckets.find(cat);
        if (it != d.buckets.end())
            for (const auto& c : it->second) list.push_back(correspondence_json(c));
        buckets[to_string(cat)] = list;
    }
    return {{"buckets", buckets}};
}

json transcript_json(const Transcript& t) {
    json turns = json::array();
    for (const auto& turn : t.turns)
        turns.push_back({{"request", turn.request},
                         {"response", turn.response},
                         {"latency_ms", turn.latency_ms},
                         {"cache_hit", turn.cache_hit}});
    return {{"pair", {t.pair.first, t.pair.second}},
            {"strategy", to_string(t.strategy)},
            {"turns", turns}};
}

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

void write_reports(const fs::path& out_dir, const RunConfig& cfg,
                   const std::vector<std::pair<std::string, std::string>>& pairs,
                   const std::vector<StrategyId>& strategies,
                   const std::vector<CellResult>& cells) {
    auto cell_at = [&](std::size_t pi, std::size_t si) -> const CellResult& {
        return cells[pi * strategies.size() + si];
    };

    // CSV: pair,strategy,precision,recall,f1,tp,fp,fn
    std::ostringstream csv;
    csv << "pair,strategy,precision,recall,f1,tp,fp,fn\n";
    for (std::size_t pi = 0; pi < pairs.size(); ++pi)
        for (std::size_t si = 0; si < strategies.size(); ++si) {
            const CellResult& cell = cell_at(pi, si);
            csv << pairs[pi].first << "-" << pairs[pi].second << ","
                << to_string(strategies[si]) << ",";
            if (cell.status == CellResult::Status::Ok)
                csv << fmt3(cell.eval.precision) << "," << fmt3(cell.eval.recall) << ","
                    << fmt3(cell.eval.f1) << "," << cell.eval.tp << "," << cell.eval.fp
                    << "," << cell.eval.fn << "\n";
            else
                csv << "-,-,-,-,-,-\n";
        }
    write_file(out_dir / "report.csv", csv.str());

    // Markdown grid, pairs as rows, P/R/F1 column triple per strategy
    std::ostringstream md;
    md << "| Dataset |";
    for (auto s : strategies)
        md << " " << to_string(s) << " P | " << to_string(s) << " R | " << to_string(s)
           << " F1 |";
    md << "\n|---|";
    for (std::size_t si = 0; si < strategies.size(); ++si) md << "---|---|---|";
    md << "\n";
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        md << "| " << pairs[pi].first << "-" << pairs[pi].second << " |";
        for (std::size_t si = 0; si < strategies.size(); ++si) {
            const CellResult& cell = cell_at(pi, si);
            if (cell.status == CellResult::Status::Ok)
                md << " " << fmt3(cell.eval.precision) << " | " << fmt3(cell.eval.recall)
                   << " | " << fmt3(cell.eval.f1) << " |";
            else
                md << " - | - | - |";
        }
        md << "\n";
    }
    md << "| Average |";
    std::vector<std::string> footnotes;
    for (std::size_t si = 0; si < strategies.size(); ++si) {
        std::vector<EvalResult> completed;
        std::vector<std::string> excluded;
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
            const CellResult& cell = cell_at(pi, si);
            if (cell.status == CellResult::Status::Ok)
                completed.push_back(cell.eval);
            else
                excluded.push_back(pairs[pi].first + "-" + pairs[pi].second);
        }
        if (completed.empty()) {
            md << " - | - | - |";
        } else {
            Metrics avg = macro_average(std::span<const EvalResult>(completed));
            md << " " << fmt3(avg.precision) << " | " << fmt3(avg.recall) << " | "
               << fmt3(avg.f1) << " |";
        }
        if (!excluded.empty()) {
            std::string note = std::string(to_string(strategies[si])) + " average excludes";
            for (const auto& p : excluded) note += " " + p;
            footnotes.push_back(note);
        }
    }
    md << "\n";
    if (cfg.micro_average) {
        md << "| Micro-average |";
        for (std::size_t si = 0; si < strategies.size(); ++si) {
            long tp = 0, fp = 0, fn = 0;
            bool any = false;
            for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
                const CellResult& cell = cell_at(pi, si);
                if (cell.status != CellResult::Status::Ok) continue;
                any = true;
                tp += cell.eval.tp;
                fp += cell.eval.fp;
                fn += cell.eval.fn;
            }
            if (!any) {
                md << " - | - | - |";
            } else {
                EvalResult pooled = EvalResult::from_counts(tp, fp, fn);
                md << " " << fmt3(pooled.precision) << " | " << fmt3(pooled.recall) << " | "
                   << fmt3(pooled.f1) << " |";
            }
        }
        md << "\n";
    }
    for (const auto& note : footnotes) md << "\n*" << note << "*\n";
    md << "\nbackend: " << (cfg.backend.kind == BackendConfig::Kind::Mock ? "mock" : "remote")
       << ", budget: " << cfg.budget.max_tokens
       << ", min-confidence: " << fmt3(cfg.min_confidence) << "\n";
    write_file(out_dir / "report.md", md.str());
}

} // namespace

ExperimentResult run_experiment(const RunConfig& cfg) {
    Corpus corpus = load_corpus(cfg.corpus_dir); // throws before any artifact is written

    auto pairs = cfg.pairs.empty() ? conference_pairs() : cfg.pairs;
    std::vector<StrategyId> strategies = cfg.strategies;
    if (strategies.empty())
        for (int i = 0; i < 7; ++i) strategies.push_back(static_cast<StrategyId>(i));

    std::optional<ResponseCache> cache;
    if (!cfg.cache_dir.empty()) cache.emplace(cfg.cache_dir);

    ExperimentResult result;
    result.cells.resize(pairs.size() * strategies.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= result.cells.size()) return;
            std::size_t pi = i / strategies.size();
            std::size_t si = i % strategies.size();
            const auto& [name_a, name_b] = pairs[pi];
            StrategyId strategy = strategies[si];

            CellResult& cell = result.cells[i];
            cell.pair = pairs[pi];
            cell.strategy = strategy;

            const Ontology& a = corpus.get(name_a);
            const Ontology& b = corpus.get(name_b);
            fs::path cell_dir = cfg.out_dir / "cells" /
                                (name_a + "-" + name_b + "-" + to_string(strategy));
            try {
                PromptPlan plan = build_prompts(strategy, a, b, cfg.budget, cfg.use_labels);
                Transcript transcript =
                    complete(plan, cfg.backend, cache ? &*cache : nullptr);

                std::vector<ExtractionReport> per_turn;
                for (const auto& turn : transcript.turns)
                    per_turn.push_back(extract(turn.response, a, b, strategy));
                ExtractionReport report =
                    merge_reports(std::span<const ExtractionReport>(per_turn));

                Alignment predicted;
                predicted.pair = {name_a, name_b};
                for (const auto& c : report.correspondences.correspondences)
                    if (c.confidence >= cfg.min_confidence) predicted.add(c);

                Alignment reference = corpus.reference(name_a, name_b);
                cell.eval = evaluate(predicted, reference);
                DiagnosticsReport diag =
                    classify_false_positives(predicted, reference, a, b);

                write_file(cell_dir / "transcript.json",
                           transcript_json(transcript).dump(2) + "\n");
                write_file(cell_dir / "extraction.json",
                           extraction_json(report).dump(2) + "\n");
                write_file(cell_dir / "alignment.rdf", serialize_alignment(predicted, a, b));
                write_file(cell_dir / "diagnostics.json",
                           diagnostics_json(diag).dump(2) + "\n");
            } catch (const TokenLimitExceeded& e) {
                cell.status = CellResult::Status::TokenLimited;
                cell.error = e.what();
            } catch (const std::exception& e) {
                cell.status = CellResult::Status::Failed;
                cell.error = e.what();
                std::cerr << "cell " << name_a << "-" << name_b << " "
                          << to_string(strategy) << " failed: " << e.what() << "\n";
            }
        }
    };

    std::size_t nthreads =
        std::min<std::size_t>(std::max(1, cfg.workers), result.cells.size());
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < nthreads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    write_reports(cfg.out_dir, cfg, pairs, strategies, result.cells);

    for (const auto& cell : result.cells)
        if (cell.status == CellResult::Status::Failed) result.exit_code = 1;
    return result;
}

} // namespace oamatch
