#include "oamatch/extractor.hpp"

#include "oamatch/ontology_io.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

namespace oamatch {

namespace {

const char* kHedgeMarkers[] = {"unlikely", "not a direct match", "no direct equivalent",
                               "possible match"};

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// strips "1.", "12)", "-", "*" list prefixes
std::string strip_list_marker(std::string line) {
    std::size_t i = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
    if (i > 0 && i < line.size() && (line[i] == '.' || line[i] == ')'))
        return trim(line.substr(i + 1));
    if (!line.empty() && (line[0] == '-' || line[0] == '*')) return trim(line.substr(1));
    return line;
}

// separator position at parenthesis depth 0; returns (pos, length) or npos
std::pair<std::size_t, std::size_t> find_separator(const std::string& line) {
    std::string folded = case_fold(line);
    int depth = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        if (depth != 0) continue;
        if (line.compare(i, 3, "<->") == 0) return {i, 3};
        if (c == '=') return {i, 1};
        if (folded.compare(i, 9, " matches ") == 0) return {i + 1, 8};
    }
    return {std::string::npos, 0};
}

const std::regex kSignature(R"(^(.+?)\s*\(\s*([^,()]+?)\s*,\s*([^()]+?)\s*\)$)");
const std::regex kTrailingComment(R"(^(.+?)\s*\([^(),]*\)$)");

// candidate entity name from one side of a match statement
std::string side_name(std::string side) {
    side = trim(side);
    std::smatch m;
    if (std::regex_match(side, m, kSignature)) return trim(m[1].str());
    if (std::regex_match(side, m, kTrailingComment)) side = trim(m[1].str());
    auto unquote = [&](char q) {
        if (side.size() >= 2 && side.front() == q && side.back() == q)
            side = trim(side.substr(1, side.size() - 2));
    };
    unquote('"');
    unquote('`');
    unquote('\'');
    while (!side.empty() && (side.back() == '.' || side.back() == ',' || side.back() == ';'))
        side.pop_back();
    return trim(side);
}

bool is_hedged(const std::string& line) {
    std::string folded = case_fold(line);
    for (const char* marker : kHedgeMarkers)
        if (folded.find(marker) != std::string::npos) return true;
    return false;
}

} // namespace

ExtractionReport extract(const std::string& response, const Ontology& a, const Ontology& b,
                         StrategyId strategy) {
    ExtractionReport report;
    report.pair = {a.name, b.name};
    report.strategy = strategy;
    report.correspondences.pair = report.pair;

    std::size_t start = 0;
    while (start <= response.size()) {
        std::size_t end = response.find('\n', start);
        std::string raw = response.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        start = end == std::string::npos ? response.size() + 1 : end + 1;

        std::string line = strip_list_marker(trim(raw));
        if (line.empty()) continue;
        if (line.back() == ':') continue; // prose header ("Here are the matches I found:")

        auto [sep, sep_len] = find_separator(line);
        if (sep == std::string::npos) continue; // includes explicit "no match" answers

        std::string lhs = side_name(line.substr(0, sep));
        std::string rhs = side_name(line.substr(sep + sep_len));
        if (lhs.empty() || rhs.empty()) continue;

        ResolveResult src = resolve_name(a, lhs);
        ResolveResult tgt = resolve_name(b, rhs);
        if (!src.found() || !tgt.found()) {
            // the model may have flipped the ontology order; try once swapped
            ResolveResult src2 = resolve_name(a, rhs);
            ResolveResult tgt2 = resolve_name(b, lhs);
            if (src2.found() && tgt2.found()) {
                src = src2;
                tgt = tgt2;
            }
        }
        if (!src.found() || !tgt.found()) {
            const ResolveResult& bad = !src.found() ? src : tgt;
            std::string reason = bad.status == ResolveResult::Status::Ambiguous
                                     ? "ambiguous name"
                                     : "unknown entity";
            report.unresolved.push_back({raw, reason});
            continue;
        }

        Correspondence c;
        c.source = src.entity;
        c.target = tgt.entity;
        c.confidence = 1.0;
        if (is_hedged(line)) {
            c.confidence = 0.5;
            ++report.hedged_count;
        }
        c.provenance = Provenance{to_string(strategy), raw};
        report.correspondences.add(std::move(c));
    }
    return report;
}

ExtractionReport merge_reports(std::span<const ExtractionReport> reports) {
    ExtractionReport merged;
    if (reports.empty()) return merged;

    merged.pair = reports.front().pair;
    merged.strategy = reports.front().strategy;
    merged.correspondences.pair = merged.pair;

    std::set<UnresolvedLine> seen;
    for (const auto& r : reports) {
        if (r.pair != merged.pair)
            throw PairMismatchError("cannot merge reports for pair " + r.pair.first + "-" +
                                    r.pair.second + " into " + merged.pair.first + "-" +
                                    merged.pair.second);
        for (const auto& c : r.correspondences.correspondences)
            merged.correspondences.add(c);
        for (const auto& u : r.unresolved)
            if (seen.insert(u).second) merged.unresolved.push_back(u);
    }
    for (const auto& c : merged.correspondences.correspondences)
        if (c.confidence < 1.0) ++merged.hedged_count;
    return merged;
}

} // namespace oamatch
