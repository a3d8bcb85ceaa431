#include "vbscore/entity.hpp"

#include <algorithm>
#include <fstream>

#include "vbscore/backends.hpp"
#include "vbscore/errors.hpp"
#include "vbscore/textnorm.hpp"

namespace vbscore {

namespace tn = textnorm;

namespace {

bool is_article(const std::string& token) {
    return token == "a" || token == "an" || token == "the";
}

// lowercase + edge punctuation + whitespace collapse + leading articles,
// without abbreviation canonicalization
std::string base_normalize(std::string_view raw) {
    auto tokens = tn::split_ws(tn::to_lower(raw));
    std::vector<std::string> kept;
    for (const auto& tok : tokens) {
        std::string stripped = tn::strip_edge_punct(tok);
        if (!stripped.empty()) kept.push_back(std::move(stripped));
    }
    size_t first = 0;
    while (first < kept.size() && is_article(kept[first])) ++first;
    kept.erase(kept.begin(), kept.begin() + static_cast<long>(first));
    return tn::join_ws(kept);
}

}  // namespace

void AbbreviationTable::add_pair(std::string_view short_form, std::string_view long_form) {
    std::string s = base_normalize(short_form);
    std::string l = base_normalize(long_form);
    if (s.empty() || l.empty()) return;
    canonical_[s] = l;
    canonical_[l] = l;
}

AbbreviationTable AbbreviationTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOFailure("cannot open abbreviation table " + path);
    AbbreviationTable table;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (std::all_of(line.begin(), line.end(),
                        [](unsigned char c) { return std::isspace(c); }))
            continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw MalformedLine(path, line_no, "expected `short<TAB>long`");
        table.add_pair(line.substr(0, tab), line.substr(tab + 1));
    }
    return table;
}

AbbreviationTable AbbreviationTable::defaults() {
    AbbreviationTable table;
    table.add_pair("mg", "milligrams");
    table.add_pair("tab", "tablet");
    table.add_pair("TB", "tuberculosis");
    return table;
}

std::string AbbreviationTable::resolve(const std::string& form) const {
    // Follows mapping chains (a->b, b->c) to a fixpoint so that
    // canonicalization stays idempotent; a cycle collapses onto its
    // lexicographically smallest member.
    std::vector<std::string> visited{form};
    std::string current = form;
    for (size_t hops = 0; hops < canonical_.size() + 1; ++hops) {
        auto it = canonical_.find(current);
        if (it == canonical_.end() || it->second == current) return current;
        current = it->second;
        if (std::find(visited.begin(), visited.end(), current) != visited.end())
            return *std::min_element(visited.begin(), visited.end());
        visited.push_back(current);
    }
    return current;
}

std::string AbbreviationTable::canonicalize(const std::string& phrase) const {
    if (canonical_.count(phrase)) return resolve(phrase);
    auto tokens = tn::split_ws(phrase);
    bool changed = false;
    for (auto& tok : tokens) {
        std::string resolved = resolve(tok);
        if (resolved != tok) {
            tok = std::move(resolved);
            changed = true;
        }
    }
    return changed ? tn::join_ws(tokens) : phrase;
}

std::string normalize_entity(std::string_view raw, const AbbreviationTable& table) {
    std::string base = base_normalize(raw);
    std::string canonical = table.canonicalize(base);
    if (canonical.empty()) throw EmptyAfterNormalization(std::string(raw));
    return canonical;
}

std::set<std::string> EntitySet::entities() const {
    std::set<std::string> out;
    for (const auto& e : entries) out.insert(e.normalized);
    return out;
}

bool EntitySet::contains(const std::string& normalized) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const Entry& e) { return e.normalized == normalized; });
}

EntitySet EntitySet::from_raw(const std::vector<std::string>& raw_entities,
                              const AbbreviationTable& table) {
    EntitySet set;
    for (const auto& raw : raw_entities) {
        std::string norm;
        try {
            norm = normalize_entity(raw, table);
        } catch (const EmptyAfterNormalization&) {
            continue;  // punctuation-only extraction, nothing to keep
        }
        if (!set.contains(norm)) set.entries.push_back({norm, raw, 0, 0});
    }
    return set;
}

EntitySet extract_entities(const std::string& text, EntityBackend& backend,
                           const AbbreviationTable& table) {
    auto spans = backend.extract_spans({text}).at(0);
    EntitySet set;
    for (const auto& span : spans) {
        std::string norm;
        try {
            norm = normalize_entity(span.text, table);
        } catch (const EmptyAfterNormalization&) {
            continue;
        }
        if (!set.contains(norm)) set.entries.push_back({norm, span.text, span.start, span.end});
    }
    return set;
}

std::string to_string(MatchReason r) {
    switch (r) {
        case MatchReason::Exact: return "Exact";
        case MatchReason::CaseNormalized: return "CaseNormalized";
        case MatchReason::Abbreviation: return "Abbreviation";
        case MatchReason::WholeSubstring: return "WholeSubstring";
        case MatchReason::TokenSubstring: return "TokenSubstring";
    }
    return "Exact";
}

bool entities_match(const std::string& ref_normalized, const std::string& ref_raw,
                    const std::string& gen_normalized, const std::string& gen_raw,
                    const AbbreviationTable& table, int min_token_len,
                    MatchReason* reason) {
    auto set_reason = [&](MatchReason r) {
        if (reason) *reason = r;
        return true;
    };

    if (ref_normalized == gen_normalized) {
        if (ref_raw == gen_raw) return set_reason(MatchReason::Exact);
        if (tn::to_lower(ref_raw) == tn::to_lower(gen_raw))
            return set_reason(MatchReason::CaseNormalized);
        // normalized forms agree; did abbreviation canonicalization do it?
        if (base_normalize(ref_raw) != base_normalize(gen_raw))
            return set_reason(MatchReason::Abbreviation);
        return set_reason(MatchReason::Exact);
    }

    // sets built without canonicalization still match through the table
    if (table.canonicalize(ref_normalized) == table.canonicalize(gen_normalized))
        return set_reason(MatchReason::Abbreviation);

    if (ref_normalized.find(gen_normalized) != std::string::npos ||
        gen_normalized.find(ref_normalized) != std::string::npos)
        return set_reason(MatchReason::WholeSubstring);

    auto ref_tokens = tn::split_ws(ref_normalized);
    auto gen_tokens = tn::split_ws(gen_normalized);
    for (const auto& rt : ref_tokens) {
        for (const auto& gt : gen_tokens) {
            bool rt_in_gt = rt.size() >= static_cast<size_t>(min_token_len) &&
                            gt.find(rt) != std::string::npos;
            bool gt_in_rt = gt.size() >= static_cast<size_t>(min_token_len) &&
                            rt.find(gt) != std::string::npos;
            if (rt_in_gt || gt_in_rt) return set_reason(MatchReason::TokenSubstring);
        }
    }
    return false;
}

MatchReport match_entities(const EntitySet& reference, const EntitySet& generated,
                           const AbbreviationTable& table, int min_token_len) {
    MatchReport report;
    report.total_reference = reference.size();
    report.total_generated = generated.size();

    std::set<std::string> matched_gen;
    for (const auto& ref : reference.entries) {
        bool ref_matched = false;
        for (const auto& gen : generated.entries) {
            MatchReason reason;
            if (entities_match(ref.normalized, ref.raw, gen.normalized, gen.raw, table,
                               min_token_len, &reason)) {
                report.matched_pairs.push_back({ref.normalized, gen.normalized, reason});
                matched_gen.insert(gen.normalized);
                ref_matched = true;
            }
        }
        if (!ref_matched) report.unmatched_reference.insert(ref.normalized);
    }
    for (const auto& gen : generated.entries) {
        if (!matched_gen.count(gen.normalized))
            report.unmatched_generated.insert(gen.normalized);
    }
    return report;
}

PrecisionRecallF1 entity_prf(const MatchReport& report) {
    PrecisionRecallF1 out;
    if (report.total_generated == 0 || report.total_reference == 0) return out;
    size_t matched_gen = report.total_generated - report.unmatched_generated.size();
    size_t matched_ref = report.total_reference - report.unmatched_reference.size();
    out.precision = static_cast<double>(matched_gen) / static_cast<double>(report.total_generated);
    out.recall = static_cast<double>(matched_ref) / static_cast<double>(report.total_reference);
    if (out.precision + out.recall > 0.0)
        out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
    return out;
}

}  // namespace vbscore
