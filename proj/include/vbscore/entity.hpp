#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vbscore {

class EntityBackend;  // see backends.hpp

// Unordered short/long abbreviation pairs, each surface form mapped to
// one canonical form (the normalized long form). Canonicalization is a
// function and idempotent: canonical forms map to themselves.
class AbbreviationTable {
public:
    AbbreviationTable() = default;

    // Registers a pair; both sides may be multi-word phrases.
    void add_pair(std::string_view short_form, std::string_view long_form);

    // File format: one pair per line, `short<TAB>long`. Blank lines and
    // lines starting with '#' are skipped.
    static AbbreviationTable load(const std::string& path);

    // Table seeded with mg/milligrams, tab/tablet, TB/tuberculosis.
    static AbbreviationTable defaults();

    // Maps a base-normalized phrase to its canonical form. Tries the
    // whole phrase first, then substitutes token by token.
    std::string canonicalize(const std::string& phrase) const;

    size_t size() const { return canonical_.size(); }

private:
    std::string resolve(const std::string& form) const;

    std::map<std::string, std::string> canonical_;
};

inline constexpr int kDefaultMinTokenLen = 4;

// Lowercases, strips token-edge punctuation, drops leading articles
// (a/an/the), canonicalizes abbreviations, and collapses whitespace.
// Idempotent. Throws EmptyAfterNormalization when nothing survives.
std::string normalize_entity(std::string_view raw, const AbbreviationTable& table);

// A set of normalized entities with the surface spans they came from.
struct EntitySet {
    struct Entry {
        std::string normalized;
        std::string raw;     // original surface text
        size_t start = 0;    // byte offsets into the source text
        size_t end = 0;
    };
    std::vector<Entry> entries;  // one per distinct normalized form, first span kept

    std::set<std::string> entities() const;
    bool contains(const std::string& normalized) const;
    bool empty() const { return entries.empty(); }
    size_t size() const { return entries.size(); }

    // Normalizes and deduplicates raw strings; drops any that normalize
    // to nothing. Offsets are zeroed (unknown).
    static EntitySet from_raw(const std::vector<std::string>& raw_entities,
                              const AbbreviationTable& table);
};

// Runs the backend over `text`, then normalizes and deduplicates.
EntitySet extract_entities(const std::string& text, EntityBackend& backend,
                           const AbbreviationTable& table);

enum class MatchReason { Exact, CaseNormalized, Abbreviation, WholeSubstring, TokenSubstring };

std::string to_string(MatchReason r);

struct MatchedPair {
    std::string reference;  // normalized forms
    std::string generated;
    MatchReason reason;
};

struct MatchReport {
    std::vector<MatchedPair> matched_pairs;
    std::set<std::string> unmatched_reference;
    std::set<std::string> unmatched_generated;
    size_t total_reference = 0;
    size_t total_generated = 0;
};

// A pair matches iff normalized forms are equal, one whole string is a
// substring of the other, both share a canonical abbreviation form, or
// a token of one (length >= min_token_len) is a substring of a token of
// the other. Paraphrases and unlisted synonyms never match. Matching is
// any-to-any: one generated entity may cover several reference entities.
MatchReport match_entities(const EntitySet& reference, const EntitySet& generated,
                           const AbbreviationTable& table,
                           int min_token_len = kDefaultMinTokenLen);

struct PrecisionRecallF1 {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// precision = matched generated / total generated, recall = matched
// reference / total reference, f1 = harmonic mean. Empty generated set
// scores 0; both-empty scores 0 (a dataset never has an empty reference).
PrecisionRecallF1 entity_prf(const MatchReport& report);

// True if the single pair (reference, generated) matches; reason via out
// param. Test and matcher building block.
bool entities_match(const std::string& ref_normalized, const std::string& ref_raw,
                    const std::string& gen_normalized, const std::string& gen_raw,
                    const AbbreviationTable& table, int min_token_len,
                    MatchReason* reason);

}  // namespace vbscore
