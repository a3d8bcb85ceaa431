#pragma once

#include <string>
#include <vector>

#include "vbscore/entity.hpp"

namespace vbscore {

enum class EnumerationOrigin { Bullet, Numbered, CommaSeries };

// Enumerated items pulled from a text: bulleted lines, numbered lines,
// and in-sentence comma series of three or more items. Items carry the
// entity module's text normalization (lowercase, edge punctuation
// stripped, whitespace collapsed).
struct EnumerationSet {
    struct Item {
        std::string text;  // normalized
        EnumerationOrigin origin;
    };
    std::vector<Item> items;  // deduplicated, first origin kept

    bool empty() const { return items.empty(); }
    size_t size() const { return items.size(); }
    bool contains(const std::string& normalized) const;
};

EnumerationSet extract_enumerations(const std::string& text);

// Jaccard similarity |A ∩ B| / |A ∪ B| where intersection membership
// uses the entity match rule (exact / substring / abbreviation), not raw
// string equality. Both-empty scores 0.0.
double structured_overlap(const EnumerationSet& reference, const EnumerationSet& generated,
                          const AbbreviationTable& table = AbbreviationTable::defaults(),
                          int min_token_len = kDefaultMinTokenLen);

}  // namespace vbscore
