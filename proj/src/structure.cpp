#include "vbscore/structure.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "vbscore/textnorm.hpp"

namespace vbscore {

namespace tn = textnorm;

namespace {

bool EnumerationSetContains(const std::vector<EnumerationSet::Item>& items,
                            const std::string& text) {
    return std::any_of(items.begin(), items.end(),
                       [&](const EnumerationSet::Item& i) { return i.text == text; });
}

// Returns the item text if the line is a bulleted or numbered list entry.
bool parse_list_line(const std::string& line, std::string* item, EnumerationOrigin* origin) {
    size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) return false;

    // bullet markers: - * and the UTF-8 bullet
    if (line[i] == '-' || line[i] == '*') {
        *item = line.substr(i + 1);
        *origin = EnumerationOrigin::Bullet;
        return true;
    }
    if (line.compare(i, 3, "\xE2\x80\xA2") == 0) {
        *item = line.substr(i + 3);
        *origin = EnumerationOrigin::Bullet;
        return true;
    }
    // numbered markers: digits then '.' or ')'
    size_t d = i;
    while (d < line.size() && std::isdigit(static_cast<unsigned char>(line[d]))) ++d;
    if (d > i && d < line.size() && (line[d] == '.' || line[d] == ')')) {
        size_t rest = d + 1;
        if (rest < line.size() && std::isspace(static_cast<unsigned char>(line[rest]))) {
            *item = line.substr(rest);
            *origin = EnumerationOrigin::Numbered;
            return true;
        }
    }
    return false;
}

// Words that introduce a series in its first comma-separated chunk
// ("Symptoms include fever, ..." -> "fever").
bool is_series_introducer(const std::string& token) {
    static const char* kIntroducers[] = {"include", "includes", "including", "are",
                                         "were",    "is",       "was",       "as",
                                         "like",    "contains", "contain",   "such"};
    for (const char* w : kIntroducers)
        if (token == w) return true;
    return false;
}

std::string strip_first_item_introduction(const std::string& part) {
    std::string work = part;
    auto colon = work.rfind(':');
    if (colon != std::string::npos) work = work.substr(colon + 1);
    auto tokens = tn::split_ws(work);
    size_t cut = 0;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (is_series_introducer(tn::strip_edge_punct(tn::to_lower(tokens[i])))) cut = i + 1;
    }
    std::vector<std::string> rest(tokens.begin() + static_cast<long>(cut), tokens.end());
    return tn::join_ws(rest);
}

std::string strip_leading_conjunction(const std::string& part) {
    auto tokens = tn::split_ws(part);
    size_t start = 0;
    while (start < tokens.size()) {
        std::string low = tn::strip_edge_punct(tn::to_lower(tokens[start]));
        if (low == "and" || low == "or") {
            ++start;
        } else {
            break;
        }
    }
    std::vector<std::string> rest(tokens.begin() + static_cast<long>(start), tokens.end());
    return tn::join_ws(rest);
}

std::vector<std::string> comma_series_items(const std::string& sentence) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : sentence) {
        if (c == ',') {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    if (parts.size() < 2) return {};

    std::vector<std::string> items;
    items.push_back(strip_first_item_introduction(parts.front()));
    for (size_t i = 1; i + 1 < parts.size(); ++i)
        items.push_back(strip_leading_conjunction(parts[i]));

    // the final chunk may hold two items joined by a conjunction
    std::string last = strip_leading_conjunction(parts.back());
    std::string low = tn::to_lower(last);
    size_t conj = low.find(" and ");
    size_t conj_or = low.find(" or ");
    if (conj_or != std::string::npos && (conj == std::string::npos || conj_or < conj))
        conj = conj_or;
    if (conj != std::string::npos) {
        items.push_back(last.substr(0, conj));
        items.push_back(strip_leading_conjunction(last.substr(conj)));
    } else {
        items.push_back(last);
    }

    std::vector<std::string> cleaned;
    for (const auto& item : items) {
        std::string norm = tn::basic_normalize(item);
        if (!norm.empty()) cleaned.push_back(std::move(norm));
    }
    if (cleaned.size() < 3) return {};
    return cleaned;
}

}  // namespace

bool EnumerationSet::contains(const std::string& normalized) const {
    return EnumerationSetContains(items, normalized);
}

EnumerationSet extract_enumerations(const std::string& text) {
    EnumerationSet set;
    auto add = [&](const std::string& normalized, EnumerationOrigin origin) {
        if (!normalized.empty() && !set.contains(normalized))
            set.items.push_back({normalized, origin});
    };

    std::vector<std::string> plain_lines;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        std::string item;
        EnumerationOrigin origin;
        if (parse_list_line(line, &item, &origin)) {
            add(tn::basic_normalize(item), origin);
        } else {
            plain_lines.push_back(line);
        }
    }

    std::string prose;
    for (const auto& l : plain_lines) {
        prose += l;
        prose += '\n';
    }
    for (const auto& sentence : tn::split_sentences(prose)) {
        for (const auto& item : comma_series_items(sentence))
            add(item, EnumerationOrigin::CommaSeries);
    }
    return set;
}

double structured_overlap(const EnumerationSet& reference, const EnumerationSet& generated,
                          const AbbreviationTable& table, int min_token_len) {
    if (reference.empty() && generated.empty()) return 0.0;
    if (reference.empty() || generated.empty()) return 0.0;

    auto matched_count = [&](const EnumerationSet& from, const EnumerationSet& against) {
        size_t count = 0;
        for (const auto& a : from.items) {
            for (const auto& b : against.items) {
                if (entities_match(a.text, a.text, b.text, b.text, table, min_token_len,
                                   nullptr)) {
                    ++count;
                    break;
                }
            }
        }
        return count;
    };

    // the smaller directed count keeps the measure symmetric and <= 1
    // even when one item substring-matches several on the other side
    size_t matched_ref = matched_count(reference, generated);
    size_t matched_gen = matched_count(generated, reference);
    size_t intersection = std::min(matched_ref, matched_gen);
    size_t uni = reference.size() + generated.size() - intersection;
    return static_cast<double>(intersection) / static_cast<double>(uni);
}

}  // namespace vbscore
