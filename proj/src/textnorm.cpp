#include "vbscore/textnorm.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace vbscore::textnorm {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

std::string join_ws(const std::vector<std::string>& tokens) {
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

bool is_punct(unsigned char c) {
    return std::ispunct(c) != 0;
}

std::string strip_edge_punct(std::string_view token) {
    size_t b = 0, e = token.size();
    while (b < e && is_punct(static_cast<unsigned char>(token[b]))) ++b;
    while (e > b && is_punct(static_cast<unsigned char>(token[e - 1]))) --e;
    return std::string(token.substr(b, e - b));
}

std::string basic_normalize(std::string_view s) {
    std::vector<std::string> kept;
    for (const auto& tok : split_ws(to_lower(s))) {
        std::string stripped = strip_edge_punct(tok);
        if (!stripped.empty()) kept.push_back(std::move(stripped));
    }
    return join_ws(kept);
}

std::vector<std::string> word_tokens(std::string_view s) {
    std::vector<std::string> out;
    std::string current;
    auto flush = [&]() {
        if (!current.empty()) {
            // apostrophes only survive between alphanumerics
            while (!current.empty() && current.back() == '\'') current.pop_back();
            if (!current.empty()) out.push_back(current);
            current.clear();
        }
    };
    for (unsigned char c : s) {
        if (std::isalnum(c)) {
            current += static_cast<char>(std::tolower(c));
        } else if (c == '\'' && !current.empty()) {
            current += '\'';
        } else {
            flush();
        }
    }
    flush();
    return out;
}

namespace {

// Lowercased tokens that end with '.' but do not end a sentence.
const std::array<std::string_view, 14> kAbbrevGuards = {
    "e.g.", "i.e.", "etc.", "vs.", "dr.", "mr.", "mrs.", "ms.",
    "mg.",  "ml.",  "no.",  "st.", "fig.", "approx.",
};

bool is_guarded_abbrev(std::string_view text, size_t punct_pos) {
    // token ending at punct_pos (inclusive)
    size_t start = punct_pos;
    while (start > 0 && !std::isspace(static_cast<unsigned char>(text[start - 1]))) --start;
    // opening brackets and quotes are not part of the token
    while (start < punct_pos && is_punct(static_cast<unsigned char>(text[start])) &&
           text[start] != '.')
        ++start;
    std::string token = to_lower(text.substr(start, punct_pos - start + 1));
    for (auto g : kAbbrevGuards) {
        if (token == g) return true;
    }
    // single letters with a period ("B. pertussis") rarely end sentences
    if (token.size() == 2 && std::isalpha(static_cast<unsigned char>(token[0]))) return true;
    return false;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> sentences;
    size_t start = 0;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;
        // require whitespace then uppercase/digit to treat as a boundary
        size_t j = i + 1;
        while (j < text.size() && (text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
        size_t ws = j;
        while (ws < text.size() && std::isspace(static_cast<unsigned char>(text[ws]))) ++ws;
        bool boundary = ws > j && ws < text.size() &&
                        (std::isupper(static_cast<unsigned char>(text[ws])) ||
                         std::isdigit(static_cast<unsigned char>(text[ws])));
        if (ws >= text.size()) boundary = true;  // trailing terminator
        if (c == '.' && is_guarded_abbrev(text, i)) boundary = false;
        if (boundary) {
            std::string sent(text.substr(start, j - start));
            // trim
            size_t b = sent.find_first_not_of(" \t\r\n");
            size_t e = sent.find_last_not_of(" \t\r\n");
            if (b != std::string::npos) sentences.push_back(sent.substr(b, e - b + 1));
            start = ws;
            i = ws > 0 ? ws - 1 : 0;
        }
    }
    if (start < text.size()) {
        std::string sent(text.substr(start));
        size_t b = sent.find_first_not_of(" \t\r\n");
        size_t e = sent.find_last_not_of(" \t\r\n");
        if (b != std::string::npos) sentences.push_back(sent.substr(b, e - b + 1));
    }
    return sentences;
}

}  // namespace vbscore::textnorm
