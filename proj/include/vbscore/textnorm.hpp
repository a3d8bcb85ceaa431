#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vbscore::textnorm {

// ASCII lowercase.
std::string to_lower(std::string_view s);

// Splits on runs of whitespace; no empty tokens.
std::vector<std::string> split_ws(std::string_view s);

std::string join_ws(const std::vector<std::string>& tokens);

// True if the character counts as punctuation for token-edge stripping.
bool is_punct(unsigned char c);

// Strips punctuation from both ends of a token. Inner punctuation
// (hyphens in "covid-19", slashes in "hiv/aids") is preserved.
std::string strip_edge_punct(std::string_view token);

// Lowercase, strip token-edge punctuation, collapse whitespace.
// Punctuation-only tokens disappear. May return the empty string.
std::string basic_normalize(std::string_view s);

// Tokens for similarity-style comparisons: lowercased maximal runs of
// alphanumeric characters plus inner apostrophes ("don't" stays whole).
std::vector<std::string> word_tokens(std::string_view s);

// Splits text into sentences on . ! ? followed by whitespace and an
// uppercase letter or digit. A guard list keeps common abbreviations
// ("e.g.", "dr.", "mg.") from ending a sentence. Whitespace-trimmed,
// no empty sentences.
std::vector<std::string> split_sentences(std::string_view text);

}  // namespace vbscore::textnorm
