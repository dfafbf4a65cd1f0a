#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "bimap/geometry.hpp"

// Tokenization and the matching predicate that proposes candidate
// correspondence points inside a search rectangle.

namespace bimap {

struct TokenizedText {
    std::vector<Token> tokens;  // strictly increasing start offsets
    std::size_t char_count = 0;

    // Tokens whose mean position lies in [lo, hi]; mean positions are
    // strictly increasing, so this is a binary search, not a scan.
    std::pair<std::size_t, std::size_t> token_range(double lo, double hi) const;

    double mean_token_length() const;
};

struct TokenizeOptions {
    bool include_digits = false;  // technical texts may want digit tokens
};

// Maximal runs of letters, keeping word-internal apostrophes and hyphens.
// Surfaces are case-folded; offsets index the original scalar stream.
TokenizedText tokenize(std::u32string_view text, const TokenizeOptions& opts = {});

// Longest common subsequence length; characters need not be contiguous.
std::size_t lcs_length(std::u32string_view a, std::u32string_view b);

// LCS length divided by the longer token's length.
// Throws std::domain_error when both strings are empty.
double lcsr(std::u32string_view a, std::u32string_view b);

// Case-folded membership set of closed-class words for one language.
class StopList {
public:
    StopList() = default;
    explicit StopList(const std::vector<std::u32string>& words);
    void insert(std::u32string_view word);
    bool contains(std::u32string_view word) const;
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::u32string> words_;
};

// (source, target) pairs bound to the two axis languages; lookups fold case.
// Duplicate entries are de-duplicated silently.
class TranslationLexicon {
public:
    TranslationLexicon() = default;
    void insert(std::u32string_view source, std::u32string_view target);
    bool contains(std::u32string_view source, std::u32string_view target) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::unordered_set<std::u32string> entries_;  // folded "source\x1Ftarget"
};

struct MatchingPredicateConfig {
    double lcsr_threshold = 0.70;
    bool use_lexicon = false;
    StopList stoplist_x;
    StopList stoplist_y;
    std::optional<TranslationLexicon> lexicon;
};

// TRUE iff the pair is a lexicon entry (when enabled), or neither token is
// stop-listed and their LCSR exceeds the threshold. A deliberate lexicon
// entry overrides the stop-list.
bool matches(const Token& e, const Token& f, const MatchingPredicateConfig& cfg);

// All candidate points (mean_pos(e), mean_pos(f)) inside `rect` whose token
// pair satisfies the matching predicate.
std::vector<Point> generate_points(const SearchRectangle& rect,
                                   const TokenizedText& x_text,
                                   const TokenizedText& y_text,
                                   const MatchingPredicateConfig& cfg);

}  // namespace bimap
