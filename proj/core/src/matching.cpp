#include "bimap/matching.hpp"

#include <algorithm>
#include <stdexcept>

#include "bimap/unicode.hpp"

namespace bimap {

std::pair<std::size_t, std::size_t> TokenizedText::token_range(double lo, double hi) const {
    auto first = std::lower_bound(tokens.begin(), tokens.end(), lo,
                                  [](const Token& t, double v) { return t.mean_pos() < v; });
    auto last = std::upper_bound(first, tokens.end(), hi,
                                 [](double v, const Token& t) { return v < t.mean_pos(); });
    return {static_cast<std::size_t>(first - tokens.begin()),
            static_cast<std::size_t>(last - tokens.begin())};
}

double TokenizedText::mean_token_length() const {
    if (tokens.empty()) return 0.0;
    double sum = 0.0;
    for (const Token& t : tokens) sum += static_cast<double>(t.length);
    return sum / static_cast<double>(tokens.size());
}

TokenizedText tokenize(std::u32string_view text, const TokenizeOptions& opts) {
    TokenizedText out;
    out.char_count = text.size();
    auto is_word_char = [&](char32_t c) {
        return is_letter(c) || (opts.include_digits && is_digit(c));
    };
    auto is_joiner = [](char32_t c) {
        return c == U'\'' || c == U'-' || c == 0x2019;  // ASCII and curly apostrophe
    };
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (!is_word_char(text[i])) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        std::size_t end = i + 1;
        while (end < n) {
            if (is_word_char(text[end])) {
                ++end;
            } else if (is_joiner(text[end]) && end + 1 < n && is_word_char(text[end + 1])) {
                end += 2;  // joiner must sit between word characters
            } else {
                break;
            }
        }
        Token t;
        t.start = start;
        t.length = end - start;
        t.surface = fold_case(text.substr(start, end - start));
        out.tokens.push_back(std::move(t));
        i = end;
    }
    return out;
}

std::size_t lcs_length(std::u32string_view a, std::u32string_view b) {
    if (a.empty() || b.empty()) return 0;
    // Two-row dynamic program.
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double lcsr(std::u32string_view a, std::u32string_view b) {
    const std::size_t longer = std::max(a.size(), b.size());
    if (longer == 0) throw std::domain_error("lcsr of two empty strings");
    return static_cast<double>(lcs_length(a, b)) / static_cast<double>(longer);
}

StopList::StopList(const std::vector<std::u32string>& words) {
    for (const auto& w : words) insert(w);
}

void StopList::insert(std::u32string_view word) { words_.insert(fold_case(word)); }

bool StopList::contains(std::u32string_view word) const {
    return words_.count(fold_case(word)) > 0;
}

namespace {
std::u32string lexicon_key(std::u32string_view source, std::u32string_view target) {
    std::u32string key = fold_case(source);
    key.push_back(U'\x1F');
    key += fold_case(target);
    return key;
}
}  // namespace

void TranslationLexicon::insert(std::u32string_view source, std::u32string_view target) {
    entries_.insert(lexicon_key(source, target));
}

bool TranslationLexicon::contains(std::u32string_view source, std::u32string_view target) const {
    return entries_.count(lexicon_key(source, target)) > 0;
}

bool matches(const Token& e, const Token& f, const MatchingPredicateConfig& cfg) {
    if (cfg.use_lexicon && cfg.lexicon && cfg.lexicon->contains(e.surface, f.surface))
        return true;
    if (cfg.stoplist_x.contains(e.surface) || cfg.stoplist_y.contains(f.surface))
        return false;
    return lcsr(e.surface, f.surface) > cfg.lcsr_threshold;
}

std::vector<Point> generate_points(const SearchRectangle& rect,
                                   const TokenizedText& x_text,
                                   const TokenizedText& y_text,
                                   const MatchingPredicateConfig& cfg) {
    std::vector<Point> points;
    auto [xb, xe] = x_text.token_range(rect.x0, rect.x1());
    auto [yb, ye] = y_text.token_range(rect.y0, rect.y1());
    for (std::size_t i = xb; i < xe; ++i) {
        const Token& e = x_text.tokens[i];
        const double px = e.mean_pos();
        if (!(px > rect.x0)) continue;  // lower-left corner is exclusive
        for (std::size_t j = yb; j < ye; ++j) {
            const Token& f = y_text.tokens[j];
            const double py = f.mean_pos();
            if (!(py > rect.y0)) continue;
            if (matches(e, f, cfg)) points.push_back(Point{px, py, i, j});
        }
    }
    return points;
}

}  // namespace bimap
