#include <doctest.h>

#include <stdexcept>
#include <random>

#include "bimap/matching.hpp"
#include "bimap/unicode.hpp"
#include "oracles.hpp"

using namespace bimap;

TEST_CASE("tokenizer splits letter runs and keeps offsets") {
    SUBCASE("punctuation and case") {
        const auto t = tokenize(U"Mr. McInnis?");
        REQUIRE(t.tokens.size() == 2);
        CHECK(t.tokens[0].surface == U"mr");
        CHECK(t.tokens[0].start == 0);
        CHECK(t.tokens[0].length == 2);
        CHECK(t.tokens[1].surface == U"mcinnis");
        CHECK(t.tokens[1].start == 4);
        CHECK(t.tokens[1].length == 7);
    }
    SUBCASE("empty input yields no tokens") {
        CHECK(tokenize(U"").tokens.empty());
    }
    SUBCASE("word-internal hyphen joins") {
        const auto t = tokenize(U"a-b");
        REQUIRE(t.tokens.size() == 1);
        CHECK(t.tokens[0].surface == U"a-b");
        CHECK(t.tokens[0].start == 0);
        CHECK(t.tokens[0].length == 3);
    }
    SUBCASE("trailing hyphen is not joined") {
        const auto t = tokenize(U"ab- cd");
        REQUIRE(t.tokens.size() == 2);
        CHECK(t.tokens[0].surface == U"ab");
        CHECK(t.tokens[1].start == 4);
    }
    SUBCASE("apostrophes and accents, offsets in scalar values") {
        const auto t = tokenize(decode_utf8("L'Éléphant était café"));
        REQUIRE(t.tokens.size() == 3);
        CHECK(t.tokens[0].surface == decode_utf8("l'éléphant"));
        CHECK(t.tokens[0].start == 0);
        CHECK(t.tokens[1].surface == decode_utf8("était"));
        CHECK(t.tokens[1].start == 11);
        CHECK(t.tokens[2].start == 17);
    }
    SUBCASE("digits excluded by default, included on request") {
        CHECK(tokenize(U"abc 123 def").tokens.size() == 2);
        TokenizeOptions opts;
        opts.include_digits = true;
        CHECK(tokenize(U"abc 123 def", opts).tokens.size() == 3);
    }
}

TEST_CASE("token range lookup matches a linear scan") {
    const auto t = tokenize(U"aa bb cc dd ee ff gg");
    auto [b, e] = t.token_range(3.0, 13.0);
    for (std::size_t i = 0; i < t.tokens.size(); ++i) {
        const double m = t.tokens[i].mean_pos();
        const bool in = i >= b && i < e;
        CHECK(in == (m >= 3.0 && m <= 13.0));
    }
}

TEST_CASE("LCS length") {
    CHECK(lcs_length(U"abc", U"abc") == 3);
    CHECK(lcs_length(U"abc", U"") == 0);

    SUBCASE("reference pair, verified against exhaustive enumeration") {
        REQUIRE(oracles::lcs_exhaustive(U"gouvernement", U"government") == 10);
        CHECK(lcs_length(U"gouvernement", U"government") == 10);
    }
    SUBCASE("agrees with the exhaustive oracle on random short strings") {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> len(0, 8);
        std::uniform_int_distribution<int> ch(0, 3);  // small alphabet forces overlap
        for (int i = 0; i < 300; ++i) {
            std::u32string a, b;
            for (int k = len(rng); k > 0; --k) a.push_back(U'a' + ch(rng));
            for (int k = len(rng); k > 0; --k) b.push_back(U'a' + ch(rng));
            CHECK(lcs_length(a, b) == oracles::lcs_exhaustive(a, b));
            CHECK(lcs_length(a, b) == lcs_length(b, a));
            CHECK(lcs_length(a, b) <= std::min(a.size(), b.size()));
        }
    }
    SUBCASE("equals |a| exactly when a is a subsequence of b") {
        CHECK(lcs_length(U"ace", U"abcde") == 3);
        CHECK(lcs_length(U"aec", U"abcde") < 3);
    }
}

TEST_CASE("LCSR divides by the longer token") {
    CHECK(lcsr(U"abc", U"abc") == doctest::Approx(1.0));
    CHECK(lcsr(U"gouvernement", U"government") == doctest::Approx(10.0 / 12.0));
    CHECK(lcsr(U"on", U"par") == doctest::Approx(0.0));
    CHECK_THROWS_AS(lcsr(U"", U""), std::domain_error);
    CHECK(lcsr(U"", U"abc") == doctest::Approx(0.0));
}

namespace {
Token tok(const char32_t* s) { return Token{s, 0, std::char_traits<char32_t>::length(s)}; }
}  // namespace

TEST_CASE("matching predicate") {
    MatchingPredicateConfig cfg;
    cfg.lcsr_threshold = 0.7;

    SUBCASE("stop-listed closed-class words never match as cognates") {
        cfg.stoplist_x.insert(U"a");
        cfg.stoplist_y.insert(U"an");
        CHECK_FALSE(matches(tok(U"a"), tok(U"an"), cfg));
        cfg.lcsr_threshold = 0.01;
        CHECK_FALSE(matches(tok(U"a"), tok(U"an"), cfg));
    }
    SUBCASE("identical tokens above threshold match") {
        CHECK(matches(tok(U"haus"), tok(U"haus"), cfg));
        CHECK_FALSE(matches(tok(U"haus"), tok(U"peu"), cfg));
    }
    SUBCASE("LCSR exactly at the threshold does not match") {
        cfg.lcsr_threshold = 1.0;
        CHECK_FALSE(matches(tok(U"same"), tok(U"same"), cfg));
    }
    SUBCASE("lexicon entries match regardless of LCSR") {
        TranslationLexicon lex;
        lex.insert(U"horse", U"cheval");
        cfg.lexicon = lex;
        cfg.use_lexicon = true;
        CHECK(matches(tok(U"horse"), tok(U"cheval"), cfg));
        CHECK_FALSE(matches(tok(U"horse"), tok(U"vache"), cfg));
        SUBCASE("without the flag the lexicon is ignored") {
            cfg.use_lexicon = false;
            CHECK_FALSE(matches(tok(U"horse"), tok(U"cheval"), cfg));
        }
        SUBCASE("a deliberate lexicon entry overrides the stop-list") {
            cfg.stoplist_x.insert(U"horse");
            CHECK(matches(tok(U"horse"), tok(U"cheval"), cfg));
        }
    }
    SUBCASE("lookups fold case") {
        TranslationLexicon lex;
        lex.insert(U"Horse", U"CHEVAL");
        cfg.lexicon = lex;
        cfg.use_lexicon = true;
        CHECK(matches(tok(U"horse"), tok(U"cheval"), cfg));
    }
}

TEST_CASE("point generation inside a search rectangle") {
    MatchingPredicateConfig cfg;
    cfg.lcsr_threshold = 0.7;

    SUBCASE("region without tokens is empty") {
        const auto xt = tokenize(U"uno duo");
        const auto yt = tokenize(U"uno duo");
        CHECK(generate_points(SearchRectangle{100, 100, 50, 50}, xt, yt, cfg).empty());
    }
    SUBCASE("single matching pair yields one point") {
        const auto xt = tokenize(U"zzz horse");
        const auto yt = tokenize(U"qqq horse");
        const auto pts = generate_points(SearchRectangle{-1, -1, 100, 100}, xt, yt, cfg);
        REQUIRE(pts.size() == 1);
        CHECK(pts[0].x == doctest::Approx(6.0));
        CHECK(pts[0].y == doctest::Approx(6.0));
    }
    SUBCASE("all-pairs cognates give the full cross product") {
        const auto xt = tokenize(U"melon melon melon");
        const auto yt = tokenize(U"melon melon melon");
        const auto pts = generate_points(SearchRectangle{-1, -1, 100, 100}, xt, yt, cfg);
        std::size_t brute = 0;
        for (const Token& e : xt.tokens)
            for (const Token& f : yt.tokens)
                if (matches(e, f, cfg)) ++brute;
        CHECK(brute == 9);
        CHECK(pts.size() == 9);
    }
    SUBCASE("monotone in the rectangle") {
        const auto xt = tokenize(U"ara beb cic dod eue fif gog");
        const auto yt = tokenize(U"ara beb cic dod eue fif gog");
        cfg.lcsr_threshold = 0.5;
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> lo(-1, 10), sz(1, 30);
        for (int i = 0; i < 50; ++i) {
            SearchRectangle inner{lo(rng), lo(rng), sz(rng), sz(rng)};
            SearchRectangle outer{inner.x0 - 1, inner.y0 - 1, inner.width + 2, inner.height + 2};
            const auto small = generate_points(inner, xt, yt, cfg);
            const auto big = generate_points(outer, xt, yt, cfg);
            for (const Point& p : small) {
                CHECK(std::count_if(big.begin(), big.end(), [&](const Point& q) {
                          return q.x == p.x && q.y == p.y;
                      }) == 1);
            }
        }
    }
    SUBCASE("the exclusive lower-left corner drops boundary points") {
        const auto xt = tokenize(U"melon");
        const auto yt = tokenize(U"melon");
        // token mean position is exactly 2.0
        CHECK(generate_points(SearchRectangle{2.0, 0, 10, 10}, xt, yt, cfg).empty());
        CHECK(generate_points(SearchRectangle{1.9, 0, 10, 10}, xt, yt, cfg).size() == 1);
    }
}
