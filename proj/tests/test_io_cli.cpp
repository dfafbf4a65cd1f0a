#include <doctest.h>

#include <stdexcept>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "bimap/cli.hpp"
#include "bimap/io.hpp"
#include "bimap/svg.hpp"
#include "bimap/synthetic.hpp"
#include "bimap/unicode.hpp"

using namespace bimap;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        static const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        path = fs::temp_directory_path() /
               ("bimap_test_" + std::to_string(stamp) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path operator/(const std::string& name) const { return path / name; }
};

void write(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(std::vector<std::string> args) {
    std::vector<const char*> argv{"bimap"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return bimap::cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("params files") {
    TempDir dir;
    SUBCASE("round trip") {
        PipelineParams p;
        p.simr.max_point_dispersal = 11.25;
        p.simr.chain_size = 8;
        p.lcsr_threshold = 0.625;
        p.gsa.min_confidence = 137.5;
        save_params(dir / "p.params", p);
        const PipelineParams q = load_params(dir / "p.params");
        CHECK(q.simr.max_point_dispersal == 11.25);
        CHECK(q.simr.chain_size == 8);
        CHECK(q.lcsr_threshold == 0.625);
        CHECK(q.gsa.min_confidence == 137.5);
    }
    SUBCASE("unknown keys are rejected") {
        write(dir / "bad.params", "max_point_dispersal = 10\nmystery_knob = 4\n");
        CHECK_THROWS(load_params(dir / "bad.params"));
    }
    SUBCASE("comments and spacing are tolerated") {
        write(dir / "ok.params", "# tuned on dev set 3\nchain_size = 9\n\nmax_pal=2\n");
        const PipelineParams p = load_params(dir / "ok.params");
        CHECK(p.simr.chain_size == 9);
        CHECK(p.simr.max_pal == 2);
    }
}

TEST_CASE("word list files") {
    TempDir dir;
    SUBCASE("stop-lists fold case and skip comments") {
        write(dir / "stop.txt", "# closed-class words\nThe\na\n\nan\n");
        const StopList sl = load_stoplist(dir / "stop.txt");
        CHECK(sl.size() == 3);
        CHECK(sl.contains(U"the"));
        CHECK(sl.contains(U"AN"));
    }
    SUBCASE("lexicons are tab separated") {
        write(dir / "lex.tsv", "horse\tcheval\nHello\tBonjour\n");
        const TranslationLexicon lex = load_lexicon(dir / "lex.tsv");
        CHECK(lex.contains(U"horse", U"cheval"));
        CHECK(lex.contains(U"hello", U"bonjour"));
        CHECK_FALSE(lex.contains(U"cheval", U"horse"));
    }
    SUBCASE("boundaries must increase strictly") {
        write(dir / "b.txt", "10\n20\n20\n");
        CHECK_THROWS(load_boundaries(dir / "b.txt"));
        write(dir / "ok.txt", "10\n20\n35\n");
        CHECK(load_boundaries(dir / "ok.txt").size() == 3);
    }
}

TEST_CASE("map files round trip the evaluated function") {
    TempDir dir;
    SyntheticSpec spec;
    spec.seed = 31;
    spec.sentence_pairs = 100;
    spec.cognate_density = 0.4;
    spec.inversions.push_back(InversionSpec{0.5, 3});
    const SyntheticBitext bt = generate_synthetic(spec);
    save_map(dir / "m.map", bt.planted_tbm);
    const BitextMap loaded = load_map(dir / "m.map");
    REQUIRE(loaded.anchors().size() == bt.planted_tbm.anchors().size());
    CHECK(loaded.mers().size() == bt.planted_tbm.mers().size());
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> xs(0, bt.space.width);
    for (int i = 0; i < 1000; ++i) {
        const double x = xs(rng);
        CHECK(loaded.y_at(x) == bt.planted_tbm.y_at(x));
    }
}

TEST_CASE("alignment files") {
    TempDir dir;
    Alignment a;
    a.x_sentences = 5;
    a.y_sentences = 4;
    AlignedBlock b1;
    b1.x = IndexRange{0, 2};
    b1.y = IndexRange{0, 1};
    AlignedBlock b2;
    b2.x = IndexRange{2, 0};
    b2.y = IndexRange{1, 1};
    AlignedBlock b3;
    b3.x = IndexRange{2, 3};
    b3.y = IndexRange{2, 2};
    a.blocks = {b1, b2, b3};
    save_alignment(dir / "a.tsv", a);
    CHECK(slurp(dir / "a.tsv") == "0..1\t0..0\n-\t1..1\n2..4\t2..3\n");
    const Alignment loaded = load_alignment(dir / "a.tsv");
    REQUIRE(loaded.blocks.size() == 3);
    CHECK(same_block(loaded.blocks[0], b1));
    CHECK(same_block(loaded.blocks[1], b2));
    CHECK(same_block(loaded.blocks[2], b3));
}

TEST_CASE("scatterplot rendering") {
    const BitextSpace space{200, 150};
    SUBCASE("an empty plot still draws the frame and diagonal") {
        const std::string svg = render_scatter_svg(space, {}, {}, nullptr);
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("<line") != std::string::npos);
        CHECK(svg.find("<circle") == std::string::npos);
    }
    SUBCASE("one glyph per point") {
        std::vector<Point> pts;
        for (int i = 0; i < 17; ++i) pts.push_back(Point{i * 10.0, i * 8.0});
        const std::string svg = render_scatter_svg(space, pts, {}, nullptr);
        std::size_t count = 0, pos = 0;
        while ((pos = svg.find("<circle", pos)) != std::string::npos) {
            ++count;
            pos += 7;
        }
        CHECK(count == 17);
    }
    SUBCASE("output is byte-stable") {
        const std::vector<Point> pts{Point{10, 10}, Point{50, 60}};
        CHECK(render_scatter_svg(space, pts, {}, nullptr) ==
              render_scatter_svg(space, pts, {}, nullptr));
    }
}

TEST_CASE("command line pipeline") {
    TempDir dir;
    const std::string prefix = (dir / "fix").string();
    REQUIRE(run({"synth", "-o", prefix, "--seed", "5", "--sentences", "150", "--density",
                 "0.5"}) == 0);
    REQUIRE(fs::exists(dir / "fix.x.txt"));
    REQUIRE(fs::exists(dir / "fix.y.bounds"));
    REQUIRE(fs::exists(dir / "fix.manifest"));

    SUBCASE("self-bitext maps to the identity within a token length") {
        const std::string map_file = (dir / "self.map").string();
        const int rc = run({"map", prefix + ".x.txt", prefix + ".x.txt", "-o", map_file});
        CHECK(rc == 0);
        const BitextMap m = load_map(map_file);
        for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double x = frac * m.space().width;
            CHECK(std::abs(m.y_at(x) - x) <= 8.0);
        }
    }

    SUBCASE("mapping the pair and evaluating against the plant") {
        const std::string map_file = (dir / "pair.map").string();
        CHECK(run({"map", prefix + ".x.txt", prefix + ".y.txt", "-o", map_file}) == 0);
        CHECK(run({"eval", "--map", map_file, "--refs", prefix + ".refs.tsv"}) == 0);
    }

    SUBCASE("disabling the second pass on a monotone bitext changes nothing") {
        const std::string with = (dir / "with.map").string();
        const std::string without = (dir / "without.map").string();
        CHECK(run({"map", prefix + ".x.txt", prefix + ".y.txt", "-o", with}) == 0);
        CHECK(run({"map", prefix + ".x.txt", prefix + ".y.txt", "-o", without,
                   "--no-second-pass"}) == 0);
        CHECK(slurp(with) == slurp(without));
    }

    SUBCASE("an impossible matching threshold degenerates to the diagonal with exit 2") {
        PipelineParams p;
        p.lcsr_threshold = 1.0;
        save_params(dir / "strict.params", p);
        const std::string map_file = (dir / "none.map").string();
        CHECK(run({"map", prefix + ".x.txt", prefix + ".y.txt", "-o", map_file, "--params",
                   (dir / "strict.params").string()}) == 2);
        const BitextMap m = load_map(map_file);
        CHECK(m.anchors().size() == 2);
    }

    SUBCASE("unreadable inputs exit with 1") {
        CHECK(run({"map", (dir / "missing.txt").string(), prefix + ".y.txt", "-o",
                   (dir / "x.map").string()}) == 1);
    }

    SUBCASE("aligning planted points reproduces the planted alignment file") {
        const std::string out = (dir / "got.align").string();
        CHECK(run({"align", "--points", prefix + ".tpcs.tsv", "--bounds-x",
                   prefix + ".x.bounds", "--bounds-y", prefix + ".y.bounds", "-o", out}) == 0);
        CHECK(slurp(out) == slurp(prefix + ".align.tsv"));
    }

    SUBCASE("the relation flag writes the cell relation") {
        const std::string out = (dir / "rel.align").string();
        CHECK(run({"align", "--points", prefix + ".tpcs.tsv", "--bounds-x",
                   prefix + ".x.bounds", "--bounds-y", prefix + ".y.bounds", "-o", out,
                   "--relation"}) == 0);
        CHECK(fs::exists(out + ".relation"));
        const std::string rel = slurp(out + ".relation");
        CHECK(rel.find('\t') != std::string::npos);
    }

    SUBCASE("plot output is deterministic and counts its points") {
        const std::string svg1 = (dir / "a.svg").string();
        const std::string svg2 = (dir / "b.svg").string();
        CHECK(run({"plot", "--points", prefix + ".tpcs.tsv", "--width", "9000", "--height",
                   "9000", "-o", svg1}) == 0);
        CHECK(run({"plot", "--points", prefix + ".tpcs.tsv", "--width", "9000", "--height",
                   "9000", "-o", svg2}) == 0);
        CHECK(slurp(svg1) == slurp(svg2));
    }

    SUBCASE("optimize with zero levels keeps the initial parameters") {
        PipelineParams init;
        init.simr.chain_size = 8;
        init.lcsr_threshold = 0.66;
        save_params(dir / "init.params", init);
        const std::string out = (dir / "opt.params").string();
        CHECK(run({"optimize", "--manifest", prefix + ".manifest", "-o", out, "--initial",
                   (dir / "init.params").string(), "--levels", "0"}) == 0);
        const PipelineParams got = load_params(out);
        CHECK(got.simr.chain_size == 8);
        CHECK(got.lcsr_threshold == 0.66);
    }
}

TEST_CASE("single-sentence bitexts align one to one") {
    TempDir dir;
    write(dir / "x.txt", "voleva dire qualcosa di simile. ");
    write(dir / "y.txt", "voleva dire qualcosa di simile. ");
    write(dir / "x.bounds", "32\n");
    write(dir / "y.bounds", "32\n");
    write(dir / "pts.tsv", "10\t10\n");
    const std::string out = (dir / "out.align").string();
    REQUIRE(run({"align", "--points", (dir / "pts.tsv").string(), "--bounds-x",
                 (dir / "x.bounds").string(), "--bounds-y", (dir / "y.bounds").string(), "-o",
                 out}) == 0);
    CHECK(slurp(out) == "0..0\t0..0\n");
}

TEST_CASE("omission fixtures emit an empty-sided block") {
    TempDir dir;
    const std::string prefix = (dir / "om").string();
    REQUIRE(run({"synth", "-o", prefix, "--seed", "9", "--sentences", "120", "--density", "1.0",
                 "--swap", "0", "--omission", "y:600:0.5"}) == 0);
    const std::string out = (dir / "om.align").string();
    REQUIRE(run({"align", "--points", prefix + ".tpcs.tsv", "--bounds-x", prefix + ".x.bounds",
                 "--bounds-y", prefix + ".y.bounds", "-o", out}) == 0);
    const std::string content = slurp(out);
    CHECK(content.find("-\t") != std::string::npos);
}
