#include "bimap/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bimap/anneal.hpp"
#include "bimap/eval.hpp"
#include "bimap/io.hpp"
#include "bimap/svg.hpp"
#include "bimap/synthetic.hpp"
#include "bimap/unicode.hpp"

namespace bimap::cli {

namespace {

namespace fs = std::filesystem;

struct GlobalOpts {
    std::string params_file;
    std::uint64_t seed = 1;
    std::string lexicon_file;
    std::string stoplist_x_file;
    std::string stoplist_y_file;
    bool no_second_pass = false;
    bool relation = false;
};

PipelineParams effective_params(const GlobalOpts& g) {
    PipelineParams p = g.params_file.empty() ? PipelineParams{} : load_params(g.params_file);
    p.second_pass.enabled = !g.no_second_pass;
    return p;
}

MatchingPredicateConfig matching_config(const GlobalOpts& g, double lcsr_threshold) {
    MatchingPredicateConfig cfg;
    cfg.lcsr_threshold = lcsr_threshold;
    if (!g.stoplist_x_file.empty()) cfg.stoplist_x = load_stoplist(g.stoplist_x_file);
    if (!g.stoplist_y_file.empty()) cfg.stoplist_y = load_stoplist(g.stoplist_y_file);
    if (!g.lexicon_file.empty()) {
        cfg.lexicon = load_lexicon(g.lexicon_file);
        cfg.use_lexicon = true;
    }
    return cfg;
}

const char* axis_name(GapAxis a) { return a == GapAxis::x ? "x" : "y"; }

struct MapCmd {
    std::string x_file, y_file, out_file;
    double gap_threshold = 1000;
};

int cmd_map(const GlobalOpts& g, const MapCmd& c) {
    const PipelineParams params = effective_params(g);
    const std::u32string x_raw = load_text(c.x_file);
    const std::u32string y_raw = load_text(c.y_file);
    if (x_raw.empty() || y_raw.empty()) throw std::runtime_error("input texts must be non-empty");

    const TokenizedText xt = tokenize(x_raw);
    const TokenizedText yt = tokenize(y_raw);
    const BitextSpace space{static_cast<double>(x_raw.size()), static_cast<double>(y_raw.size())};
    const MatchingPredicateConfig cfg = matching_config(g, params.lcsr_threshold);

    SearchCounters pass1, pass2;
    const std::vector<Chain> chains = trace_first_pass(xt, yt, cfg, params.simr, space, &pass1);
    std::size_t duplicates = 0;
    BitextMap map = build_map(chains, space, &duplicates);
    if (duplicates)
        std::cerr << "warning: dropped " << duplicates << " duplicate chain coordinates\n";
    map = second_pass(map, xt, yt, cfg, params.simr, params.second_pass, &pass2);

    save_map(c.out_file, map);
    for (const GapEntry& gap : gap_report(map, c.gap_threshold)) {
        std::printf("gap\t%s\t%g\t%g\n", axis_name(gap.axis), gap.start, gap.end);
    }
    std::cerr << "chains=" << chains.size() << " anchors=" << map.anchors().size()
              << " points_pass1=" << pass1.points_generated
              << " points_pass2=" << pass2.points_generated << "\n";
    if (chains.empty()) {
        std::cerr << "warning: no chains found; map degenerates to the main diagonal\n";
        return 2;
    }
    return 0;
}

struct AlignCmd {
    std::string map_file, points_file, bounds_x_file, bounds_y_file, out_file;
};

int cmd_align(const GlobalOpts& g, const AlignCmd& c) {
    const PipelineParams params = effective_params(g);
    std::vector<Point> points;
    if (!c.points_file.empty()) {
        points = load_reference_points(c.points_file);
    } else if (!c.map_file.empty()) {
        const BitextMap map = load_map(c.map_file);
        for (std::size_t i = 1; i + 1 < map.anchors().size(); ++i)
            points.push_back(Point{map.anchors()[i].x, map.anchors()[i].y, 0, 0});
    } else {
        throw std::runtime_error("align needs --map or --points");
    }

    SentenceGrid grid;
    grid.x_bounds = load_boundaries(c.bounds_x_file);
    grid.y_bounds = load_boundaries(c.bounds_y_file);

    const Alignment alignment = gsa_align(points, grid, params.gsa);
    save_alignment(c.out_file, alignment);
    if (g.relation) {
        const std::vector<Cell> cells = points_to_cells(points, grid);
        save_relation(c.out_file + ".relation", cells);
    }
    return 0;
}

struct EvalCmd {
    std::string map_file, refs_file, test_align_file, ref_align_file;
};

int cmd_eval(const GlobalOpts&, const EvalCmd& c) {
    if (!c.map_file.empty() || !c.refs_file.empty()) {
        if (c.map_file.empty() || c.refs_file.empty())
            throw std::runtime_error("eval needs both --map and --refs");
        const BitextMap map = load_map(c.map_file);
        const std::vector<Point> refs = load_reference_points(c.refs_file);
        std::printf("%-14s %12s %12s %12s\n", "metric", "rms", "median", "p99");
        for (ErrorMetric m :
             {ErrorMetric::horizontal, ErrorMetric::vertical, ErrorMetric::perpendicular}) {
            const ErrorStats s = map_error(map, refs, m);
            const char* name = m == ErrorMetric::horizontal ? "horizontal"
                               : m == ErrorMetric::vertical ? "vertical"
                                                            : "perpendicular";
            std::printf("%-14s %12.4f %12.4f %12.4f\n", name, s.rms, s.median_abs, s.p99);
        }
    }
    if (!c.test_align_file.empty() || !c.ref_align_file.empty()) {
        if (c.test_align_file.empty() || c.ref_align_file.empty())
            throw std::runtime_error("alignment eval needs both --test-align and --ref-align");
        const Alignment test = load_alignment(c.test_align_file);
        Alignment ref = load_alignment(c.ref_align_file);
        // Files do not record totals; trust the larger cover.
        ref.x_sentences = std::max(ref.x_sentences, test.x_sentences);
        ref.y_sentences = std::max(ref.y_sentences, test.y_sentences);
        Alignment test2 = test;
        test2.x_sentences = ref.x_sentences;
        test2.y_sentences = ref.y_sentences;
        std::printf("alignment_errors\t%zu\t(of %zu reference blocks)\n",
                    alignment_errors(test2, ref), ref.blocks.size());
    }
    return 0;
}

struct OptimizeCmd {
    std::string manifest_file, out_file, initial_file;
    int levels = 15;
    int steps = 10;
};

int cmd_optimize(const GlobalOpts& g, const OptimizeCmd& c) {
    const DevManifest manifest = load_manifest(c.manifest_file);
    const std::u32string x_raw = load_text(manifest.x_text);
    const std::u32string y_raw = load_text(manifest.y_text);
    const TokenizedText xt = tokenize(x_raw);
    const TokenizedText yt = tokenize(y_raw);
    const BitextSpace space{static_cast<double>(x_raw.size()), static_cast<double>(y_raw.size())};
    const std::vector<Point> refs = load_reference_points(manifest.refs);

    PipelineParams base =
        c.initial_file.empty() ? PipelineParams{} : load_params(c.initial_file);
    base.second_pass.enabled = !g.no_second_pass;

    auto pipeline = [&](const TunableParams& t) {
        SimrParams simr = base.simr;
        simr.max_point_dispersal = t.max_point_dispersal;
        simr.max_angle_deviation = t.max_angle_deviation;
        simr.max_pal = t.max_pal;
        simr.chain_size = t.chain_size;
        MatchingPredicateConfig cfg = matching_config(g, t.lcsr_threshold);
        const std::vector<Chain> chains = trace_first_pass(xt, yt, cfg, simr, space);
        BitextMap map = build_map(chains, space);
        return second_pass(map, xt, yt, cfg, simr, base.second_pass);
    };
    auto objective = [&](const TunableParams& t) {
        return map_error(pipeline(t), refs, ErrorMetric::perpendicular).rms;
    };

    TunableParams initial;
    initial.max_point_dispersal = base.simr.max_point_dispersal;
    initial.max_angle_deviation = base.simr.max_angle_deviation;
    initial.max_pal = base.simr.max_pal;
    initial.chain_size = base.simr.chain_size;
    initial.lcsr_threshold = base.lcsr_threshold;

    AnnealSchedule schedule;
    schedule.temperature_levels = c.levels;
    schedule.steps_per_temp = c.steps;
    const AnnealResult result = anneal(objective, initial, schedule, TunableBounds{}, g.seed);
    std::printf("best_rms\t%.4f\t(%d evaluations)\n", result.best_objective, result.evaluations);

    PipelineParams best = base;
    best.simr.max_point_dispersal = result.best.max_point_dispersal;
    best.simr.max_angle_deviation = result.best.max_angle_deviation;
    best.simr.max_pal = result.best.max_pal;
    best.simr.chain_size = result.best.chain_size;
    best.lcsr_threshold = result.best.lcsr_threshold;
    save_params(c.out_file, best);

    // Stability report: whether the greedy trace reaches the terminus for
    // each fixed chain size, everything else held at the optimum.
    std::printf("%-12s %-8s %s\n", "chain_size", "status", "terminus_shortfall");
    for (int k = 5; k <= 10; ++k) {
        TunableParams t = result.best;
        t.chain_size = k;
        SimrParams simr = base.simr;
        simr.max_point_dispersal = t.max_point_dispersal;
        simr.max_angle_deviation = t.max_angle_deviation;
        simr.max_pal = t.max_pal;
        simr.chain_size = k;
        MatchingPredicateConfig cfg = matching_config(g, t.lcsr_threshold);
        const std::vector<Chain> chains = trace_first_pass(xt, yt, cfg, simr, space);
        double shortfall = space.diagonal();
        if (!chains.empty()) {
            const Point tr = chains.back().top_right();
            shortfall = std::hypot(space.width - tr.x, space.height - tr.y);
        }
        const bool lost = shortfall > 0.1 * space.diagonal();
        std::printf("%-12d %-8s %.1f\n", k, lost ? "lost" : "ok", shortfall);
    }
    return 0;
}

struct SynthCmd {
    std::string out_prefix;
    std::size_t sentences = 200;
    double density = 0.25;
    double stray = 0.0;
    double swap = 0.05;
    double perturbation = 0.12;
    int frequent = 0;
    double frequent_rate = 0.0;
    double p21 = 0, p12 = 0, p22 = 0, p10 = 0, p01 = 0;
    std::vector<std::string> omissions;   // axis:chars:frac
    std::vector<std::string> inversions;  // sentences:frac
};

SyntheticSpec synth_spec(const GlobalOpts& g, const SynthCmd& c) {
    SyntheticSpec spec;
    spec.seed = g.seed;
    spec.sentence_pairs = c.sentences;
    spec.cognate_density = c.density;
    spec.stray_rate = c.stray;
    spec.swap_rate = c.swap;
    spec.perturbation = c.perturbation;
    spec.frequent_types = c.frequent;
    spec.frequent_rate = c.frequent_rate;
    spec.p_21 = c.p21;
    spec.p_12 = c.p12;
    spec.p_22 = c.p22;
    spec.p_10 = c.p10;
    spec.p_01 = c.p01;
    for (const std::string& s : c.omissions) {
        OmissionSpec om;
        char axis = 0;
        if (std::sscanf(s.c_str(), "%c:%lf:%lf", &axis, &om.target_chars, &om.at_frac) != 3 ||
            (axis != 'x' && axis != 'y'))
            throw std::runtime_error("bad --omission spec '" + s + "', want axis:chars:frac");
        om.axis = (axis == 'x') ? GapAxis::x : GapAxis::y;
        spec.omissions.push_back(om);
    }
    for (const std::string& s : c.inversions) {
        InversionSpec inv;
        if (std::sscanf(s.c_str(), "%d:%lf", &inv.sentences_per_segment, &inv.at_frac) != 2)
            throw std::runtime_error("bad --inversion spec '" + s + "', want sentences:frac");
        spec.inversions.push_back(inv);
    }
    return spec;
}

int cmd_synth(const GlobalOpts& g, const SynthCmd& c) {
    const SyntheticSpec spec = synth_spec(g, c);
    const SyntheticBitext bt = generate_synthetic(spec);

    const std::string p = c.out_prefix;
    save_text(p + ".x.txt", bt.x_utf8);
    save_text(p + ".y.txt", bt.y_utf8);
    save_boundaries(p + ".x.bounds", bt.x_bounds);
    save_boundaries(p + ".y.bounds", bt.y_bounds);

    std::vector<Point> refs;
    const auto& anchors = bt.planted_tbm.anchors();
    for (std::size_t i = 1; i + 1 < anchors.size(); ++i)
        refs.push_back(Point{anchors[i].x, anchors[i].y, 0, 0});
    save_reference_points(p + ".refs.tsv", refs);
    save_reference_points(p + ".tpcs.tsv", bt.planted_tpcs);
    save_alignment(p + ".align.tsv", bt.planted_alignment);

    DevManifest m;
    m.x_text = fs::path(p + ".x.txt").filename();
    m.y_text = fs::path(p + ".y.txt").filename();
    m.x_bounds = fs::path(p + ".x.bounds").filename();
    m.y_bounds = fs::path(p + ".y.bounds").filename();
    m.refs = fs::path(p + ".refs.tsv").filename();
    save_manifest(p + ".manifest", m);

    std::ostringstream planted;
    planted << "seed = " << spec.seed << "\n"
            << "sentence_pairs = " << spec.sentence_pairs << "\n"
            << "cognate_density = " << spec.cognate_density << "\n"
            << "stray_rate = " << spec.stray_rate << "\n"
            << "swap_rate = " << spec.swap_rate << "\n"
            << "perturbation = " << spec.perturbation << "\n"
            << "frequent_types = " << spec.frequent_types << "\n"
            << "frequent_rate = " << spec.frequent_rate << "\n"
            << "x_chars = " << bt.space.width << "\n"
            << "y_chars = " << bt.space.height << "\n"
            << "planted_points = " << bt.planted_tpcs.size() << "\n"
            << "mean_token_len_x = " << bt.mean_token_len_x << "\n"
            << "mean_token_len_y = " << bt.mean_token_len_y << "\n";
    save_text(p + ".spec", planted.str());
    std::printf("synth\t%s\t%zu x-sentences\t%zu y-sentences\t%zu planted points\n",
                p.c_str(), bt.planted_alignment.x_sentences, bt.planted_alignment.y_sentences,
                bt.planted_tpcs.size());
    return 0;
}

struct PlotCmd {
    std::string map_file, points_file, out_file;
    double width = 0, height = 0;
};

int cmd_plot(const GlobalOpts&, const PlotCmd& c) {
    std::optional<BitextMap> map;
    if (!c.map_file.empty()) map = load_map(c.map_file);

    std::vector<Point> candidates;
    if (!c.points_file.empty()) candidates = load_reference_points(c.points_file);

    BitextSpace space;
    if (map) {
        space = map->space();
    } else if (c.width > 0 && c.height > 0) {
        space = BitextSpace{c.width, c.height};
    } else {
        throw std::runtime_error("plot needs --map, or --width and --height");
    }

    std::vector<Point> accepted;
    if (map) {
        for (std::size_t i = 1; i + 1 < map->anchors().size(); ++i)
            accepted.push_back(Point{map->anchors()[i].x, map->anchors()[i].y, 0, 0});
    }
    const std::string svg =
        render_scatter_svg(space, candidates, accepted, map ? &*map : nullptr);
    save_text(c.out_file, svg);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"bitext map recovery and geometric sentence alignment"};
    app.require_subcommand(1);
    app.fallthrough(true);  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--params", g.params_file, "parameter file (key = value lines)");
    app.add_option("--seed", g.seed, "random seed for synth and optimize");
    app.add_option("--lexicon", g.lexicon_file, "translation lexicon (source<TAB>target)");
    app.add_option("--stoplist-x", g.stoplist_x_file, "stop-list for the x-axis language");
    app.add_option("--stoplist-y", g.stoplist_y_file, "stop-list for the y-axis language");
    app.add_flag("--no-second-pass", g.no_second_pass, "skip the second-pass recoveries");
    app.add_flag("--relation", g.relation, "also write the raw sentence correspondence relation");

    MapCmd mc;
    auto* map_cmd = app.add_subcommand("map", "recover the bitext map of a text pair");
    map_cmd->add_option("x_text", mc.x_file, "x-axis text file")->required();
    map_cmd->add_option("y_text", mc.y_file, "y-axis text file")->required();
    map_cmd->add_option("-o,--output", mc.out_file, "output map file")->required();
    map_cmd->add_option("--gap-threshold", mc.gap_threshold,
                        "report inter-anchor jumps larger than this many characters");

    AlignCmd ac;
    auto* align_cmd = app.add_subcommand("align", "derive a sentence alignment");
    align_cmd->add_option("--map", ac.map_file, "map file (interior anchors become points)");
    align_cmd->add_option("--points", ac.points_file, "correspondence point file (x<TAB>y)");
    align_cmd->add_option("--bounds-x", ac.bounds_x_file, "x-axis sentence boundaries")->required();
    align_cmd->add_option("--bounds-y", ac.bounds_y_file, "y-axis sentence boundaries")->required();
    align_cmd->add_option("-o,--output", ac.out_file, "output alignment file")->required();

    EvalCmd ec;
    auto* eval_cmd = app.add_subcommand("eval", "score a map and/or an alignment");
    eval_cmd->add_option("--map", ec.map_file, "map file to score");
    eval_cmd->add_option("--refs", ec.refs_file, "reference points (x<TAB>y)");
    eval_cmd->add_option("--test-align", ec.test_align_file, "alignment to score");
    eval_cmd->add_option("--ref-align", ec.ref_align_file, "reference alignment");

    OptimizeCmd oc;
    auto* opt_cmd = app.add_subcommand("optimize", "anneal parameters against a dev set");
    opt_cmd->add_option("--manifest", oc.manifest_file, "dev-set manifest")->required();
    opt_cmd->add_option("-o,--output", oc.out_file, "output params file")->required();
    opt_cmd->add_option("--initial", oc.initial_file, "starting params file");
    opt_cmd->add_option("--levels", oc.levels, "temperature levels");
    opt_cmd->add_option("--steps", oc.steps, "proposals per temperature");

    SynthCmd sc;
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic bitext with ground truth");
    synth_cmd->add_option("-o,--output", sc.out_prefix, "output file prefix")->required();
    synth_cmd->add_option("--sentences", sc.sentences, "sentence pairs to plant");
    synth_cmd->add_option("--density", sc.density, "cognate density");
    synth_cmd->add_option("--stray", sc.stray, "stray shared-form rate");
    synth_cmd->add_option("--swap", sc.swap, "local word-order swap rate");
    synth_cmd->add_option("--perturbation", sc.perturbation, "cognate mutation rate");
    synth_cmd->add_option("--frequent", sc.frequent, "frequent noise token types");
    synth_cmd->add_option("--frequent-rate", sc.frequent_rate, "frequent token injection rate");
    synth_cmd->add_option("--p21", sc.p21, "2-1 bead probability");
    synth_cmd->add_option("--p12", sc.p12, "1-2 bead probability");
    synth_cmd->add_option("--p22", sc.p22, "2-2 bead probability");
    synth_cmd->add_option("--p10", sc.p10, "1-0 bead probability");
    synth_cmd->add_option("--p01", sc.p01, "0-1 bead probability");
    synth_cmd->add_option("--omission", sc.omissions, "omission span, axis:chars:frac");
    synth_cmd->add_option("--inversion", sc.inversions, "switched segments, sentences:frac");

    PlotCmd pc;
    auto* plot_cmd = app.add_subcommand("plot", "render a scatterplot SVG");
    plot_cmd->add_option("--map", pc.map_file, "map file to draw");
    plot_cmd->add_option("--points", pc.points_file, "candidate points to draw");
    plot_cmd->add_option("--width", pc.width, "space width when no map is given");
    plot_cmd->add_option("--height", pc.height, "space height when no map is given");
    plot_cmd->add_option("-o,--output", pc.out_file, "output SVG file")->required();

    int rc = 0;
    map_cmd->callback([&] { rc = cmd_map(g, mc); });
    align_cmd->callback([&] { rc = cmd_align(g, ac); });
    eval_cmd->callback([&] { rc = cmd_eval(g, ec); });
    opt_cmd->callback([&] { rc = cmd_optimize(g, oc); });
    synth_cmd->callback([&] { rc = cmd_synth(g, sc); });
    plot_cmd->callback([&] { rc = cmd_plot(g, pc); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}

}  // namespace bimap::cli
