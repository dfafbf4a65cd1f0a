#include "bimap/synthetic.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "bimap/unicode.hpp"

namespace bimap {

namespace {

using Rng = std::mt19937_64;

std::vector<std::u32string> make_vocab(std::u32string_view consonants, std::u32string_view vowels,
                                       std::size_t count, Rng& rng) {
    std::vector<std::u32string> vocab;
    std::uniform_int_distribution<std::size_t> ci(0, consonants.size() - 1);
    std::uniform_int_distribution<std::size_t> vi(0, vowels.size() - 1);
    std::uniform_int_distribution<int> syllables(2, 4);
    std::set<std::u32string> seen;
    while (vocab.size() < count) {
        std::u32string w;
        const int n = syllables(rng);
        for (int s = 0; s < n; ++s) {
            w.push_back(consonants[ci(rng)]);
            w.push_back(vowels[vi(rng)]);
        }
        if (!seen.insert(w).second) continue;
        vocab.push_back(std::move(w));
    }
    return vocab;
}

std::u32string perturb(const std::u32string& w, double rate, Rng& rng) {
    static const std::u32string letters = U"bdglmnprstv";
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> li(0, letters.size() - 1);
    std::u32string out = w;
    for (auto& c : out) {
        if (unit(rng) < rate) c = letters[li(rng)];
    }
    return out;
}

// A token slot. Linked slots carry the id of their planted pair; the id
// survives local reorderings and later slot insertions.
struct Slot {
    std::u32string form;
    long link = -1;
};

struct Sentence {
    std::vector<Slot> slots;
};

enum class BeadType { b11, b21, b12, b22, b10, b01 };

struct Event {
    double frac;
    int kind;  // 0 = omission, 1 = inversion
    std::size_t index;
};

struct PlannedBlock {
    std::size_t x_begin, x_count, y_begin, y_count;  // planning-order indices
};

}  // namespace

SyntheticBitext generate_synthetic(const SyntheticSpec& spec) {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(spec.cognate_density) || !in_unit(spec.stray_rate) || !in_unit(spec.swap_rate) ||
        !in_unit(spec.perturbation) || !in_unit(spec.frequent_rate))
        throw std::invalid_argument("synthetic densities must lie in [0,1]");
    if (spec.sentence_pairs == 0 || spec.min_tokens < 1 || spec.max_tokens < spec.min_tokens ||
        spec.vocab_size < 8)
        throw std::invalid_argument("infeasible synthetic sizes");
    if (spec.p_21 < 0 || spec.p_12 < 0 || spec.p_22 < 0 || spec.p_10 < 0 || spec.p_01 < 0 ||
        spec.p_21 + spec.p_12 + spec.p_22 + spec.p_10 + spec.p_01 > 1.0)
        throw std::invalid_argument("bead probabilities must be non-negative and sum to at most 1");

    std::vector<Event> events;
    for (std::size_t i = 0; i < spec.omissions.size(); ++i) {
        if (!in_unit(spec.omissions[i].at_frac) || spec.omissions[i].target_chars <= 0)
            throw std::invalid_argument("infeasible omission span");
        events.push_back(Event{spec.omissions[i].at_frac, 0, i});
    }
    for (std::size_t i = 0; i < spec.inversions.size(); ++i) {
        if (!in_unit(spec.inversions[i].at_frac) || spec.inversions[i].sentences_per_segment < 1)
            throw std::invalid_argument("infeasible inversion span");
        events.push_back(Event{spec.inversions[i].at_frac, 1, i});
    }
    for (std::size_t i = 0; i < spec.stretches.size(); ++i) {
        if (!in_unit(spec.stretches[i].at_frac) || spec.stretches[i].sentences < 1 ||
            spec.stretches[i].y_factor < 2)
            throw std::invalid_argument("infeasible stretch span");
        events.push_back(Event{spec.stretches[i].at_frac, 2, i});
    }
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.frac < b.frac; });
    for (std::size_t i = 1; i < events.size(); ++i) {
        if (events[i].frac == events[i - 1].frac)
            throw std::invalid_argument("overlapping synthetic spans");
    }

    Rng rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> tokens_per_sentence(spec.min_tokens, spec.max_tokens);

    const auto cognate_vocab = make_vocab(U"bdglmnprstv", U"aeiou", spec.vocab_size, rng);
    const auto x_noise_vocab = make_vocab(U"kzwx", U"ao", 300, rng);
    const auto y_noise_vocab = make_vocab(U"fhjq", U"eu", 300, rng);
    std::uniform_int_distribution<std::size_t> cog_i(0, cognate_vocab.size() - 1);
    std::uniform_int_distribution<std::size_t> xn_i(0, x_noise_vocab.size() - 1);
    std::uniform_int_distribution<std::size_t> yn_i(0, y_noise_vocab.size() - 1);

    std::vector<std::u32string> frequent;
    for (int i = 0; i < spec.frequent_types; ++i) frequent.push_back(cognate_vocab[cog_i(rng)]);

    // Phase 1: plan token grids. x sentences are emitted in planning order;
    // inversions permute the emission order of y sentences via y_order.
    std::vector<Sentence> xs, ys;
    std::vector<std::size_t> y_order;
    long next_link = 0;

    std::vector<PlannedBlock> planned_blocks;
    std::vector<std::pair<std::size_t, std::size_t>> inversion_y_ranges;  // planning indices
    std::vector<std::pair<std::size_t, std::size_t>> stretch_x_ranges;
    std::vector<std::pair<GapAxis, std::pair<std::size_t, std::size_t>>> omission_ranges;

    auto new_x_sentence = [&](int n) -> std::size_t {
        xs.push_back(Sentence{std::vector<Slot>(static_cast<std::size_t>(n))});
        return xs.size() - 1;
    };
    auto new_y_sentence = [&](int n) -> std::size_t {
        ys.push_back(Sentence{std::vector<Slot>(static_cast<std::size_t>(n))});
        y_order.push_back(ys.size() - 1);
        return ys.size() - 1;
    };
    auto fill_noise_x = [&](std::size_t si) {
        for (auto& slot : xs[si].slots)
            if (slot.form.empty()) slot.form = x_noise_vocab[xn_i(rng)];
    };
    auto fill_noise_y = [&](std::size_t si) {
        for (auto& slot : ys[si].slots)
            if (slot.form.empty()) slot.form = y_noise_vocab[yn_i(rng)];
    };
    auto link_pair = [&](Slot& sx, Slot& sy) {
        const std::u32string w = cognate_vocab[cog_i(rng)];
        sx.form = w;
        sx.link = next_link;
        sy.form = perturb(w, spec.perturbation, rng);
        sy.link = next_link;
        ++next_link;
    };
    // Translate x sentence `sx` into y slots [y_begin, y_begin + |sx|).
    auto translate_into = [&](std::size_t sx, std::size_t sy, std::size_t y_begin) {
        Sentence& from = xs[sx];
        Sentence& to = ys[sy];
        for (std::size_t t = 0; t < from.slots.size(); ++t) {
            if (unit(rng) < spec.cognate_density) link_pair(from.slots[t], to.slots[y_begin + t]);
        }
    };

    auto emit_11 = [&](bool record_block) {
        const int n = tokens_per_sentence(rng);
        const std::size_t sx = new_x_sentence(n);
        const std::size_t sy = new_y_sentence(n);
        translate_into(sx, sy, 0);
        fill_noise_x(sx);
        fill_noise_y(sy);
        if (record_block) planned_blocks.push_back(PlannedBlock{sx, 1, sy, 1});
    };

    auto run_omission = [&](const OmissionSpec& om) {
        double chars = 0;
        const std::size_t first = (om.axis == GapAxis::y) ? ys.size() : xs.size();
        while (chars < om.target_chars) {
            const int n = tokens_per_sentence(rng);
            if (om.axis == GapAxis::y) {
                const std::size_t sy = new_y_sentence(n);
                fill_noise_y(sy);
                for (const auto& slot : ys[sy].slots) chars += static_cast<double>(slot.form.size()) + 1;
                planned_blocks.push_back(PlannedBlock{xs.size(), 0, sy, 1});
            } else {
                const std::size_t sx = new_x_sentence(n);
                fill_noise_x(sx);
                for (const auto& slot : xs[sx].slots) chars += static_cast<double>(slot.form.size()) + 1;
                planned_blocks.push_back(PlannedBlock{sx, 1, ys.size(), 0});
            }
        }
        const std::size_t last = (om.axis == GapAxis::y) ? ys.size() : xs.size();
        omission_ranges.push_back({om.axis, {first, last}});
    };

    auto run_stretch = [&](const StretchSpec& st) {
        const std::size_t x_begin = xs.size();
        for (int b = 0; b < st.sentences; ++b) {
            const int n = tokens_per_sentence(rng);
            const std::size_t sx = new_x_sentence(n);
            const std::size_t sy = new_y_sentence(n * st.y_factor);
            for (int t = 0; t < n; ++t) {
                if (unit(rng) < spec.cognate_density)
                    link_pair(xs[sx].slots[static_cast<std::size_t>(t)],
                              ys[sy].slots[static_cast<std::size_t>(t * st.y_factor)]);
            }
            fill_noise_x(sx);
            fill_noise_y(sy);
            planned_blocks.push_back(PlannedBlock{sx, 1, sy, 1});
        }
        stretch_x_ranges.push_back({x_begin, xs.size()});
    };

    auto run_inversion = [&](const InversionSpec& inv) {
        const std::size_t g = static_cast<std::size_t>(inv.sentences_per_segment);
        const std::size_t x_begin = xs.size();
        const std::size_t y_begin = ys.size();
        const std::size_t order_begin = y_order.size();
        for (std::size_t i = 0; i < 2 * g; ++i) emit_11(false);
        // The second half of the freshly planned y sentences is emitted
        // first; x keeps the original order.
        std::rotate(y_order.begin() + static_cast<long>(order_begin),
                    y_order.begin() + static_cast<long>(order_begin + g), y_order.end());
        planned_blocks.push_back(PlannedBlock{x_begin, 2 * g, y_begin, 2 * g});
        inversion_y_ranges.push_back({y_begin, y_begin + 2 * g});
    };

    const double total_beads = static_cast<double>(spec.sentence_pairs);
    std::size_t next_event = 0;
    bool force_11 = false;  // adjacent non-1-1 beads are not separable at
                            // sentence level, so they get a 1-1 buffer
    for (std::size_t bead = 0; bead < spec.sentence_pairs; ++bead) {
        while (next_event < events.size() &&
               events[next_event].frac * total_beads <= static_cast<double>(bead)) {
            if (events[next_event].kind == 0)
                run_omission(spec.omissions[events[next_event].index]);
            else if (events[next_event].kind == 1)
                run_inversion(spec.inversions[events[next_event].index]);
            else
                run_stretch(spec.stretches[events[next_event].index]);
            ++next_event;
        }

        const double r = unit(rng);
        BeadType type = BeadType::b11;
        double acc = spec.p_21;
        if (force_11) {
            type = BeadType::b11;
        } else if (r < acc) {
            type = BeadType::b21;
        } else if (r < (acc += spec.p_12)) {
            type = BeadType::b12;
        } else if (r < (acc += spec.p_22)) {
            type = BeadType::b22;
        } else if (r < (acc += spec.p_10)) {
            type = BeadType::b10;
        } else if (r < (acc += spec.p_01)) {
            type = BeadType::b01;
        }
        force_11 = (type != BeadType::b11);

        switch (type) {
            case BeadType::b11:
                emit_11(true);
                break;
            case BeadType::b21: {
                const int n1 = tokens_per_sentence(rng), n2 = tokens_per_sentence(rng);
                const std::size_t sx1 = new_x_sentence(n1);
                const std::size_t sx2 = new_x_sentence(n2);
                const std::size_t sy = new_y_sentence(n1 + n2);
                translate_into(sx1, sy, 0);
                translate_into(sx2, sy, static_cast<std::size_t>(n1));
                fill_noise_x(sx1);
                fill_noise_x(sx2);
                fill_noise_y(sy);
                planned_blocks.push_back(PlannedBlock{sx1, 2, sy, 1});
                break;
            }
            case BeadType::b12: {
                const int n1 = tokens_per_sentence(rng), n2 = tokens_per_sentence(rng);
                const std::size_t sx = new_x_sentence(n1 + n2);
                const std::size_t sy1 = new_y_sentence(n1);
                const std::size_t sy2 = new_y_sentence(n2);
                for (int t = 0; t < n1; ++t)
                    if (unit(rng) < spec.cognate_density)
                        link_pair(xs[sx].slots[static_cast<std::size_t>(t)],
                                  ys[sy1].slots[static_cast<std::size_t>(t)]);
                for (int t = 0; t < n2; ++t)
                    if (unit(rng) < spec.cognate_density)
                        link_pair(xs[sx].slots[static_cast<std::size_t>(n1 + t)],
                                  ys[sy2].slots[static_cast<std::size_t>(t)]);
                fill_noise_x(sx);
                fill_noise_y(sy1);
                fill_noise_y(sy2);
                planned_blocks.push_back(PlannedBlock{sx, 1, sy1, 2});
                break;
            }
            case BeadType::b22: {
                // Crossed pair with strongly unequal lengths so the length
                // model cannot mistake it for two 1-1 beads.
                const int n_small = spec.min_tokens;
                const int n_large = std::max(spec.max_tokens, spec.min_tokens * 3);
                const std::size_t sx1 = new_x_sentence(n_small);
                const std::size_t sx2 = new_x_sentence(n_large);
                const std::size_t sy1 = new_y_sentence(n_large);
                const std::size_t sy2 = new_y_sentence(n_small);
                translate_into(sx2, sy1, 0);
                translate_into(sx1, sy2, 0);
                fill_noise_x(sx1);
                fill_noise_x(sx2);
                fill_noise_y(sy1);
                fill_noise_y(sy2);
                planned_blocks.push_back(PlannedBlock{sx1, 2, sy1, 2});
                break;
            }
            case BeadType::b10: {
                const std::size_t sx = new_x_sentence(tokens_per_sentence(rng));
                fill_noise_x(sx);
                planned_blocks.push_back(PlannedBlock{sx, 1, ys.size(), 0});
                break;
            }
            case BeadType::b01: {
                const std::size_t sy = new_y_sentence(tokens_per_sentence(rng));
                fill_noise_y(sy);
                planned_blocks.push_back(PlannedBlock{xs.size(), 0, sy, 1});
                break;
            }
        }
    }
    // Events scheduled at the very end of the bead sequence.
    for (; next_event < events.size(); ++next_event) {
        if (events[next_event].kind == 0)
            run_omission(spec.omissions[events[next_event].index]);
        else if (events[next_event].kind == 1)
            run_inversion(spec.inversions[events[next_event].index]);
        else
            run_stretch(spec.stretches[events[next_event].index]);
    }

    // Local word-order variation: swap adjacent y slots where at least one
    // is linked.
    for (auto& s : ys) {
        for (std::size_t t = 0; t + 1 < s.slots.size(); ++t) {
            if (s.slots[t].link == -1 && s.slots[t + 1].link == -1) continue;
            if (unit(rng) < spec.swap_rate) std::swap(s.slots[t], s.slots[t + 1]);
        }
    }

    // Stray noise: unlinked y slots borrow the (perturbed) form of random x
    // slots, creating false shared forms off the true map.
    std::size_t total_x_slots = 0;
    for (const auto& s : xs) total_x_slots += s.slots.size();
    if (spec.stray_rate > 0 && total_x_slots > 0 && !ys.empty()) {
        const std::size_t strays =
            static_cast<std::size_t>(spec.stray_rate * static_cast<double>(total_x_slots));
        std::uniform_int_distribution<std::size_t> xs_i(0, xs.size() - 1);
        std::uniform_int_distribution<std::size_t> ys_i(0, ys.size() - 1);
        for (std::size_t s = 0; s < strays; ++s) {
            Sentence& fx = xs[xs_i(rng)];
            Sentence& fy = ys[ys_i(rng)];
            if (fx.slots.empty() || fy.slots.empty()) continue;
            std::uniform_int_distribution<std::size_t> si(0, fx.slots.size() - 1);
            std::uniform_int_distribution<std::size_t> ti(0, fy.slots.size() - 1);
            const Slot& from = fx.slots[si(rng)];
            Slot& to = fy.slots[ti(rng)];
            if (to.link != -1) continue;
            to.form = perturb(from.form, spec.perturbation, rng);
        }
    }

    // Frequent-token rows and columns: concentrated repetitions of a shared
    // type on the x axis with a couple of twins on the y axis.
    if (spec.frequent_types > 0 && spec.frequent_rate > 0 && xs.size() > 12) {
        std::uniform_int_distribution<std::size_t> region_i(0, xs.size() - 12);
        for (const auto& ft : frequent) {
            const std::size_t begin = region_i(rng);
            for (std::size_t s = begin; s < std::min(begin + 12, xs.size()); ++s) {
                if (unit(rng) < spec.frequent_rate) xs[s].slots.push_back(Slot{ft, -1});
            }
            for (std::size_t s = begin; s < std::min(begin + 3, ys.size()); ++s) {
                ys[s].slots.push_back(Slot{ft, -1});
            }
        }
    }

    // Phase 2: lay out the text and resolve link ids to coordinates.
    SyntheticBitext out;
    std::vector<double> x_link_pos(static_cast<std::size_t>(next_link), -1.0);
    std::vector<double> y_link_pos(static_cast<std::size_t>(next_link), -1.0);
    std::vector<std::size_t> y_planning_to_emitted(ys.size(), 0);

    double token_chars = 0;
    std::size_t token_count = 0;
    auto layout = [&](const Sentence& s, std::u32string& text, std::vector<double>& bounds,
                      std::vector<double>& link_pos) {
        for (const Slot& slot : s.slots) {
            Token t;
            t.start = text.size();
            t.length = slot.form.size();
            text += slot.form;
            text.push_back(U' ');
            if (slot.link >= 0) link_pos[static_cast<std::size_t>(slot.link)] = t.mean_pos();
            token_chars += static_cast<double>(t.length);
            ++token_count;
        }
        text.back() = U'.';
        text.push_back(U' ');
        bounds.push_back(static_cast<double>(text.size()));
    };

    for (const Sentence& s : xs) layout(s, out.x_text, out.x_bounds, x_link_pos);
    out.mean_token_len_x = token_count ? token_chars / static_cast<double>(token_count) : 0.0;

    token_chars = 0;
    token_count = 0;
    for (std::size_t order = 0; order < y_order.size(); ++order) {
        y_planning_to_emitted[y_order[order]] = order;
        layout(ys[y_order[order]], out.y_text, out.y_bounds, y_link_pos);
    }
    out.mean_token_len_y = token_count ? token_chars / static_cast<double>(token_count) : 0.0;

    out.space = BitextSpace{static_cast<double>(out.x_text.size()),
                            static_cast<double>(out.y_text.size())};
    out.x_utf8 = encode_utf8(out.x_text);
    out.y_utf8 = encode_utf8(out.y_text);

    for (long id = 0; id < next_link; ++id) {
        const double px = x_link_pos[static_cast<std::size_t>(id)];
        const double py = y_link_pos[static_cast<std::size_t>(id)];
        if (px < 0 || py < 0) continue;
        out.planted_tpcs.push_back(Point{px, py, 0, 0});
    }
    std::sort(out.planted_tpcs.begin(), out.planted_tpcs.end(),
              [](const Point& a, const Point& b) { return a.x < b.x; });
    out.planted_tbm = build_map_from_points(out.planted_tpcs, out.space);

    // Alignment blocks, translated from planning order to emission order.
    out.planted_alignment.x_sentences = xs.size();
    out.planted_alignment.y_sentences = ys.size();
    for (const PlannedBlock& pb : planned_blocks) {
        AlignedBlock b;
        b.x = IndexRange{pb.x_begin, pb.x_count};
        std::size_t y_begin = pb.y_begin;
        if (pb.y_count > 0) {
            y_begin = y_planning_to_emitted[pb.y_begin];
            for (std::size_t i = 1; i < pb.y_count; ++i)
                y_begin = std::min(y_begin, y_planning_to_emitted[pb.y_begin + i]);
        } else if (y_begin < ys.size()) {
            y_begin = y_planning_to_emitted[y_begin];
        } else {
            y_begin = ys.size();
        }
        b.y = IndexRange{y_begin, pb.y_count};
        b.from_points = true;
        out.planted_alignment.blocks.push_back(b);
    }
    std::sort(out.planted_alignment.blocks.begin(), out.planted_alignment.blocks.end(),
              [](const AlignedBlock& a, const AlignedBlock& b) {
                  if (a.x.begin != b.x.begin) return a.x.begin < b.x.begin;
                  return a.y.begin < b.y.begin;
              });

    for (const auto& [axis, range] : omission_ranges) {
        GapEntry e;
        e.axis = axis;
        if (axis == GapAxis::y) {
            const std::size_t first_emitted = y_planning_to_emitted[range.first];
            e.start = first_emitted ? out.y_bounds[first_emitted - 1] : 0.0;
            e.end = out.y_bounds[y_planning_to_emitted[range.second - 1]];
        } else {
            e.start = range.first ? out.x_bounds[range.first - 1] : 0.0;
            e.end = out.x_bounds[range.second - 1];
        }
        out.planted_omissions.push_back(e);
    }

    for (const auto& [xb, xe] : stretch_x_ranges) {
        GapRect r;
        r.x0 = xb ? out.x_bounds[xb - 1] : 0.0;
        r.x1 = out.x_bounds[xe - 1];
        // Stretch spans are never reordered; their y sentences are the same
        // planning range.
        for (const PlannedBlock& pb : planned_blocks) {
            if (pb.x_begin == xb && pb.x_count == 1) {
                const std::size_t yb = y_planning_to_emitted[pb.y_begin];
                r.y0 = yb ? out.y_bounds[yb - 1] : 0.0;
            }
            if (pb.x_begin + pb.x_count == xe && pb.y_count == 1) {
                r.y1 = out.y_bounds[y_planning_to_emitted[pb.y_begin + pb.y_count - 1]];
            }
        }
        out.planted_stretches.push_back(r);
    }

    for (const auto& [yb, ye] : inversion_y_ranges) {
        for (const PlannedBlock& pb : planned_blocks) {
            if (pb.y_begin != yb || pb.y_begin + pb.y_count != ye || pb.y_count == 0) continue;
            GapRect r;
            r.x0 = pb.x_begin ? out.x_bounds[pb.x_begin - 1] : 0.0;
            r.x1 = out.x_bounds[pb.x_begin + pb.x_count - 1];
            std::size_t e_begin = y_planning_to_emitted[yb];
            std::size_t e_end = e_begin;
            for (std::size_t i = yb; i < ye; ++i) {
                e_begin = std::min(e_begin, y_planning_to_emitted[i]);
                e_end = std::max(e_end, y_planning_to_emitted[i]);
            }
            r.y0 = e_begin ? out.y_bounds[e_begin - 1] : 0.0;
            r.y1 = out.y_bounds[e_end];
            out.planted_inversions.push_back(r);
            break;
        }
    }

    return out;
}

}  // namespace bimap
