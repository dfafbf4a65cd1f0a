#include "bimap/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bimap {

namespace {

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }
int clamp_int(int v, int lo, int hi) { return std::min(std::max(v, lo), hi); }

// Continuous steps shrink with `scale` as the system cools; integer
// parameters always move by one.
TunableParams propose(const TunableParams& s, const TunableBounds& b, std::mt19937_64& rng,
                      double scale = 1.0) {
    TunableParams next = s;
    std::uniform_int_distribution<int> which(0, 4);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> step(0, 1);
    switch (which(rng)) {
        case 0:
            next.max_point_dispersal = clamp(s.max_point_dispersal + unit(rng) * scale * b.dispersal_step,
                                             b.dispersal_lo, b.dispersal_hi);
            break;
        case 1:
            next.max_angle_deviation = clamp(s.max_angle_deviation + unit(rng) * scale * b.angle_step,
                                             b.angle_lo, b.angle_hi);
            break;
        case 2:
            next.max_pal = clamp_int(s.max_pal + (step(rng) ? 1 : -1), b.max_pal_lo, b.max_pal_hi);
            break;
        case 3:
            next.lcsr_threshold =
                clamp(s.lcsr_threshold + unit(rng) * scale * b.lcsr_step, b.lcsr_lo, b.lcsr_hi);
            break;
        default:
            next.chain_size = clamp_int(s.chain_size + (step(rng) ? 1 : -1), b.chain_size_lo, b.chain_size_hi);
            break;
    }
    return next;
}

}  // namespace

AnnealResult anneal(const std::function<double(const TunableParams&)>& objective,
                    const TunableParams& initial, const AnnealSchedule& schedule,
                    const TunableBounds& bounds, std::uint64_t seed) {
    AnnealResult result;
    result.best = initial;
    if (schedule.temperature_levels <= 0 || schedule.steps_per_temp <= 0) return result;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    TunableParams current = initial;
    double current_obj = objective(current);
    ++result.evaluations;
    result.best_objective = current_obj;
    result.accepted_objectives.push_back(current_obj);

    double temp = schedule.start_temp;
    if (temp < 0.0) {
        // Calibrate so a typical uphill move is accepted with p ~ 0.8.
        double uphill = 0.0;
        int uphill_n = 0;
        for (int i = 0; i < 16; ++i) {
            const double obj = objective(propose(current, bounds, rng));
            ++result.evaluations;
            if (std::isfinite(obj) && obj > current_obj) {
                uphill += obj - current_obj;
                ++uphill_n;
            }
        }
        const double mean_uphill = uphill_n ? uphill / uphill_n : std::abs(current_obj) + 1.0;
        temp = std::max(mean_uphill, 1e-12) / -std::log(0.8);
    }

    const double initial_temp = temp;
    for (int level = 0; level < schedule.temperature_levels; ++level) {
        const double scale =
            initial_temp > 0 ? std::min(1.0, std::max(0.05, std::sqrt(temp / initial_temp))) : 1.0;
        for (int s = 0; s < schedule.steps_per_temp; ++s) {
            const TunableParams cand = propose(current, bounds, rng, scale);
            const double obj = objective(cand);
            ++result.evaluations;
            if (!std::isfinite(obj)) continue;
            const double delta = obj - current_obj;
            bool accept;
            if (delta <= 0.0) {
                accept = true;
            } else if (temp <= 0.0) {
                accept = false;
            } else {
                accept = coin(rng) < std::exp(-delta / temp);
            }
            if (accept) {
                current = cand;
                current_obj = obj;
                result.accepted_objectives.push_back(obj);
                if (obj < result.best_objective) {
                    result.best = cand;
                    result.best_objective = obj;
                }
            }
        }
        temp *= schedule.cooling;
    }
    return result;
}

}  // namespace bimap
