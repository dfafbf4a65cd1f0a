#pragma once

#include <cstdint>
#include <functional>
#include <vector>

// Simulated annealing over the full tunable parameter tuple, minimizing a
// caller-supplied objective (typically RMS map error on a dev bitext).

namespace bimap {

struct TunableParams {
    double max_point_dispersal = 10.0;
    double max_angle_deviation = 10.0;
    int max_pal = 5;
    double lcsr_threshold = 0.70;
    int chain_size = 7;
};

struct TunableBounds {
    double dispersal_lo = 0.5, dispersal_hi = 60.0;
    double angle_lo = 4.0, angle_hi = 45.0;
    int max_pal_lo = 0, max_pal_hi = 30;
    double lcsr_lo = 0.4, lcsr_hi = 0.95;
    int chain_size_lo = 6, chain_size_hi = 9;
    // Proposal step sizes for the continuous parameters; integers move ±1.
    double dispersal_step = 2.0;
    double angle_step = 2.0;
    double lcsr_step = 0.04;
};

struct AnnealSchedule {
    double start_temp = -1;  // < 0: calibrated so initial uphill acceptance is ~0.8
    double cooling = 0.95;   // geometric
    int steps_per_temp = 50;
    int temperature_levels = 60;
};

struct AnnealResult {
    TunableParams best;
    double best_objective = 0;
    int evaluations = 0;
    std::vector<double> accepted_objectives;  // objective after each accepted move
};

// Standard Metropolis annealing; deterministic for a fixed seed. Proposals
// with non-finite objective values are rejected outright. With
// temperature_levels == 0 the initial parameters are returned unevaluated;
// with start_temp == 0 only downhill moves are accepted (greedy descent).
AnnealResult anneal(const std::function<double(const TunableParams&)>& objective,
                    const TunableParams& initial, const AnnealSchedule& schedule,
                    const TunableBounds& bounds, std::uint64_t seed);

}  // namespace bimap
