#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kvqe/rng.hpp"

namespace kvqe {

// Wraps the raw objective with an evaluation counter and a deterministic
// per-evaluation seed schedule: evaluation k receives derive_seed(base, k).
class ObjectiveEvaluator {
public:
    using Fn = std::function<double(std::span<const double>, std::uint64_t eval_seed)>;

    ObjectiveEvaluator(Fn fn, std::uint64_t seed_base)
        : fn_(std::move(fn)), seed_base_(seed_base) {}

    double operator()(std::span<const double> params) {
        return fn_(params, derive_seed(seed_base_, count_++));
    }

    std::uint64_t evaluations() const { return count_; }

private:
    Fn fn_;
    std::uint64_t seed_base_;
    std::uint64_t count_ = 0;
};

struct OptimizerState {
    std::vector<double> params;
    double best_energy = 0.0;
    int cycle = 0;
    // cached objective value at `params`; NFT reuses it so a sweep costs
    // two new evaluations per parameter
    double current_energy = 0.0;
    bool have_current = false;
};

enum class OptimizerKind { NFT, SPSA };

struct SpsaGains {
    double a = 0.2;
    double c = 0.1;
    double stability = 10.0;  // the A offset
    double alpha = 0.602;
    double gamma = 0.101;
};

// One full sequential sweep: for each parameter, probe theta +- pi/2,
// solve the sinusoid a + b cos(theta - phi) in closed form and jump to
// its minimum phi + pi. Flat directions (b ~ 0) are left unchanged.
void nft_sweep(OptimizerState& state, ObjectiveEvaluator& eval);

// One SPSA iteration (exactly two evaluations) with Rademacher
// perturbations drawn from `rng`.
void spsa_step(OptimizerState& state, ObjectiveEvaluator& eval, const SpsaGains& gains, Rng& rng);

struct OptimizerRun {
    OptimizerState state;
    std::vector<double> history;  // one measured energy per cycle
};

// Callback returns false to terminate early (the controller's hook).
using CycleCallback = std::function<bool(int cycle, double energy)>;

OptimizerRun run_optimizer(OptimizerKind kind, int max_cycles, OptimizerState init,
                           ObjectiveEvaluator& eval, const CycleCallback& callback = {},
                           const SpsaGains& gains = {}, std::uint64_t spsa_seed = 0);

}  // namespace kvqe
