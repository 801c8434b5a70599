#include "kvqe/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace kvqe {

namespace {
constexpr double pi = 3.14159265358979323846;

double wrap_angle(double t) {
    t = std::fmod(t + pi, 2 * pi);
    if (t < 0) t += 2 * pi;
    return t - pi;
}
}  // namespace

void nft_sweep(OptimizerState& state, ObjectiveEvaluator& eval) {
    if (!state.have_current) {
        state.current_energy = eval(state.params);
        state.have_current = true;
    }
    for (std::size_t i = 0; i < state.params.size(); ++i) {
        const double theta0 = state.params[i];
        state.params[i] = theta0 + pi / 2;
        const double e_plus = eval(state.params);
        state.params[i] = theta0 - pi / 2;
        const double e_minus = eval(state.params);

        // E(theta) = a + b cos(theta - phi):
        //   a            = (E+ + E-)/2
        //   b cos(delta) = E0 - a,  b sin(delta) = (E- - E+)/2,
        // with delta = theta0 - phi.
        const double a = 0.5 * (e_plus + e_minus);
        const double b_cos = state.current_energy - a;
        const double b_sin = 0.5 * (e_minus - e_plus);
        const double b = std::hypot(b_cos, b_sin);
        if (b < 1e-12 * (1.0 + std::abs(a))) {
            state.params[i] = theta0;  // flat direction
            continue;
        }
        const double phi = theta0 - std::atan2(b_sin, b_cos);
        state.params[i] = wrap_angle(phi + pi);
        state.current_energy = a - b;
    }
}

void spsa_step(OptimizerState& state, ObjectiveEvaluator& eval, const SpsaGains& gains, Rng& rng) {
    const int k = state.cycle;
    const double ak = gains.a / std::pow(k + 1 + gains.stability, gains.alpha);
    const double ck = gains.c / std::pow(k + 1, gains.gamma);

    std::vector<double> delta(state.params.size());
    for (auto& d : delta) d = rng.bernoulli(0.5) ? 1.0 : -1.0;

    std::vector<double> probe = state.params;
    for (std::size_t i = 0; i < probe.size(); ++i) probe[i] += ck * delta[i];
    const double e_plus = eval(probe);
    for (std::size_t i = 0; i < probe.size(); ++i) probe[i] = state.params[i] - ck * delta[i];
    const double e_minus = eval(probe);

    const double diff = (e_plus - e_minus) / (2.0 * ck);
    for (std::size_t i = 0; i < state.params.size(); ++i) {
        state.params[i] -= ak * diff / delta[i];
    }
    state.current_energy = std::min(e_plus, e_minus);
    state.have_current = true;
}

OptimizerRun run_optimizer(OptimizerKind kind, int max_cycles, OptimizerState init,
                           ObjectiveEvaluator& eval, const CycleCallback& callback,
                           const SpsaGains& gains, std::uint64_t spsa_seed) {
    if (max_cycles < 1) throw std::invalid_argument("max_cycles must be at least 1");
    OptimizerRun run;
    run.state = std::move(init);
    Rng rng(derive_seed(spsa_seed, 0x5b5a));

    for (int cycle = 0; cycle < max_cycles; ++cycle) {
        double energy;
        if (kind == OptimizerKind::NFT) {
            nft_sweep(run.state, eval);
            // one fresh measurement at the updated point closes the cycle
            energy = eval(run.state.params);
            run.state.current_energy = energy;
            run.state.have_current = true;
        } else {
            spsa_step(run.state, eval, gains, rng);
            energy = run.state.current_energy;
        }
        run.state.cycle = cycle + 1;
        if (cycle == 0 || energy < run.state.best_energy) run.state.best_energy = energy;
        run.history.push_back(energy);
        if (callback && !callback(cycle, energy)) break;
    }
    return run;
}

}  // namespace kvqe
