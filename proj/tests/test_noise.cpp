#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "kvqe/circuit.hpp"
#include "kvqe/lattice.hpp"
#include "kvqe/noise.hpp"
#include "kvqe/pauli.hpp"
#include "kvqe/statevector.hpp"

using namespace kvqe;
constexpr double pi = std::numbers::pi;

namespace {

ParamCircuit empty_circuit(int n) {
    ParamCircuit c;
    c.n_qubits = n;
    c.n_params = 0;
    return c;
}

}  // namespace

TEST_CASE("noise model validation") {
    NoiseModel m;
    m.validate();
    m.p_cx = -0.1;
    CHECK_THROWS(m.validate());
    m = NoiseModel{0.0, 1.5};
    CHECK_THROWS(m.validate());
    CHECK(NoiseModel::noiseless().p_cx == 0.0);
    CHECK(NoiseModel::noiseless().p_readout == 0.0);
}

TEST_CASE("noiseless Z measurement of |0...0> is all zeros") {
    const auto counts =
        run_noisy_shots(empty_circuit(4), {}, 'Z', NoiseModel::noiseless(), 200, 1);
    CHECK(counts.shots == 200);
    REQUIRE(counts.histogram.size() == 1);
    CHECK(counts.histogram.at("0000") == 200);
}

TEST_CASE("p_readout = 0.5 scrambles every bit") {
    NoiseModel m{0.0, 0.5};
    const auto counts = run_noisy_shots(empty_circuit(2), {}, 'Z', m, 40000, 3);
    // each of the four outcomes should appear with rate ~1/4
    for (const auto& key : {"00", "01", "10", "11"}) {
        const double rate = counts.histogram.at(key) / 40000.0;
        CHECK(rate == doctest::Approx(0.25).epsilon(0.05));
    }
}

TEST_CASE("p_readout = 0.1 flips |0> at the advertised rate") {
    NoiseModel m{0.0, 0.1};
    const auto counts = run_noisy_shots(empty_circuit(1), {}, 'Z', m, 100000, 4);
    const double rate = counts.histogram.at("1") / 100000.0;
    // 5 sigma band around 0.1 with n = 1e5
    CHECK(std::abs(rate - 0.1) < 5.0 * std::sqrt(0.1 * 0.9 / 100000.0));
}

TEST_CASE("X basis change converts |+> into deterministic 0") {
    // RY(pi/2)|0> = |+>; measuring X must give +1 (bit 0) always.
    ParamCircuit c;
    c.n_qubits = 1;
    c.n_params = 1;
    c.gates = {{GateKind::RY, 0, -1, 0}};
    const std::vector<double> params{pi / 2};
    const auto counts = run_noisy_shots(c, params, 'X', NoiseModel::noiseless(), 500, 5);
    REQUIRE(counts.histogram.size() == 1);
    CHECK(counts.histogram.at("0") == 500);
}

TEST_CASE("Y basis change measures RX(-pi/2)|0> as deterministic +1") {
    // RX(-pi/2)|0> = (|0> + i|1>)/sqrt2, the +1 eigenstate of Y.
    ParamCircuit c;
    c.n_qubits = 1;
    c.n_params = 3;
    // RZ(-pi/2) RY(-pi/2) RZ(pi/2) = RX(-pi/2)
    c.gates = {{GateKind::RZ, 0, -1, 0}, {GateKind::RY, 0, -1, 1}, {GateKind::RZ, 0, -1, 2}};
    const std::vector<double> params{pi / 2, -pi / 2, -pi / 2};
    const auto counts = run_noisy_shots(c, params, 'Y', NoiseModel::noiseless(), 500, 6);
    REQUIRE(counts.histogram.size() == 1);
    CHECK(counts.histogram.at("0") == 500);
}

TEST_CASE("shot sampling is deterministic per seed, byte for byte") {
    const auto c = efficient_su2(5, 1);
    const auto params = init_params(c.n_params, 99);
    NoiseModel m{0.02, 0.04};
    const auto a = run_noisy_shots(c, params, 'Z', m, 2000, 1234);
    const auto b = run_noisy_shots(c, params, 'Z', m, 2000, 1234);
    const auto d = run_noisy_shots(c, params, 'Z', m, 2000, 1235);
    CHECK(a.histogram == b.histogram);
    CHECK(a.histogram != d.histogram);
    std::uint64_t total = 0;
    for (const auto& [k, v] : a.histogram) {
        CHECK(static_cast<int>(k.size()) == 5);
        total += v;
    }
    CHECK(total == 2000);
}

TEST_CASE("parity expectation of explicit histograms") {
    IndexedCounts ic;
    ic.n_bits = 2;
    ic.shots = 4;
    ic.entries = {{0, 1}, {1, 1}, {2, 1}, {3, 1}};
    CHECK(parity_expectation(ic, "ZZ") == doctest::Approx(0.0));
    CHECK(parity_expectation(ic, "IZ") == doctest::Approx(0.0));

    IndexedCounts skew;
    skew.n_bits = 2;
    skew.shots = 4;
    skew.entries = {{0, 3}, {3, 1}};
    CHECK(parity_expectation(skew, "ZZ") == doctest::Approx(1.0));
    CHECK(parity_expectation(skew, "IZ") == doctest::Approx(0.5));
}

TEST_CASE("index_to_bits uses label ordering") {
    CHECK(index_to_bits(0, 3) == "000");
    CHECK(index_to_bits(1, 3) == "001");  // qubit 0 is the rightmost char
    CHECK(index_to_bits(4, 3) == "100");
    CHECK(index_to_bits(6, 4) == "0110");
}

TEST_CASE("sampled energy converges to the exact expectation") {
    const auto g = build_kagome_unit_cell();
    const auto h = build_heisenberg(g, QubitMapping::identity(12, 12), 1.0);
    const auto c = efficient_su2(12, 1);
    const auto params = init_params(c.n_params, 2024);

    StateVector st(12);
    st.apply(c.bind(params));
    const double exact = exact_expectation(st, h);

    const std::uint64_t shots = 20000;
    const double sampled =
        estimate_energy(c, params, h, NoiseModel::noiseless(), shots, 777);
    // 54 unit-coefficient terms, each variance <= 1/shots: 5 sigma bound
    const double sigma = std::sqrt(54.0 / static_cast<double>(shots));
    CHECK(std::abs(sampled - exact) < 5.0 * sigma);
}

TEST_CASE("energy estimate scales linearly in J at fixed seed") {
    const auto g = build_kagome_unit_cell();
    const auto h1 = build_heisenberg(g, QubitMapping::identity(12, 12), 1.0);
    const auto h2 = h1.with_uniform_interaction(1.3);
    const auto c = efficient_su2(12, 1);
    const auto params = init_params(c.n_params, 31);

    NoiseModel m{0.01, 0.02};
    const double e1 = estimate_energy(c, params, h1, m, 512, 900);
    const double e2 = estimate_energy(c, params, h2, m, 512, 900);
    // same seed, same trajectories: identical parities, scaled weights
    CHECK(e2 == doctest::Approx(1.3 * e1).epsilon(1e-12));
}

TEST_CASE("cx noise spreads outcomes across trajectories") {
    // A bare CX on |00> is a no-op; with p_cx = 1 every shot suffers a
    // random two-qubit Pauli, so non-"00" outcomes must appear.
    ParamCircuit c;
    c.n_qubits = 2;
    c.n_params = 0;
    c.gates = {{GateKind::CX, 0, 1, -1}};
    NoiseModel m{1.0, 0.0};
    const auto counts = run_noisy_shots(c, {}, 'Z', m, 3000, 8);
    CHECK(counts.histogram.size() > 1);
    // 12 of 15 Paulis move |00> off itself: rate of "00" ~ 1/5 + 2/15
    const double stay = counts.histogram.count("00") ? counts.histogram.at("00") / 3000.0 : 0.0;
    CHECK(stay < 0.5);
    CHECK(stay > 0.1);
}

TEST_CASE("readout twirl does not bias the Z parity") {
    const auto c = efficient_su2(3, 1);
    const auto params = init_params(c.n_params, 64);
    StateVector st(3);
    st.apply(c.bind(params));
    const double exact = exact_expectation(st, "IZZ");

    const auto bound = c.bind(params);
    const auto ic = run_noisy_shots_indexed(bound, 3, 'Z', NoiseModel::noiseless(), 60000,
                                            4242, /*readout_twirl=*/true);
    CHECK(std::abs(parity_expectation(ic, "IZZ") - exact) < 5.0 / std::sqrt(60000.0));
}
