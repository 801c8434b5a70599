#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "kvqe/circuit.hpp"
#include "kvqe/lattice.hpp"
#include "kvqe/pauli.hpp"
#include "kvqe/rng.hpp"
#include "kvqe/statevector.hpp"

using namespace kvqe;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

// Brute-force Kronecker oracle: build the dense matrix of a Pauli string
// and contract <psi|P|psi> directly. Only sensible up to ~4 qubits.
double kron_expectation(const StateVector& st, const std::string& label) {
    const int n = st.n_qubits();
    const std::size_t dim = st.dim();
    const auto amp = st.amplitudes();
    cd acc(0.0, 0.0);
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t row = col;
        cd factor(1.0, 0.0);
        for (int q = 0; q < n; ++q) {
            const char p = label[label.size() - 1 - q];
            const bool bit = (col >> q) & 1;
            switch (p) {
                case 'I':
                    break;
                case 'X':
                    row ^= std::size_t{1} << q;
                    break;
                case 'Y':
                    row ^= std::size_t{1} << q;
                    factor *= bit ? cd(0.0, -1.0) : cd(0.0, 1.0);
                    break;
                case 'Z':
                    if (bit) factor = -factor;
                    break;
                default:
                    REQUIRE(false);
            }
        }
        acc += std::conj(amp[row]) * factor * amp[col];
    }
    CHECK(std::abs(acc.imag()) < 1e-12);
    return acc.real();
}

void random_circuit(StateVector& st, std::uint64_t seed, int depth = 30) {
    Rng rng(seed);
    const int n = st.n_qubits();
    for (int d = 0; d < depth; ++d) {
        const int kind = static_cast<int>(rng.below(3));
        const int q = static_cast<int>(rng.below(n));
        if (kind == 0) {
            st.rotate_y(q, rng.uniform() * 2 * pi - pi);
        } else if (kind == 1) {
            st.rotate_z(q, rng.uniform() * 2 * pi - pi);
        } else if (n > 1) {
            int t = static_cast<int>(rng.below(n - 1));
            if (t >= q) ++t;
            st.cnot(q, t);
        }
    }
}

}  // namespace

TEST_CASE("initial state is |0...0>") {
    StateVector st(3);
    CHECK(std::abs(st.amplitudes()[0] - cd(1.0, 0.0)) < 1e-15);
    CHECK(st.norm() == doctest::Approx(1.0));
    CHECK(exact_expectation(st, "IIZ") == doctest::Approx(1.0));
}

TEST_CASE("constructor bounds") {
    CHECK_THROWS(StateVector(0));
    CHECK_THROWS(StateVector(17));
    StateVector st(2);
    CHECK_THROWS(st.rotate_y(2, 0.1));
    CHECK_THROWS(st.cnot(0, 0));
}

TEST_CASE("ry rotates |0> into cos/sin superposition") {
    StateVector st(1);
    st.rotate_y(0, pi / 3);
    CHECK(st.amplitudes()[0].real() == doctest::Approx(std::cos(pi / 6)));
    CHECK(st.amplitudes()[1].real() == doctest::Approx(std::sin(pi / 6)));
    CHECK(exact_expectation(st, "Z") == doctest::Approx(std::cos(pi / 3)));
    CHECK(exact_expectation(st, "X") == doctest::Approx(std::sin(pi / 3)));
}

TEST_CASE("bell state correlators") {
    StateVector st(2);
    st.rotate_y(0, pi / 2);  // Hadamard up to phase on |0>
    st.cnot(0, 1);
    CHECK(exact_expectation(st, "XX") == doctest::Approx(1.0));
    CHECK(exact_expectation(st, "YY") == doctest::Approx(-1.0));
    CHECK(exact_expectation(st, "ZZ") == doctest::Approx(1.0));
    CHECK(exact_expectation(st, "ZI") == doctest::Approx(0.0));
    CHECK(exact_expectation(st, "IZ") == doctest::Approx(0.0));
}

TEST_CASE("single-qubit paulis act as expected") {
    StateVector st(2);
    st.pauli_x(0);
    CHECK(std::abs(st.amplitudes()[1] - cd(1.0, 0.0)) < 1e-15);
    st.pauli_z(0);
    CHECK(std::abs(st.amplitudes()[1] - cd(-1.0, 0.0)) < 1e-15);
    st.reset();
    st.pauli_y(1);
    CHECK(std::abs(st.amplitudes()[2] - cd(0.0, 1.0)) < 1e-15);
}

TEST_CASE("expectation matches the Kronecker-product oracle on random states") {
    const std::vector<std::string> labels{"XYZI", "ZZII", "IXIX", "YYYY", "IIIZ", "XXZZ"};
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        StateVector st(4);
        random_circuit(st, seed);
        CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (const auto& label : labels) {
            CHECK(exact_expectation(st, label) ==
                  doctest::Approx(kron_expectation(st, label)).epsilon(1e-10));
        }
    }
}

TEST_CASE("norm is preserved by long random circuits") {
    for (int n : {1, 3, 6, 10}) {
        StateVector st(n);
        random_circuit(st, 77 + n, 120);
        CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("probabilities sum to one") {
    StateVector st(5);
    random_circuit(st, 5150);
    std::vector<double> p(st.dim());
    st.probabilities(p);
    double total = 0.0;
    for (double x : p) {
        CHECK(x >= 0.0);
        total += x;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("heisenberg expectation is linear in J") {
    const auto g = build_kagome_unit_cell();
    const auto h1 = build_heisenberg(g, QubitMapping::identity(12, 12), 1.0);
    const auto h2 = h1.with_uniform_interaction(1.7);

    StateVector st(12);
    random_circuit(st, 4242, 60);
    const double e1 = exact_expectation(st, h1);
    const double e2 = exact_expectation(st, h2);
    CHECK(e2 == doctest::Approx(1.7 * e1).epsilon(1e-12));
}

TEST_CASE("heisenberg conserves total magnetization") {
    // [H, sum Z] = 0: <sum Z> before/after trotter-ish evolution built
    // only from the H terms would be conserved; here we check the cheap
    // consequence that H does not mix Sz sectors by verifying H|basis>
    // stays in the sector. Use exact_expectation of sum-Z on eigen-ish
    // random states evolved by circuit pieces commuting with sum Z.
    StateVector st(4);
    st.pauli_x(0);
    st.pauli_x(2);  // |0101>, Sz = 0 sector
    // ZZ rotations and swaps preserve magnetization
    st.cnot(0, 1);
    st.rotate_z(1, 0.8);
    st.cnot(0, 1);
    double sz = 0.0;
    for (const std::string& l : {"IIIZ", "IIZI", "IZII", "ZIII"}) {
        sz += exact_expectation(st, l);
    }
    CHECK(sz == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("apply(BoundGate) dispatches to the right operation") {
    StateVector a(3), b(3);
    std::vector<BoundGate> gates{
        {GateKind::RY, 0, -1, 0.3},
        {GateKind::RZ, 1, -1, -0.4},
        {GateKind::CX, 0, 2, 0.0},
    };
    a.apply(gates);
    b.rotate_y(0, 0.3);
    b.rotate_z(1, -0.4);
    b.cnot(0, 2);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        CHECK(std::abs(a.amplitudes()[i] - b.amplitudes()[i]) < 1e-15);
    }
}

TEST_CASE("label width must match the register") {
    StateVector st(3);
    CHECK_THROWS(exact_expectation(st, "ZZ"));
    CHECK_THROWS(exact_expectation(st, "QQQ"));
}
