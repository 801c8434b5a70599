#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "kvqe/exact.hpp"
#include "kvqe/lattice.hpp"
#include "kvqe/pauli.hpp"

using namespace kvqe;

namespace {

PauliSum heisenberg_on(const LatticeGraph& g, int n_qubits, double j = 1.0) {
    return build_heisenberg(g, QubitMapping::identity(g.n_sites, n_qubits), j);
}

}  // namespace

TEST_CASE("single edge has ground-state energy -3 (singlet)") {
    LatticeGraph g;
    g.n_sites = 2;
    g.edges = {{0, 1}};
    const auto r = ground_state_energy(heisenberg_on(g, 2), 2);
    CHECK(r.energy == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(r.method == EigsMethod::Dense);
    CHECK(r.dimension == 4);
    CHECK(r.residual_norm < 1e-10);
}

TEST_CASE("triangle is frustrated: E_gs = -3") {
    // H = 2 S_tot^2 - 9/2 in Pauli units; the S_tot = 1/2 doublet gives -3.
    LatticeGraph g;
    g.n_sites = 3;
    g.edges = {{0, 1}, {1, 2}, {0, 2}};
    const auto r = ground_state_energy(heisenberg_on(g, 3), 3);
    CHECK(r.energy == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("4-site open chain: dense and Lanczos agree") {
    LatticeGraph g;
    g.n_sites = 4;
    g.edges = {{0, 1}, {1, 2}, {2, 3}};
    const auto dense = ground_state_energy(heisenberg_on(g, 4), 4, EigsMethod::Dense);
    const auto lanczos = ground_state_energy(heisenberg_on(g, 4), 4, EigsMethod::Lanczos);
    CHECK(dense.energy == doctest::Approx(lanczos.energy).epsilon(1e-9));
    CHECK(lanczos.residual_norm < 1e-7);
}

TEST_CASE("kagome unit cell ground state is -18 (golden value)") {
    const auto g = build_kagome_unit_cell();
    const auto h = heisenberg_on(g, 12);

    const auto dense = ground_state_energy(h, 12, EigsMethod::Lanczos);
    CHECK(dense.energy == doctest::Approx(-18.0).epsilon(1e-9));
    CHECK(dense.residual_norm < 1e-6);

    const auto sector = ground_state_energy_sz0(h, 12);
    CHECK(sector.energy == doctest::Approx(-18.0).epsilon(1e-9));
    CHECK(sector.dimension == 924);
}

TEST_CASE("idle register qubits do not change the spectrum") {
    const auto g = build_kagome_unit_cell();
    const auto h16 = heisenberg_on(g, 16);
    const auto r = ground_state_energy(h16, 12, EigsMethod::Lanczos);
    CHECK(r.energy == doctest::Approx(-18.0).epsilon(1e-9));
}

TEST_CASE("ground-state energy scales linearly in J") {
    const auto g = build_kagome_unit_cell();
    for (double j : {0.5, 1.3, 2.0}) {
        const auto r = ground_state_energy(heisenberg_on(g, 12, j), 12, EigsMethod::Lanczos);
        CHECK(r.energy == doctest::Approx(-18.0 * j).epsilon(1e-8));
    }
}

TEST_CASE("dense and Lanczos agree on the unit cell") {
    const auto g = build_kagome_unit_cell();
    const auto h = heisenberg_on(g, 12);
    const auto dense = ground_state_energy(h, 12, EigsMethod::Dense);
    const auto lanczos = ground_state_energy(h, 12, EigsMethod::Lanczos);
    CHECK(dense.method == EigsMethod::Dense);
    CHECK(dense.dimension == 4096);
    CHECK(dense.energy == doctest::Approx(lanczos.energy).epsilon(1e-9));
    CHECK(dense.residual_norm < 1e-8);
}

TEST_CASE("apply_pauli_sum is Hermitian-consistent") {
    LatticeGraph g;
    g.n_sites = 3;
    g.edges = {{0, 1}, {1, 2}};
    const auto h = heisenberg_on(g, 3);

    // <x|H y> == <H x|y> for random real test vectors
    std::vector<std::complex<double>> x(8), y(8), hx(8), hy(8);
    for (int i = 0; i < 8; ++i) {
        x[i] = std::complex<double>(std::sin(1.0 + i), std::cos(2.0 + 0.5 * i));
        y[i] = std::complex<double>(std::cos(0.3 * i), std::sin(0.7 * i - 1.0));
    }
    apply_pauli_sum(h, 3, x, hx);
    apply_pauli_sum(h, 3, y, hy);
    std::complex<double> a(0), b(0);
    for (int i = 0; i < 8; ++i) {
        a += std::conj(x[i]) * hy[i];
        b += std::conj(hx[i]) * y[i];
    }
    CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("relative_error examples") {
    CHECK(relative_error(-17.1, -18.0) == doctest::Approx(0.05));
    CHECK(relative_error(-18.0, -18.0) == doctest::Approx(0.0));
    CHECK(relative_error(-18.9, -18.0) == doctest::Approx(0.05));
    CHECK(relative_error(0.0, -18.0) == doctest::Approx(1.0));
    CHECK_THROWS(relative_error(1.0, 0.0));
}
