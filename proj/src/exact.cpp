#include "kvqe/exact.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <lapacke.h>

#include "kvqe/rng.hpp"

namespace kvqe {

using cd = std::complex<double>;

double relative_error(double e, double e_gs) {
    if (e_gs == 0.0) throw std::invalid_argument("relative error undefined for E_gs = 0");
    return std::abs(e - e_gs) / std::abs(e_gs);
}

namespace {

struct TermMasks {
    double coeff;
    PauliMasks m;
};

std::vector<TermMasks> active_masks(const PauliSum& h, int active_qubits) {
    if (active_qubits < 1 || active_qubits > 16) {
        throw std::invalid_argument("active_qubits must be in 1..16");
    }
    const std::size_t active = (std::size_t{1} << active_qubits) - 1;
    std::vector<TermMasks> out;
    out.reserve(h.terms.size());
    for (const auto& t : h.terms) {
        const PauliMasks m = pauli_masks(t.label);
        if ((m.flip | m.phase) & ~active) {
            throw std::invalid_argument("Hamiltonian acts outside the active qubits");
        }
        out.push_back({t.coefficient, m});
    }
    return out;
}

constexpr cd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

bool is_real_matrix(const std::vector<TermMasks>& terms) {
    for (const auto& t : terms) {
        if (t.m.n_y % 2 != 0) return false;
    }
    return true;
}

}  // namespace

void apply_pauli_sum(const PauliSum& h, int active_qubits, std::span<const cd> x,
                     std::span<cd> y) {
    const auto terms = active_masks(h, active_qubits);
    const std::size_t dim = std::size_t{1} << active_qubits;
    if (x.size() != dim || y.size() != dim) throw std::invalid_argument("vector size mismatch");
    std::fill(y.begin(), y.end(), cd{0.0, 0.0});
    for (const auto& t : terms) {
        const cd pref = t.coeff * ipow[t.m.n_y & 3];
        for (std::size_t i = 0; i < dim; ++i) {
            const double sign = (std::popcount(i & t.m.phase) & 1) ? -1.0 : 1.0;
            y[i ^ t.m.flip] += pref * sign * x[i];
        }
    }
}

namespace {

GroundStateResult dense_ground_state(const PauliSum& h, int active_qubits) {
    const auto terms = active_masks(h, active_qubits);
    const std::size_t dim = std::size_t{1} << active_qubits;
    if (dim > 4096) throw std::invalid_argument("dense path limited to dimension 4096");
    if (!is_real_matrix(terms)) {
        throw std::invalid_argument("dense path requires a real-representable Hamiltonian");
    }

    std::vector<double> mat(dim * dim, 0.0);  // column-major
    for (const auto& t : terms) {
        const double pref = t.coeff * ((t.m.n_y % 4 == 2) ? -1.0 : 1.0);
        for (std::size_t i = 0; i < dim; ++i) {
            const double sign = (std::popcount(i & t.m.phase) & 1) ? -1.0 : 1.0;
            mat[i * dim + (i ^ t.m.flip)] += pref * sign;
        }
    }

    const lapack_int n = static_cast<lapack_int>(dim);
    std::vector<double> w(dim), z(dim);
    std::vector<lapack_int> isuppz(2);
    lapack_int m = 0;
    const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, mat.data(), n, 0,
                                           0, 1, 1, 0.0, &m, w.data(), z.data(), n,
                                           isuppz.data());
    if (info != 0 || m < 1) throw std::runtime_error("dsyevr failed");

    // residual of the returned eigenpair via the matrix-free product
    std::vector<cd> v(dim), hv(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = z[i];
    apply_pauli_sum(h, active_qubits, v, hv);
    double res = 0.0;
    for (std::size_t i = 0; i < dim; ++i) res += std::norm(hv[i] - w[0] * v[i]);

    return {w[0], std::sqrt(res), EigsMethod::Dense, dim};
}

GroundStateResult lanczos_ground_state(const PauliSum& h, int active_qubits) {
    const std::size_t dim = std::size_t{1} << active_qubits;
    const int max_krylov = static_cast<int>(std::min<std::size_t>(200, dim));
    const double ritz_tol = 1e-10;

    // fixed-seed random start vector
    Rng rng(0x6b61676f6d65ULL);
    std::vector<std::vector<cd>> basis;
    basis.emplace_back(dim);
    {
        double norm2 = 0.0;
        for (auto& a : basis[0]) {
            a = cd{rng.uniform() - 0.5, rng.uniform() - 0.5};
            norm2 += std::norm(a);
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& a : basis[0]) a *= inv;
    }

    std::vector<double> alpha, beta;
    std::vector<cd> w(dim);
    double theta = 0.0;
    Eigen::VectorXd ritz_vec;
    double scale = 1.0;
    for (const auto& t : h.terms) scale += std::abs(t.coefficient);

    for (int k = 0; k < max_krylov; ++k) {
        apply_pauli_sum(h, active_qubits, basis[k], w);
        cd a{0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) a += std::conj(basis[k][i]) * w[i];
        alpha.push_back(a.real());

        // full reorthogonalization against the whole basis
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& v : basis) {
                cd proj{0.0, 0.0};
                for (std::size_t i = 0; i < dim; ++i) proj += std::conj(v[i]) * w[i];
                for (std::size_t i = 0; i < dim; ++i) w[i] -= proj * v[i];
            }
        }
        double b2 = 0.0;
        for (const auto& x : w) b2 += std::norm(x);
        const double b = std::sqrt(b2);

        // Ritz values of the current tridiagonal
        const int kk = k + 1;
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(kk, kk);
        for (int i = 0; i < kk; ++i) tri(i, i) = alpha[i];
        for (int i = 0; i + 1 < kk; ++i) tri(i, i + 1) = tri(i + 1, i) = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
        theta = es.eigenvalues()(0);
        ritz_vec = es.eigenvectors().col(0);

        const double ritz_residual = b * std::abs(ritz_vec(kk - 1));
        if (ritz_residual < ritz_tol * scale || b < 1e-14 || k + 1 == max_krylov) break;

        beta.push_back(b);
        basis.emplace_back(dim);
        const double inv = 1.0 / b;
        for (std::size_t i = 0; i < dim; ++i) basis.back()[i] = w[i] * inv;
    }

    // assemble the Ritz vector and its explicit residual
    std::vector<cd> v(dim, cd{0.0, 0.0}), hv(dim);
    for (int j = 0; j < ritz_vec.size(); ++j) {
        const double c = ritz_vec(j);
        for (std::size_t i = 0; i < dim; ++i) v[i] += c * basis[j][i];
    }
    apply_pauli_sum(h, active_qubits, v, hv);
    double res = 0.0;
    for (std::size_t i = 0; i < dim; ++i) res += std::norm(hv[i] - theta * v[i]);

    return {theta, std::sqrt(res), EigsMethod::Lanczos, dim};
}

}  // namespace

GroundStateResult ground_state_energy(const PauliSum& h, int active_qubits,
                                      std::optional<EigsMethod> force) {
    const std::size_t dim = std::size_t{1} << active_qubits;
    const EigsMethod method =
        force.value_or(dim <= 4096 ? EigsMethod::Dense : EigsMethod::Lanczos);
    return method == EigsMethod::Dense ? dense_ground_state(h, active_qubits)
                                       : lanczos_ground_state(h, active_qubits);
}

GroundStateResult ground_state_energy_sz0(const PauliSum& h, int active_qubits) {
    if (active_qubits % 2 != 0) throw std::invalid_argument("sector path needs even qubit count");
    const auto terms = active_masks(h, active_qubits);
    if (!is_real_matrix(terms)) {
        throw std::invalid_argument("sector path requires a real-representable Hamiltonian");
    }
    for (const auto& t : terms) {
        // magnetization conservation needs bit flips to come in XX+YY pairs
        if (t.m.flip != 0 && std::popcount(t.m.flip) != 2) {
            throw std::invalid_argument("sector path supports 2-local flip terms only");
        }
    }

    const std::size_t dim = std::size_t{1} << active_qubits;
    std::vector<std::uint32_t> states;
    std::unordered_map<std::uint32_t, int> rank;
    for (std::uint32_t s = 0; s < dim; ++s) {
        if (std::popcount(s) == active_qubits / 2) {
            rank[s] = static_cast<int>(states.size());
            states.push_back(s);
        }
    }
    const int sdim = static_cast<int>(states.size());

    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(sdim, sdim);
    for (const auto& t : terms) {
        const double pref = t.coeff * ((t.m.n_y % 4 == 2) ? -1.0 : 1.0);
        for (int col = 0; col < sdim; ++col) {
            const std::uint32_t s = states[col];
            const std::uint32_t img = s ^ static_cast<std::uint32_t>(t.m.flip);
            const auto it = rank.find(img);
            if (it == rank.end()) continue;  // leaves the sector: XX and YY parts cancel
            const double sign = (std::popcount(s & static_cast<std::uint32_t>(t.m.phase)) & 1)
                                    ? -1.0
                                    : 1.0;
            mat(it->second, col) += pref * sign;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat);
    const double e0 = es.eigenvalues()(0);
    const Eigen::VectorXd v = es.eigenvectors().col(0);
    const double res = (mat * v - e0 * v).norm();
    return {e0, res, EigsMethod::Dense, static_cast<std::size_t>(sdim)};
}

}  // namespace kvqe
