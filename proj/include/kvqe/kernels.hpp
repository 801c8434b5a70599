#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace kvqe::kernels {

using cd = std::complex<double>;

// Inner-loop kernels over a 2^n amplitude array. Two implementations
// exist: a scalar reference and an AVX2 variant compiled in its own
// translation unit; the active table is picked at runtime from CPU
// features. Both must agree bit-for-bit on the same inputs apart from
// floating-point rounding (equivalence-tested).
struct Table {
    const char* name;

    // |psi> <- RY(theta) on qubit q; c = cos(theta/2), s = sin(theta/2).
    void (*rotate_y)(cd* amp, std::size_t dim, int q, double c, double s);
    // |psi> <- RZ(theta) on qubit q; diag(e^{-i theta/2}, e^{+i theta/2}).
    void (*rotate_z)(cd* amp, std::size_t dim, int q, double c, double s);
    void (*cnot)(cd* amp, std::size_t dim, int control, int target);
    double (*norm_sqr)(const cd* amp, std::size_t dim);
    // out[i] = |amp[i]|^2
    void (*abs_sqr)(const cd* amp, std::size_t dim, double* out);
};

const Table& scalar_table();
const Table& avx2_table();  // falls back to scalar when unavailable

// Active table: AVX2 when the CPU supports it, else scalar. Overridable
// via select() (used by tests and the KVQE_KERNELS env var).
const Table& active();
void select(const std::string& name);  // "auto" | "scalar" | "avx2"
bool avx2_available();

}  // namespace kvqe::kernels
