#include "kvqe/kernels.hpp"

namespace kvqe::kernels {

namespace {

void rotate_y_scalar(cd* amp, std::size_t dim, int q, double c, double s) {
    const std::size_t step = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) {
            const cd a = amp[i];
            const cd b = amp[i + step];
            amp[i] = c * a - s * b;
            amp[i + step] = s * a + c * b;
        }
    }
}

void rotate_z_scalar(cd* amp, std::size_t dim, int q, double c, double s) {
    const cd lo(c, -s);  // e^{-i theta/2}
    const cd hi(c, s);
    const std::size_t step = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) {
            amp[i] *= lo;
            amp[i + step] *= hi;
        }
    }
}

void cnot_scalar(cd* amp, std::size_t dim, int control, int target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(amp[i], amp[i | tbit]);
        }
    }
}

double norm_sqr_scalar(const cd* amp, std::size_t dim) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        acc += amp[i].real() * amp[i].real() + amp[i].imag() * amp[i].imag();
    }
    return acc;
}

void abs_sqr_scalar(const cd* amp, std::size_t dim, double* out) {
    for (std::size_t i = 0; i < dim; ++i) {
        out[i] = amp[i].real() * amp[i].real() + amp[i].imag() * amp[i].imag();
    }
}

}  // namespace

const Table& scalar_table() {
    static const Table t{"scalar",        rotate_y_scalar, rotate_z_scalar,
                         cnot_scalar,     norm_sqr_scalar, abs_sqr_scalar};
    return t;
}

}  // namespace kvqe::kernels
