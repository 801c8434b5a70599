// AVX2 variants of the statevector kernels. This translation unit is the
// only one compiled with -mavx2; the dispatcher checks CPU features at
// runtime before handing out this table.

#include "kvqe/kernels.hpp"

#if defined(__AVX2__) && defined(__x86_64__)
#include <immintrin.h>

namespace kvqe::kernels {

namespace {

// Two packed complex<double> per __m256d: [re0, im0, re1, im1].

void rotate_y_avx2(cd* amp, std::size_t dim, int q, double c, double s) {
    double* p = reinterpret_cast<double*>(amp);
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    if (q == 0) {
        // a and b share one vector: [a, b] -> [c*a - s*b, s*a + c*b]
        const __m256d sign = _mm256_set_pd(1.0, 1.0, -1.0, -1.0);
        for (std::size_t i = 0; i < dim; i += 2) {
            const __m256d v = _mm256_loadu_pd(p + 2 * i);
            const __m256d sw = _mm256_permute2f128_pd(v, v, 0x01);
            const __m256d r = _mm256_fmadd_pd(_mm256_mul_pd(vs, sign), sw, _mm256_mul_pd(vc, v));
            _mm256_storeu_pd(p + 2 * i, r);
        }
        return;
    }
    const std::size_t step = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; base += 2 * step) {
        for (std::size_t i = base; i < base + step; i += 2) {
            const __m256d va = _mm256_loadu_pd(p + 2 * i);
            const __m256d vb = _mm256_loadu_pd(p + 2 * (i + step));
            const __m256d ra = _mm256_fnmadd_pd(vs, vb, _mm256_mul_pd(vc, va));
            const __m256d rb = _mm256_fmadd_pd(vs, va, _mm256_mul_pd(vc, vb));
            _mm256_storeu_pd(p + 2 * i, ra);
            _mm256_storeu_pd(p + 2 * (i + step), rb);
        }
    }
}

void rotate_z_avx2(cd* amp, std::size_t dim, int q, double c, double s) {
    double* p = reinterpret_cast<double*>(amp);
    const __m256d vc = _mm256_set1_pd(c);
    // (x + iy) * (c + id) = (x c - y d) + i (x d + y c)
    //                     = c*v + d * swap(v) * [-1, +1, -1, +1]
    const __m256d alt = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
    if (q == 0) {
        // lower half gets d = -s, upper half d = +s, within one vector
        const __m256d vd = _mm256_set_pd(s, s, -s, -s);
        for (std::size_t i = 0; i < dim; i += 2) {
            const __m256d v = _mm256_loadu_pd(p + 2 * i);
            const __m256d sw = _mm256_mul_pd(_mm256_permute_pd(v, 0x5), alt);
            const __m256d r = _mm256_fmadd_pd(vd, sw, _mm256_mul_pd(vc, v));
            _mm256_storeu_pd(p + 2 * i, r);
        }
        return;
    }
    const std::size_t step = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; base += 2 * step) {
        for (std::size_t half = 0; half < 2; ++half) {
            const __m256d vd = _mm256_set1_pd(half ? s : -s);
            const std::size_t off = base + half * step;
            for (std::size_t i = off; i < off + step; i += 2) {
                const __m256d v = _mm256_loadu_pd(p + 2 * i);
                const __m256d sw = _mm256_mul_pd(_mm256_permute_pd(v, 0x5), alt);
                const __m256d r = _mm256_fmadd_pd(vd, sw, _mm256_mul_pd(vc, v));
                _mm256_storeu_pd(p + 2 * i, r);
            }
        }
    }
}

void cnot_avx2(cd* amp, std::size_t dim, int control, int target) {
    if (control == 0 || target == 0) {
        scalar_table().cnot(amp, dim, control, target);
        return;
    }
    double* p = reinterpret_cast<double*>(amp);
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    // control, target >= 1: the predicate is constant over index pairs
    for (std::size_t i = 0; i < dim; i += 2) {
        if ((i & cbit) && !(i & tbit)) {
            const std::size_t j = i | tbit;
            const __m256d a = _mm256_loadu_pd(p + 2 * i);
            const __m256d b = _mm256_loadu_pd(p + 2 * j);
            _mm256_storeu_pd(p + 2 * i, b);
            _mm256_storeu_pd(p + 2 * j, a);
        }
    }
}

double norm_sqr_avx2(const cd* amp, std::size_t dim) {
    const double* p = reinterpret_cast<const double*>(amp);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < 2 * dim; i += 4) {
        const __m256d v = _mm256_loadu_pd(p + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d sum2 = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_pd(sum2, _mm_unpackhi_pd(sum2, sum2)));
}

void abs_sqr_avx2(const cd* amp, std::size_t dim, double* out) {
    const double* p = reinterpret_cast<const double*>(amp);
    for (std::size_t i = 0; i < dim; i += 2) {
        const __m256d v = _mm256_loadu_pd(p + 2 * i);
        const __m256d sq = _mm256_mul_pd(v, v);
        // [re0^2, im0^2, re1^2, im1^2] -> [re0^2 + im0^2, re1^2 + im1^2]
        const __m256d sw = _mm256_permute_pd(sq, 0x5);
        const __m256d s = _mm256_add_pd(sq, sw);  // [n0, n0, n1, n1]
        out[i] = _mm_cvtsd_f64(_mm256_castpd256_pd128(s));
        out[i + 1] = _mm_cvtsd_f64(_mm256_extractf128_pd(s, 1));
    }
}

}  // namespace

const Table& avx2_table() {
    static const Table t{"avx2",      rotate_y_avx2, rotate_z_avx2,
                         cnot_avx2,   norm_sqr_avx2, abs_sqr_avx2};
    return t;
}

}  // namespace kvqe::kernels

#else

namespace kvqe::kernels {
const Table& avx2_table() { return scalar_table(); }
}  // namespace kvqe::kernels

#endif
