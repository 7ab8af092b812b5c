// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "qmem/simd/kernels.hpp"

#include <immintrin.h>

#include <cstddef>

namespace qmem::simd::avx2 {
namespace {

// [c, c] broadcast of one complex into both 128-bit lanes.
inline __m256d broadcast(Complex c) {
    return _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag());
}

// Lane-wise complex product of two packed pairs.
inline __m256d cmul(__m256d c, __m256d v) {
    const __m256d c_re = _mm256_movedup_pd(c);
    const __m256d c_im = _mm256_permute_pd(c, 0b1111);
    const __m256d v_swap = _mm256_permute_pd(v, 0b0101);
    return _mm256_fmaddsub_pd(c_re, v, _mm256_mul_pd(c_im, v_swap));
}

inline double* raw(std::span<Complex> s) { return reinterpret_cast<double*>(s.data()); }
inline const double* raw(std::span<const Complex> s) {
    return reinterpret_cast<const double*>(s.data());
}

}  // namespace

void apply_mat2(std::span<Complex> amps, const Mat2& m, unsigned bit) {
    double* p = raw(amps);
    const std::size_t n = amps.size();
    if (bit == 0) {
        // One register holds the pair (a0, a1): out = [m00 m11]*v + [m01 m10]*swap(v).
        const __m256d diag = _mm256_setr_pd(m.m00.real(), m.m00.imag(), m.m11.real(), m.m11.imag());
        const __m256d anti = _mm256_setr_pd(m.m01.real(), m.m01.imag(), m.m10.real(), m.m10.imag());
        for (std::size_t i = 0; i < n; i += 2) {
            const __m256d v = _mm256_loadu_pd(p + 2 * i);
            const __m256d sw = _mm256_permute2f128_pd(v, v, 0x01);
            _mm256_storeu_pd(p + 2 * i, _mm256_add_pd(cmul(diag, v), cmul(anti, sw)));
        }
        return;
    }
    const std::size_t stride = std::size_t{1} << bit;
    const __m256d c00 = broadcast(m.m00);
    const __m256d c01 = broadcast(m.m01);
    const __m256d c10 = broadcast(m.m10);
    const __m256d c11 = broadcast(m.m11);
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; i += 2) {
            const __m256d lo = _mm256_loadu_pd(p + 2 * i);
            const __m256d hi = _mm256_loadu_pd(p + 2 * (i + stride));
            _mm256_storeu_pd(p + 2 * i, _mm256_add_pd(cmul(c00, lo), cmul(c01, hi)));
            _mm256_storeu_pd(p + 2 * (i + stride), _mm256_add_pd(cmul(c10, lo), cmul(c11, hi)));
        }
    }
}

void axpby(double a, std::span<const Complex> x, double b, std::span<Complex> y) {
    const double* px = raw(x);
    double* py = raw(y);
    const std::size_t len = 2 * y.size();
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d bx = _mm256_mul_pd(vb, _mm256_loadu_pd(py + i));
        _mm256_storeu_pd(py + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(px + i), bx));
    }
    for (; i < len; ++i) {
        py[i] = a * px[i] + b * py[i];
    }
}

}  // namespace qmem::simd::avx2
