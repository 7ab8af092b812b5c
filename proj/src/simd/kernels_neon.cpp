#include "qmem/simd/kernels.hpp"

#include <arm_neon.h>

#include <cstddef>

namespace qmem::simd::neon {
namespace {

// One float64x2_t holds exactly one complex amplitude.
inline float64x2_t cmul(Complex c, float64x2_t v) {
    const float64x2_t v_swap = vextq_f64(v, v, 1);
    const float64x2_t im = {-c.imag(), c.imag()};
    return vfmaq_f64(vmulq_n_f64(v, c.real()), v_swap, im);
}

}  // namespace

void apply_mat2(std::span<Complex> amps, const Mat2& m, unsigned bit) {
    double* p = reinterpret_cast<double*>(amps.data());
    const std::size_t stride = std::size_t{1} << bit;
    const std::size_t n = amps.size();
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const float64x2_t lo = vld1q_f64(p + 2 * i);
            const float64x2_t hi = vld1q_f64(p + 2 * (i + stride));
            vst1q_f64(p + 2 * i, vaddq_f64(cmul(m.m00, lo), cmul(m.m01, hi)));
            vst1q_f64(p + 2 * (i + stride), vaddq_f64(cmul(m.m10, lo), cmul(m.m11, hi)));
        }
    }
}

void axpby(double a, std::span<const Complex> x, double b, std::span<Complex> y) {
    const double* px = reinterpret_cast<const double*>(x.data());
    double* py = reinterpret_cast<double*>(y.data());
    for (std::size_t i = 0; i < 2 * y.size(); i += 2) {
        const float64x2_t by = vmulq_n_f64(vld1q_f64(py + i), b);
        vst1q_f64(py + i, vfmaq_n_f64(by, vld1q_f64(px + i), a));
    }
}

}  // namespace qmem::simd::neon
