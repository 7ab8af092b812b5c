#include "qmem/simd/kernels.hpp"

#include <cstddef>

namespace qmem::simd::scalar {

void apply_mat2(std::span<Complex> amps, const Mat2& m, unsigned bit) {
    const std::size_t stride = std::size_t{1} << bit;
    const std::size_t n = amps.size();
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex lo = amps[i];
            const Complex hi = amps[i + stride];
            amps[i] = m.m00 * lo + m.m01 * hi;
            amps[i + stride] = m.m10 * lo + m.m11 * hi;
        }
    }
}

void axpby(double a, std::span<const Complex> x, double b, std::span<Complex> y) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = a * x[i] + b * y[i];
    }
}

}  // namespace qmem::simd::scalar
