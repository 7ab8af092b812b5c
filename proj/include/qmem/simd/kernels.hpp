#pragma once

// Amplitude-update kernels shared by the state-vector and density-matrix
// simulators. Every kernel has a scalar reference; vector variants must agree
// with it to rounding (see tests/test_simd.cpp).

#include <complex>
#include <span>
#include <string_view>

namespace qmem::simd {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix.
struct Mat2 {
    Complex m00, m01, m10, m11;
};

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// Applies `m` to every amplitude pair (i, i | 1<<bit) with bit `bit` of i clear.
/// `amps.size()` must be a power of two greater than 1<<bit.
using ApplyMat2Fn = void (*)(std::span<Complex> amps, const Mat2& m, unsigned bit);

/// y <- a*x + b*y, element-wise. Spans must have equal length.
using AxpbyFn = void (*)(double a, std::span<const Complex> x, double b, std::span<Complex> y);

struct KernelTable {
    Isa isa;
    ApplyMat2Fn apply_mat2;
    AxpbyFn axpby;
};

namespace scalar {
void apply_mat2(std::span<Complex> amps, const Mat2& m, unsigned bit);
void axpby(double a, std::span<const Complex> x, double b, std::span<Complex> y);
}  // namespace scalar

#if defined(QMEM_HAVE_AVX2_KERNELS)
namespace avx2 {
void apply_mat2(std::span<Complex> amps, const Mat2& m, unsigned bit);
void axpby(double a, std::span<const Complex> x, double b, std::span<Complex> y);
}  // namespace avx2
#endif

#if defined(QMEM_HAVE_NEON_KERNELS)
namespace neon {
void apply_mat2(std::span<Complex> amps, const Mat2& m, unsigned bit);
void axpby(double a, std::span<const Complex> x, double b, std::span<Complex> y);
}  // namespace neon
#endif

/// True when the variant was compiled in and the running CPU can execute it.
bool isa_available(Isa isa);

/// Table for a specific variant; nullptr when unavailable.
const KernelTable* kernels_for(Isa isa);

/// The table used by the simulators. Chosen once on first use: the widest
/// available variant, unless QMEM_SIMD=scalar|avx2|neon names another
/// available one.
const KernelTable& kernels();

}  // namespace qmem::simd
