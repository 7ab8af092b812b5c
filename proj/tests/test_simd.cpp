#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "qmem/simd/kernels.hpp"

using qmem::simd::Complex;
using qmem::simd::Isa;
using qmem::simd::Mat2;

namespace {

std::vector<Complex> random_amps(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> v(n);
    for (auto& a : v) {
        a = {g(rng), g(rng)};
    }
    return v;
}

Mat2 random_mat(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return {{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}};
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

}  // namespace

TEST_CASE("scalar apply_mat2 matches explicit pair update") {
    std::vector<Complex> v{1.0, 2.0, 3.0, 4.0};
    const Mat2 x{0.0, 1.0, 1.0, 0.0};
    qmem::simd::scalar::apply_mat2(v, x, 1);
    CHECK(v[0] == Complex{3.0});
    CHECK(v[1] == Complex{4.0});
    CHECK(v[2] == Complex{1.0});
    CHECK(v[3] == Complex{2.0});
}

TEST_CASE("every available kernel variant agrees with the scalar reference") {
    std::mt19937_64 rng(7);
    for (Isa isa : {Isa::avx2, Isa::neon}) {
        const auto* table = qmem::simd::kernels_for(isa);
        if (table == nullptr) {
            MESSAGE("skipping " << qmem::simd::isa_name(isa) << " (unavailable)");
            continue;
        }
        CAPTURE(qmem::simd::isa_name(isa));
        for (std::size_t log_n = 1; log_n <= 8; ++log_n) {
            const std::size_t n = std::size_t{1} << log_n;
            for (unsigned bit = 0; bit < log_n; ++bit) {
                const auto input = random_amps(n, rng);
                const Mat2 m = random_mat(rng);
                auto ref = input;
                auto out = input;
                qmem::simd::scalar::apply_mat2(ref, m, bit);
                table->apply_mat2(out, m, bit);
                CHECK(max_diff(ref, out) < 1e-13);
            }
            const auto x = random_amps(n, rng);
            auto ref = random_amps(n, rng);
            auto out = ref;
            qmem::simd::scalar::axpby(0.3, x, -1.7, ref);
            table->axpby(0.3, x, -1.7, out);
            CHECK(max_diff(ref, out) < 1e-13);
        }
    }
}

TEST_CASE("dispatch always yields an available table") {
    const auto& k = qmem::simd::kernels();
    CHECK(qmem::simd::isa_available(k.isa));
    CHECK(qmem::simd::kernels_for(Isa::scalar) != nullptr);
    MESSAGE("active kernels: " << qmem::simd::isa_name(k.isa));
}
