#include "qmem/simd/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace qmem::simd {
namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::apply_mat2, &scalar::axpby};
#if defined(QMEM_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::apply_mat2, &avx2::axpby};
#endif
#if defined(QMEM_HAVE_NEON_KERNELS)
constexpr KernelTable kNeon{Isa::neon, &neon::apply_mat2, &neon::axpby};
#endif

const KernelTable& select() {
    if (const char* env = std::getenv("QMEM_SIMD")) {
        const std::string_view want{env};
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
            if (want == isa_name(isa)) {
                if (const KernelTable* t = kernels_for(isa)) {
                    return *t;
                }
            }
        }
    }
    for (Isa isa : {Isa::avx2, Isa::neon}) {
        if (const KernelTable* t = kernels_for(isa)) {
            return *t;
        }
    }
    return kScalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(QMEM_HAVE_AVX2_KERNELS)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
#if defined(QMEM_HAVE_NEON_KERNELS)
            return true;  // mandatory on aarch64
#else
            return false;
#endif
    }
    return false;
}

const KernelTable* kernels_for(Isa isa) {
    if (!isa_available(isa)) {
        return nullptr;
    }
    switch (isa) {
        case Isa::scalar: return &kScalar;
#if defined(QMEM_HAVE_AVX2_KERNELS)
        case Isa::avx2: return &kAvx2;
#endif
#if defined(QMEM_HAVE_NEON_KERNELS)
        case Isa::neon: return &kNeon;
#endif
        default: return nullptr;
    }
}

const KernelTable& kernels() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace qmem::simd
