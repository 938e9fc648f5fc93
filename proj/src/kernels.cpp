#include "pgarc/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <string_view>

namespace pgarc {

uint32_t masked_sum_u16_scalar(const uint16_t* vals, const uint64_t* mask, size_t nwords) {
    uint32_t s = 0;
    for (size_t w = 0; w < nwords; ++w) {
        uint64_t m = mask[w];
        const uint16_t* base = vals + 64 * w;
        while (m) {
            s += base[std::countr_zero(m)];
            m &= m - 1;
        }
    }
    return s;
}

namespace {

struct KernelChoice {
    MaskedSumFn fn;
    const char* name;
};

KernelChoice choose_kernel() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(PGARC_HAVE_AVX2_TU)
    const bool can_avx2 = masked_sum_avx2_available();
    if (const char* env = std::getenv("PGARC_KERNEL")) {
        std::string_view want(env);
        if (want == "scalar") return {masked_sum_u16_scalar, "scalar"};
        if (want == "avx2" && can_avx2) return {masked_sum_u16_avx2, "avx2"};
        return {masked_sum_u16_scalar, "scalar"};
    }
    if (can_avx2) return {masked_sum_u16_avx2, "avx2"};
#else
    if (const char* env = std::getenv("PGARC_KERNEL")) (void)env;
#endif
    return {masked_sum_u16_scalar, "scalar"};
}

const KernelChoice& active_kernel() {
    static const KernelChoice k = choose_kernel();
    return k;
}

}  // namespace

MaskedSumFn masked_sum_u16() { return active_kernel().fn; }
const char* masked_sum_kernel_name() { return active_kernel().name; }

}  // namespace pgarc
