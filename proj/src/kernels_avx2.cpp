#include "pgarc/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace pgarc {

bool masked_sum_avx2_available() { return __builtin_cpu_supports("avx2"); }

uint32_t masked_sum_u16_avx2(const uint16_t* vals, const uint64_t* mask, size_t nwords) {
    const __m256i lane_bits = _mm256_setr_epi16(
        1, 2, 4, 8, 16, 32, 64, 128,
        256, 512, 1024, 2048, 4096, 8192, 16384, static_cast<short>(0x8000));
    const __m256i ones = _mm256_set1_epi16(1);
    __m256i acc = _mm256_setzero_si256();
    for (size_t w = 0; w < nwords; ++w) {
        const uint64_t m = mask[w];
        if (!m) continue;
        const uint16_t* base = vals + 64 * w;
        for (int c = 0; c < 4; ++c) {
            const auto mc = static_cast<uint16_t>(m >> (16 * c));
            if (!mc) continue;
            const __m256i sel = _mm256_cmpeq_epi16(
                _mm256_and_si256(_mm256_set1_epi16(static_cast<short>(mc)), lane_bits), lane_bits);
            const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(base + 16 * c));
            // Values stay below 2^15, so the signed 16-bit multiply-add is exact.
            acc = _mm256_add_epi32(acc, _mm256_madd_epi16(_mm256_and_si256(v, sel), ones));
        }
    }
    const __m128i lo = _mm256_castsi256_si128(acc);
    const __m128i hi = _mm256_extracti128_si256(acc, 1);
    __m128i s = _mm_add_epi32(lo, hi);
    s = _mm_add_epi32(s, _mm_shuffle_epi32(s, 0x4E));
    s = _mm_add_epi32(s, _mm_shuffle_epi32(s, 0xB1));
    return static_cast<uint32_t>(_mm_cvtsi128_si32(s));
}

}  // namespace pgarc

#endif
