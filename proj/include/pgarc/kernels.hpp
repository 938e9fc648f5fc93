#pragma once

#include <cstddef>
#include <cstdint>

namespace pgarc {

// Sum of vals[i] over the set bits i of a bitmask of 64*nwords entries.
// Callers keep individual values below 2^15 and totals below 2^32.
using MaskedSumFn = uint32_t (*)(const uint16_t* vals, const uint64_t* mask, size_t nwords);

uint32_t masked_sum_u16_scalar(const uint16_t* vals, const uint64_t* mask, size_t nwords);
#if defined(__x86_64__) || defined(_M_X64)
uint32_t masked_sum_u16_avx2(const uint16_t* vals, const uint64_t* mask, size_t nwords);
bool masked_sum_avx2_available();
#endif

// Kernel chosen once per process: the AVX2 variant when compiled in and the
// CPU supports it, else scalar. PGARC_KERNEL=scalar|avx2 overrides (an avx2
// request on an unsupported CPU falls back to scalar).
MaskedSumFn masked_sum_u16();
const char* masked_sum_kernel_name();

}  // namespace pgarc
