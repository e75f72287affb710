#include "anosograph/kernels/affine_filter.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace anosograph::kernels::detail {

__attribute__((target("avx2"))) void filter_avx2(std::span<const std::int32_t> constants,
                                                 std::span<const std::int32_t> coeffs,
                                                 const CandidateSet& candidates, std::span<std::uint8_t> keep) {
  const std::size_t w = candidates.width;
  const std::size_t n = candidates.count;
  const std::size_t full = n - n % 8;
  const __m256i zero = _mm256_setzero_si256();
  for (std::size_t c = 0; c < full; c += 8) {
    // Lanes still alive in this block.
    const __m128i k8 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(keep.data() + c));
    __m256i alive = _mm256_cmpgt_epi32(_mm256_cvtepu8_epi32(k8), zero);
    for (std::size_t r = 0; r < constants.size(); ++r) {
      if (_mm256_testz_si256(alive, alive)) break;
      __m256i acc = _mm256_set1_epi32(constants[r]);
      for (std::size_t i = 0; i < w; ++i) {
        const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(candidates.values.data() + i * n + c));
        acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(_mm256_set1_epi32(coeffs[r * w + i]), x));
      }
      alive = _mm256_and_si256(alive, _mm256_cmpeq_epi32(acc, zero));
    }
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(alive));
    for (int l = 0; l < 8; ++l) keep[c + l] = static_cast<std::uint8_t>((mask >> l) & 1);
  }
  for (std::size_t c = full; c < n; ++c) {
    if (!keep[c]) continue;
    for (std::size_t r = 0; r < constants.size(); ++r) {
      std::int32_t acc = constants[r];
      for (std::size_t i = 0; i < w; ++i) acc += coeffs[r * w + i] * candidates.at(i, c);
      if (acc != 0) {
        keep[c] = 0;
        break;
      }
    }
  }
}

}  // namespace anosograph::kernels::detail

#endif
