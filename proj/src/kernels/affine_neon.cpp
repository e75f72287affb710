#include "anosograph/kernels/affine_filter.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace anosograph::kernels::detail {

void filter_neon(std::span<const std::int32_t> constants, std::span<const std::int32_t> coeffs,
                 const CandidateSet& candidates, std::span<std::uint8_t> keep) {
  const std::size_t w = candidates.width;
  const std::size_t n = candidates.count;
  const std::size_t full = n - n % 4;
  for (std::size_t c = 0; c < full; c += 4) {
    uint32x4_t alive = {keep[c] ? ~0u : 0u, keep[c + 1] ? ~0u : 0u, keep[c + 2] ? ~0u : 0u, keep[c + 3] ? ~0u : 0u};
    for (std::size_t r = 0; r < constants.size(); ++r) {
      if (vmaxvq_u32(alive) == 0) break;
      int32x4_t acc = vdupq_n_s32(constants[r]);
      for (std::size_t i = 0; i < w; ++i)
        acc = vmlaq_n_s32(acc, vld1q_s32(candidates.values.data() + i * n + c), coeffs[r * w + i]);
      alive = vandq_u32(alive, vceqzq_s32(acc));
    }
    std::uint32_t lanes[4];
    vst1q_u32(lanes, alive);
    for (std::size_t l = 0; l < 4; ++l) keep[c + l] = lanes[l] ? 1 : 0;
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
