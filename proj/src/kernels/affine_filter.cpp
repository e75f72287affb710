#include "anosograph/kernels/affine_filter.hpp"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "anosograph/errors.hpp"

namespace anosograph::kernels {

std::string to_string(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::scalar};
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) out.push_back(Backend::avx2);
#elif defined(__aarch64__)
  out.push_back(Backend::neon);
#endif
  return out;
}

Backend best_backend() {
  if (const char* env = std::getenv("ANOSOGRAPH_KERNEL"); env && std::strcmp(env, "scalar") == 0)
    return Backend::scalar;
  return available_backends().back();
}

CandidateSet CandidateSet::box(std::size_t width, std::int32_t bound) {
  if (width == 0 || bound < 0) throw Error("candidate box needs width >= 1 and bound >= 0");
  std::vector<std::int32_t> order{0};
  for (std::int32_t v = 1; v <= bound; ++v) {
    order.push_back(-v);
    order.push_back(v);
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < width; ++i) {
    if (total * order.size() > (std::size_t{1} << 26)) throw Error("candidate box too large");
    total *= order.size();
  }
  CandidateSet set;
  set.width = width;
  set.bound = bound;
  set.count = total - 1;  // the zero vector is skipped
  set.values.resize(width * set.count);
  std::vector<std::size_t> digit(width, 0);
  for (std::size_t c = 0; c < total; ++c) {
    if (c > 0) {
      for (std::size_t i = 0; i < width; ++i) set.values[i * set.count + c - 1] = order[digit[i]];
    }
    for (std::size_t i = width; i-- > 0;) {
      if (++digit[i] < order.size()) break;
      digit[i] = 0;
    }
  }
  return set;
}

bool fits_narrow(std::span<const std::int64_t> constants, std::span<const std::int64_t> coeffs, std::size_t width,
                 std::int32_t bound) {
  constexpr std::int64_t limit = std::numeric_limits<std::int32_t>::max();
  for (std::size_t r = 0; r < constants.size(); ++r) {
    // Every partial sum is bounded by this total, so no lane can wrap.
    __int128 total = constants[r] < 0 ? -static_cast<__int128>(constants[r]) : constants[r];
    for (std::size_t i = 0; i < width; ++i) {
      const std::int64_t c = coeffs[r * width + i];
      total += static_cast<__int128>(c < 0 ? -c : c) * bound;
    }
    if (total > limit) return false;
  }
  return true;
}

namespace detail {

void filter_scalar64(std::span<const std::int64_t> constants, std::span<const std::int64_t> coeffs,
                     const CandidateSet& candidates, std::span<std::uint8_t> keep) {
  const std::size_t w = candidates.width;
  for (std::size_t c = 0; c < candidates.count; ++c) {
    if (!keep[c]) continue;
    for (std::size_t r = 0; r < constants.size(); ++r) {
      __int128 acc = constants[r];
      for (std::size_t i = 0; i < w; ++i) acc += static_cast<__int128>(coeffs[r * w + i]) * candidates.at(i, c);
      if (acc != 0) {
        keep[c] = 0;
        break;
      }
    }
  }
}

void filter_scalar32(std::span<const std::int32_t> constants, std::span<const std::int32_t> coeffs,
                     const CandidateSet& candidates, std::span<std::uint8_t> keep) {
  const std::size_t w = candidates.width;
  for (std::size_t c = 0; c < candidates.count; ++c) {
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

#if !(defined(__x86_64__) || defined(__i386__))
void filter_avx2(std::span<const std::int32_t>, std::span<const std::int32_t>, const CandidateSet&,
                 std::span<std::uint8_t>) {
  throw Error("avx2 kernel not built for this architecture");
}
#endif

#if !defined(__aarch64__)
void filter_neon(std::span<const std::int32_t>, std::span<const std::int32_t>, const CandidateSet&,
                 std::span<std::uint8_t>) {
  throw Error("neon kernel not built for this architecture");
}
#endif

}  // namespace detail

void filter_affine_zero(std::span<const std::int64_t> constants, std::span<const std::int64_t> coeffs,
                        const CandidateSet& candidates, std::span<std::uint8_t> keep, Backend backend) {
  if (coeffs.size() != constants.size() * candidates.width) throw DimensionMismatch("affine system shape");
  if (keep.size() != candidates.count) throw DimensionMismatch("keep mask length");
  if (constants.empty()) return;
  if (!fits_narrow(constants, coeffs, candidates.width, candidates.bound)) {
    detail::filter_scalar64(constants, coeffs, candidates, keep);
    return;
  }
  std::vector<std::int32_t> k32(constants.begin(), constants.end());
  std::vector<std::int32_t> c32(coeffs.begin(), coeffs.end());
  switch (backend) {
    case Backend::scalar:
      detail::filter_scalar32(k32, c32, candidates, keep);
      break;
    case Backend::avx2:
      detail::filter_avx2(k32, c32, candidates, keep);
      break;
    case Backend::neon:
      detail::filter_neon(k32, c32, candidates, keep);
      break;
  }
}

}  // namespace anosograph::kernels
