#pragma once

// Batched test of affine integer equations over a fixed candidate set.
//
// For candidate c with coordinates x_0..x_{w-1}, row r of the system holds when
//   constant[r] + sum_i coeff[r * w + i] * x_i == 0.
// keep[c] is cleared for every candidate violating some row.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace anosograph::kernels {

enum class Backend { scalar, avx2, neon };

std::string to_string(Backend b);

/// Backends usable on this CPU, scalar first.
std::vector<Backend> available_backends();

/// Widest available backend; ANOSOGRAPH_KERNEL=scalar forces the reference.
Backend best_backend();

/// Candidate coordinates in structure-of-arrays layout: values[i * count + c].
struct CandidateSet {
  std::size_t width = 0;
  std::size_t count = 0;
  std::int32_t bound = 0;  // max |x_i|
  std::vector<std::int32_t> values;

  /// Every nonzero vector of [-bound, bound]^width in odometer order with the
  /// first coordinate varying slowest; values ordered 0, -1, 1, -2, 2, ...
  static CandidateSet box(std::size_t width, std::int32_t bound);
  std::int32_t at(std::size_t coord, std::size_t c) const { return values[coord * count + c]; }
};

/// True when every row's value fits in int32 for all candidates, so the
/// narrow kernels are exact.
bool fits_narrow(std::span<const std::int64_t> constants, std::span<const std::int64_t> coeffs, std::size_t width,
                 std::int32_t bound);

/// Applies the system. Uses 32-bit lanes on `backend` when the system fits,
/// the scalar 64-bit reference otherwise.
void filter_affine_zero(std::span<const std::int64_t> constants, std::span<const std::int64_t> coeffs,
                        const CandidateSet& candidates, std::span<std::uint8_t> keep, Backend backend);

namespace detail {
void filter_scalar64(std::span<const std::int64_t> constants, std::span<const std::int64_t> coeffs,
                     const CandidateSet& candidates, std::span<std::uint8_t> keep);
void filter_scalar32(std::span<const std::int32_t> constants, std::span<const std::int32_t> coeffs,
                     const CandidateSet& candidates, std::span<std::uint8_t> keep);
void filter_avx2(std::span<const std::int32_t> constants, std::span<const std::int32_t> coeffs,
                 const CandidateSet& candidates, std::span<std::uint8_t> keep);
void filter_neon(std::span<const std::int32_t> constants, std::span<const std::int32_t> coeffs,
                 const CandidateSet& candidates, std::span<std::uint8_t> keep);
}  // namespace detail

}  // namespace anosograph::kernels
