#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "anosograph/kernels/affine_filter.hpp"

using namespace anosograph::kernels;

namespace {

struct System {
  std::vector<std::int64_t> constants;
  std::vector<std::int64_t> coeffs;
};

// Rows built to vanish on a planted candidate so that the filter keeps something.
System planted_system(std::mt19937_64& rng, const CandidateSet& set, std::size_t rows, std::int64_t scale) {
  std::uniform_int_distribution<std::int64_t> d(-scale, scale);
  std::uniform_int_distribution<std::size_t> pick(0, set.count - 1);
  const std::size_t target = pick(rng);
  System s;
  for (std::size_t r = 0; r < rows; ++r) {
    std::int64_t dot = 0;
    for (std::size_t i = 0; i < set.width; ++i) {
      const std::int64_t c = d(rng);
      s.coeffs.push_back(c);
      dot += c * set.at(i, target);
    }
    s.constants.push_back(-dot);
  }
  return s;
}

std::vector<std::uint8_t> run(const System& s, const CandidateSet& set, Backend b) {
  std::vector<std::uint8_t> keep(set.count, 1);
  filter_affine_zero(s.constants, s.coeffs, set, keep, b);
  return keep;
}

std::vector<std::uint8_t> reference(const System& s, const CandidateSet& set) {
  std::vector<std::uint8_t> keep(set.count, 1);
  detail::filter_scalar64(s.constants, s.coeffs, set, keep);
  return keep;
}

}  // namespace

TEST_CASE("candidate box enumerates every nonzero vector once") {
  auto set = CandidateSet::box(3, 1);
  CHECK(set.count == 26);
  std::set<std::vector<int>> seen;
  for (std::size_t c = 0; c < set.count; ++c) {
    std::vector<int> v{set.at(0, c), set.at(1, c), set.at(2, c)};
    CHECK(v != std::vector<int>{0, 0, 0});
    seen.insert(v);
  }
  CHECK(seen.size() == 26);
  CHECK(set.at(2, 0) == -1);  // first candidate (0, 0, -1)
  CHECK(CandidateSet::box(4, 2).count == 624);
  CHECK_THROWS(CandidateSet::box(0, 2));
}

TEST_CASE("scalar is always available") {
  auto b = available_backends();
  REQUIRE_FALSE(b.empty());
  CHECK(b.front() == Backend::scalar);
  MESSAGE("best backend: " << to_string(best_backend()));
}

TEST_CASE("every backend matches the 64-bit reference") {
  std::mt19937_64 rng(42);
  for (std::size_t width : {1u, 2u, 3u, 4u, 5u}) {
    for (std::int32_t bound : {1, 2, 3}) {
      auto set = CandidateSet::box(width, bound);
      for (int trial = 0; trial < 20; ++trial) {
        const std::size_t rows = 1 + static_cast<std::size_t>(trial % 4);
        System s = planted_system(rng, set, rows, trial % 2 ? 3 : 40);
        const auto ref = reference(s, set);
        std::size_t kept = 0;
        for (auto k : ref) kept += k;
        REQUIRE(kept >= 1);
        for (Backend b : available_backends()) REQUIRE(run(s, set, b) == ref);
      }
    }
  }
}

TEST_CASE("respects an incoming keep mask") {
  auto set = CandidateSet::box(2, 2);
  System s{{0}, {0, 0}};  // always satisfied
  for (Backend b : available_backends()) {
    std::vector<std::uint8_t> keep(set.count);
    for (std::size_t c = 0; c < set.count; ++c) keep[c] = c % 3 == 0;
    auto expect = keep;
    filter_affine_zero(s.constants, s.coeffs, set, keep, b);
    CHECK(keep == expect);
  }
}

TEST_CASE("wide systems fall back to 64-bit arithmetic") {
  auto set = CandidateSet::box(3, 2);
  // 2^31 would wrap in 32-bit lanes; x = (1, 0, 0) solves it exactly.
  System s{{-(std::int64_t{1} << 31)}, {std::int64_t{1} << 31, 3, 7}};
  CHECK_FALSE(fits_narrow(s.constants, s.coeffs, 3, 2));
  const auto ref = reference(s, set);
  for (Backend b : available_backends()) CHECK(run(s, set, b) == ref);
  std::size_t kept = 0;
  for (auto k : ref) kept += k;
  CHECK(kept == 1);
  CHECK(fits_narrow(std::vector<std::int64_t>{5}, std::vector<std::int64_t>{1, 2, 3}, 3, 2));
}

TEST_CASE("shape errors") {
  auto set = CandidateSet::box(2, 1);
  std::vector<std::uint8_t> keep(set.count, 1);
  std::vector<std::int64_t> k{1}, c{1, 2, 3};
  CHECK_THROWS(filter_affine_zero(k, c, set, keep, Backend::scalar));
  std::vector<std::uint8_t> short_keep(3, 1);
  std::vector<std::int64_t> c2{1, 2};
  CHECK_THROWS(filter_affine_zero(k, c2, set, short_keep, Backend::scalar));
}
