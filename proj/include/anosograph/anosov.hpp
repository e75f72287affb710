#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anosograph/exact.hpp"
#include "anosograph/graph.hpp"
#include "anosograph/json_io.hpp"
#include "anosograph/lie_algebra.hpp"
#include "anosograph/polynomial.hpp"
#include "anosograph/spectra.hpp"

namespace anosograph {

// ---------------------------------------------------------------------------
// Verdict

enum class ViolationReason { singleton_class, internal_edge_in_small_class };
std::string to_string(ViolationReason r);

struct Violation {
  std::size_t class_index = 0;
  ViolationReason reason = ViolationReason::singleton_class;
  std::optional<Edge> edge;
};

struct AnosovVerdict {
  std::size_t k = 0;
  bool admits = false;
  std::vector<Violation> violations;
};

/// Every class has at least two vertices, and no class of size l, 2 <= l <= k,
/// contains an edge.
AnosovVerdict decide_anosov(const CoherentPartition& partition, std::size_t k);
Json to_json(const AnosovVerdict& v, const Graph& g);

// ---------------------------------------------------------------------------
// Component matrices

struct ComponentMatrix {
  IntMatrix matrix;  // companion matrix, det = +-1
  IntPolynomial polynomial;
  ProductsReport products;
  bool from_random_phase = false;
};

struct ComponentSearchConfig {
  long coeff_bound = 3;
  std::uint64_t seed = 0;
  std::size_t budget = 100000;  // random-phase draws
  unsigned budget_bits = 256;
};

/// Companion matrix of a monic x^d + ... + a_0 with a_0 = +-1 whose r-fold
/// eigenvalue products are off the unit circle for r <= min(k, d - 1).
/// Coefficients are enumerated by height, then in a fixed order; after the
/// box, a seeded random phase. `skip` selects a later qualifying matrix.
ComponentMatrix find_component_matrix(std::size_t d, std::size_t k, const ComponentSearchConfig& config,
                                      std::size_t skip = 0);

IntMatrix companion_matrix(const IntPolynomial& monic);

// ---------------------------------------------------------------------------
// Graded extension

/// Per-degree blocks of the automorphism of H induced by a degree-1 map `g`.
/// Throws DescentError when `g` is not compatible with the relations of H.
std::vector<RatMatrix> extend_to_algebra(const GradedLieAlgebra& h, const RatMatrix& g);
std::vector<RatMatrix> extend_to_algebra(const GradedLieAlgebra& h, const IntMatrix& g);

/// First basis pair (i, j) with block[e_i, e_j] != [block e_i, block e_j].
std::optional<std::pair<std::size_t, std::size_t>> find_bracket_violation(const GradedLieAlgebra& h,
                                                                          const std::vector<RatMatrix>& blocks);

// ---------------------------------------------------------------------------
// Certificates

struct ComponentRecord {
  std::vector<std::string> vertices;
  IntMatrix matrix;
  IntPolynomial char_poly;
  std::size_t exponent = 1;
  Json products;
};

struct AutomorphismCertificate {
  std::string graph_hash;
  std::size_t k = 0;
  std::vector<ComponentRecord> components;
  std::vector<IntMatrix> degree_blocks;
  std::vector<IntPolynomial> char_polys;
  std::vector<Json> unit_root_certs;
  std::vector<Integer> determinants;

  Json to_json() const;
  static AutomorphismCertificate from_json(const Json& j);
};

struct SynthesisConfig {
  long coeff_bound = 3;
  std::size_t max_exponent = 64;
  std::uint64_t seed = 0;
  std::size_t budget = 100000;
  unsigned budget_bits = 256;
  std::size_t component_retries = 4;
};

/// Prime powers up to `max_exponent`, preceded by 1.
std::vector<std::size_t> exponent_ladder(std::size_t max_exponent);

/// Throws NotAdmissible, ComponentSearchExhausted or ExponentLadderExhausted.
AutomorphismCertificate synthesize(const Graph& g, std::size_t k, const SynthesisConfig& config = {});

struct VerificationReport {
  bool ok = true;
  std::vector<std::string> passed;
  std::string failed_check;
  std::string message;
  Json witness;
  Json to_json() const;
};

VerificationReport verify_certificate(const Graph& g, const AutomorphismCertificate& cert,
                                      unsigned budget_bits = default_budget_bits());

}  // namespace anosograph
