#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's algebra; they share only the Graph value type.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "anosograph/graph.hpp"

namespace oracle {

using Z = mpz_class;
using Q = mpq_class;
using ZPoly = std::vector<Z>;  // ascending
using ZMat = std::vector<std::vector<Z>>;

/// Per-degree dimensions of H_k by elimination in the tensor algebra over
/// GF(2^31 - 1): rank of all right-normed brackets minus rank of the ideal.
std::vector<std::size_t> h_dims(const anosograph::Graph& g, std::size_t k);

/// det(xI - A) by evaluation at x = 0..n and Newton interpolation.
ZPoly char_poly(const ZMat& a);

Z bareiss_det(ZMat m);

/// True iff p has a root of modulus 1 (Cayley transform + Sturm count).
bool has_unit_root(const ZPoly& p);

/// Monic polynomial whose roots are the r-fold products of the roots of the
/// char poly of a 4 x 4 matrix, r in 1..4 (resultants for r = 2).
ZPoly product_poly(const ZMat& a, std::size_t r);

/// Conditions (i)-(ii) evaluated straight from the adjacency matrix.
bool admits_anosov(const std::vector<std::vector<bool>>& adj, std::size_t k);

ZPoly trim(ZPoly p);

/// Dimension of the derivation algebra from dense structure constants
/// c[i][j][t] = coefficient of e_t in [e_i, e_j], solving for all d^2 entries.
std::size_t derivation_dim(const std::vector<std::vector<std::vector<Q>>>& c);

}  // namespace oracle
