#include "anosograph/spectra.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace anosograph {

IntPolynomial char_poly(const IntMatrix& a) {
  if (!a.square()) throw DimensionMismatch("char_poly: matrix is not square");
  const std::size_t n = a.rows();
  // Berkowitz: p_{r+1} = T_r p_r with T_r lower-triangular Toeplitz. Coefficients
  // are kept in descending order while building.
  std::vector<Integer> v{1};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Integer> t(r + 2);
    t[0] = 1;
    t[1] = -a(r, r);
    std::vector<Integer> y(r);  // M^j C, M the leading r x r block, C the new column
    for (std::size_t i = 0; i < r; ++i) y[i] = a(i, r);
    for (std::size_t j = 0; j < r; ++j) {
      Integer dot = 0;
      for (std::size_t i = 0; i < r; ++i) dot += a(r, i) * y[i];
      t[j + 2] = -dot;
      if (j + 1 == r) break;
      std::vector<Integer> next(r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t l = 0; l < r; ++l) next[i] += a(i, l) * y[l];
      y = std::move(next);
    }
    std::vector<Integer> w(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) w[i] += t[i - j] * v[j];
    v = std::move(w);
  }
  return IntPolynomial(std::vector<Integer>(v.rbegin(), v.rend()));
}

namespace {

// Common denominator d of `a` and char_{d a}.
std::pair<Integer, IntPolynomial> scaled_char_poly(const RatMatrix& a) {
  if (!a.square()) throw DimensionMismatch("char_poly: matrix is not square");
  const std::size_t n = a.rows();
  Integer d = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), a(i, j).get_den().get_mpz_t());
  IntMatrix scaled(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) = a(i, j).get_num() * (d / a(i, j).get_den());
  return {d, char_poly(scaled)};
}

}  // namespace

std::optional<IntPolynomial> integral_char_poly(const RatMatrix& a) {
  const std::size_t n = a.rows();
  // char_a(x) = d^-n char_{da}(d x)
  const auto [d, p] = scaled_char_poly(a);
  std::vector<Integer> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    Integer den;
    mpz_pow_ui(den.get_mpz_t(), d.get_mpz_t(), n - i);
    if (!mpz_divisible_p(p.coeff(i).get_mpz_t(), den.get_mpz_t())) return std::nullopt;
    mpz_divexact(c[i].get_mpz_t(), p.coeff(i).get_mpz_t(), den.get_mpz_t());
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial primitive_char_poly(const RatMatrix& a) {
  const auto [d, p] = scaled_char_poly(a);
  // d^n char_a(x) = sum p_i d^i x^i
  std::vector<Integer> c(p.coefficients().begin(), p.coefficients().end());
  Integer power = 1;
  for (auto& x : c) {
    x *= power;
    power *= d;
  }
  return IntPolynomial(std::move(c)).primitive();
}

std::vector<std::vector<std::size_t>> colex_subsets(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  if (r > n) return out;
  std::vector<std::size_t> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = 0;
    while (i < r && c[i] + 1 == (i + 1 < r ? c[i + 1] : n)) ++i;
    if (i == r) break;
    ++c[i];
    for (std::size_t j = 0; j < i; ++j) c[j] = j;
  }
  return out;
}

IntMatrix compound_matrix(const IntMatrix& a, std::size_t r) {
  if (!a.square()) throw DimensionMismatch("compound_matrix: matrix is not square");
  if (r < 1 || r > a.rows())
    throw Error("compound_matrix: order " + std::to_string(r) + " outside [1, " + std::to_string(a.rows()) + "]");
  const auto subsets = colex_subsets(a.rows(), r);
  IntMatrix out(subsets.size(), subsets.size());
  IntMatrix minor(r, r);
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (std::size_t j = 0; j < subsets.size(); ++j) {
      for (std::size_t x = 0; x < r; ++x)
        for (std::size_t y = 0; y < r; ++y) minor(x, y) = a(subsets[i][x], subsets[j][y]);
      out(i, j) = determinant(minor);
    }
  return out;
}

std::string to_string(UnitRootVerdict v) { return v == UnitRootVerdict::free ? "free" : "not-free"; }

std::string to_string(UnitRootMethod m) {
  switch (m) {
    case UnitRootMethod::gcd_trivial:
      return "gcd-trivial";
    case UnitRootMethod::cyclotomic_factor:
      return "cyclotomic-factor";
    case UnitRootMethod::isolated_interval:
      return "isolated-interval";
  }
  return "unknown";
}

Json UnitRootCertificate::to_json() const {
  Json out;
  out["verdict"] = to_string(verdict);
  out["method"] = to_string(method);
  out["polynomial"] = polynomial.to_json();
  out["reciprocal_gcd"] = reciprocal_gcd.to_json();
  if (cyclotomic_index) {
    out["witness"] = {{"cyclotomic_index", *cyclotomic_index}, {"factor", cyclotomic(*cyclotomic_index).to_json()}};
  } else if (trace_witness) {
    out["witness"] = {{"trace_polynomial", trace_witness->trace_poly.to_json()},
                      {"interval", Json::array({encode_rational(trace_witness->lo), encode_rational(trace_witness->hi)})}};
  }
  if (method == UnitRootMethod::isolated_interval) {
    out["precision_bits"] = precision_bits;
    Json disks = Json::array();
    for (const auto& e : enclosures)
      disks.push_back({{"center", Json::array({encode_rational(e.re), encode_rational(e.im)})},
                       {"radius_sq", encode_rational(e.radius_sq)},
                       {"side", e.outside ? "outside" : "inside"},
                       {"margin", encode_rational(e.margin)}});
    out["enclosures"] = std::move(disks);
  }
  return out;
}

unsigned default_budget_bits() {
  const char* env = std::getenv("ANOSOGRAPH_BUDGET_BITS");
  if (!env || !*env) return 256;
  unsigned bits = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, bits);
  if (ec != std::errc() || ptr != end || bits < 16)
    throw Error("ANOSOGRAPH_BUDGET_BITS must be an integer >= 16, got '" + std::string(env) + "'");
  return bits;
}

namespace {

std::optional<TraceWitness> trace_root_on_circle(const IntPolynomial& h) {
  IntPolynomial q = trace_polynomial(h);
  const Rational lo(-2), hi(2);
  if (sturm_count(q, lo, hi) == 0) return std::nullopt;
  TraceWitness w{q, lo, hi};
  // Bisect down to an interval isolating one root.
  while (sturm_count(q, w.lo, w.hi) > 1 || w.hi - w.lo > Rational(1, 1024)) {
    Rational mid = (w.lo + w.hi) / 2;
    if (q.evaluate(mid) == 0) {
      w.lo = w.hi = mid;
      break;
    }
    if (sturm_count(q, w.lo, mid) > 0)
      w.hi = mid;
    else
      w.lo = mid;
  }
  return w;
}

}  // namespace

UnitRootCertificate unit_root_free(const IntPolynomial& p, unsigned budget_bits) {
  if (p.is_zero()) throw Error("unit_root_free: zero polynomial");
  if (p.coeff(0) == 0) throw Error("unit_root_free: zero is a root (p(0) = 0)");
  UnitRootCertificate cert;
  cert.polynomial = p;
  const IntPolynomial pp = p.primitive();
  cert.reciprocal_gcd = gcd(pp, pp.reversed());
  if (cert.reciprocal_gcd.degree() <= 0) {
    cert.method = UnitRootMethod::gcd_trivial;
    return cert;
  }

  const IntPolynomial h = squarefree_part(cert.reciprocal_gcd);
  const std::size_t deg = static_cast<std::size_t>(h.degree());
  // phi(d) >= sqrt(d/2), so phi(d) <= deg forces d <= 2 deg^2.
  for (std::size_t d = 1; d <= 2 * deg * deg + 2; ++d) {
    if (euler_phi(d) > deg) continue;
    if (divide_exact(h, cyclotomic(d))) {
      cert.verdict = UnitRootVerdict::not_free;
      cert.method = UnitRootMethod::cyclotomic_factor;
      cert.cyclotomic_index = d;
      return cert;
    }
  }

  cert.method = UnitRootMethod::isolated_interval;
  if (auto disks = enclose_roots(h, budget_bits, &cert.precision_bits)) {
    cert.enclosures = std::move(*disks);
    return cert;
  }
  // A root on the circle can never be enclosed decisively; look for one exactly.
  if (h.degree() % 2 != 0 || !(h.reversed() == h))
    throw InvariantViolation("squarefree reciprocal part is not self-reciprocal of even degree");
  if (auto w = trace_root_on_circle(h)) {
    cert.verdict = UnitRootVerdict::not_free;
    cert.trace_witness = std::move(w);
    cert.precision_bits = budget_bits;
    return cert;
  }
  throw Indeterminate("unit_root_free: enclosures of " + h.to_string() + " not decisive within " +
                      std::to_string(budget_bits) + " bits");
}

Json ProductsReport::to_json() const {
  Json out;
  out["off_circle"] = off_circle;
  out["r_max"] = r_max;
  Json per_r = Json::array();
  for (std::size_t i = 0; i < certificates.size(); ++i)
    per_r.push_back({{"r", i + 1}, {"char_poly", char_polys[i].to_json()}, {"certificate", certificates[i].to_json()}});
  out["orders"] = std::move(per_r);
  return out;
}

ProductsReport products_off_circle(const IntMatrix& a, std::size_t r_max, unsigned budget_bits) {
  if (!a.square()) throw DimensionMismatch("products_off_circle: matrix is not square");
  if (r_max < 1 || r_max > a.rows())
    throw Error("products_off_circle: r_max " + std::to_string(r_max) + " outside [1, " + std::to_string(a.rows()) +
                "]");
  ProductsReport report;
  report.r_max = r_max;
  for (std::size_t r = 1; r <= r_max; ++r) {
    IntPolynomial cp = char_poly(compound_matrix(a, r));
    // Zero products are off the circle; drop the factor x^v before certifying.
    std::size_t v = 0;
    while (cp.coeff(v) == 0) ++v;
    std::vector<Integer> shifted(cp.coefficients().begin() + static_cast<std::ptrdiff_t>(v), cp.coefficients().end());
    UnitRootCertificate cert = unit_root_free(IntPolynomial(std::move(shifted)), budget_bits);
    report.char_polys.push_back(std::move(cp));
    const bool free = cert.is_free();
    report.certificates.push_back(std::move(cert));
    if (!free) {
      report.off_circle = false;
      break;
    }
  }
  return report;
}

}  // namespace anosograph
