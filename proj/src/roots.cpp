// Root enclosures for integer polynomials: Aberth iteration in MPFR, then
// exact certification of inclusion disks over Gaussian rationals.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anosograph/spectra.hpp"

namespace anosograph {

namespace {

class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
  Real(const Real& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(x_, mpfr_get_prec(o.x_));
      mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
  }
  ~Real() { mpfr_clear(x_); }

  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

 private:
  mpfr_t x_;
};

struct Complex {
  Real re, im;
  explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}
};

// out = a * b; `out` must not alias.
void mul(Complex& out, const Complex& a, const Complex& b, Real& t) {
  mpfr_mul(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(out.re.get(), out.re.get(), t.get(), MPFR_RNDN);
  mpfr_mul(out.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), out.im.get(), t.get(), MPFR_RNDN);
}

// out = a / b; `out` must not alias.
void div(Complex& out, const Complex& a, const Complex& b, Real& t, Real& s) {
  mpfr_sqr(s.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDN);
  mpfr_mul(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(out.re.get(), out.re.get(), t.get(), MPFR_RNDN);
  mpfr_mul(out.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(out.im.get(), out.im.get(), t.get(), MPFR_RNDN);
  mpfr_div(out.re.get(), out.re.get(), s.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), out.im.get(), s.get(), MPFR_RNDN);
}

double log_abs(const Integer& z) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::numbers::ln2;
}

// Starting points on circles read off the Newton polygon of log|a_i|.
std::vector<Complex> initial_guesses(const IntPolynomial& p, mpfr_prec_t prec) {
  const auto& c = p.coefficients();
  const std::size_t n = c.size() - 1;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i <= n; ++i)
    if (c[i] != 0) pts.emplace_back(static_cast<double>(i), log_abs(c[i]));
  std::vector<std::pair<double, double>> hull;
  for (const auto& q : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b.first - a.first) * (q.second - a.second) - (b.second - a.second) * (q.first - a.first);
      if (cross < 0) break;
      hull.pop_back();
    }
    hull.push_back(q);
  }
  std::vector<Complex> z;
  z.reserve(n);
  Real rad(prec), ang(prec), t(prec);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const auto count = static_cast<std::size_t>(hull[h + 1].first - hull[h].first);
    const double log_r = (hull[h].second - hull[h + 1].second) / static_cast<double>(count);
    mpfr_set_d(rad.get(), log_r, MPFR_RNDN);
    mpfr_exp(rad.get(), rad.get(), MPFR_RNDN);
    for (std::size_t l = 0; l < count; ++l) {
      const double theta = 2 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(count) +
                           2 * std::numbers::pi * hull[h].first / static_cast<double>(n) + 0.7;
      Complex w(prec);
      mpfr_set_d(ang.get(), theta, MPFR_RNDN);
      mpfr_cos(t.get(), ang.get(), MPFR_RNDN);
      mpfr_mul(w.re.get(), rad.get(), t.get(), MPFR_RNDN);
      mpfr_sin(t.get(), ang.get(), MPFR_RNDN);
      mpfr_mul(w.im.get(), rad.get(), t.get(), MPFR_RNDN);
      z.push_back(std::move(w));
    }
  }
  return z;
}

// Simultaneous Aberth iteration; returns when every correction is below
// 2^(10 - prec) relative to its root, or after the iteration cap.
void aberth(const IntPolynomial& p, std::vector<Complex>& z, mpfr_prec_t prec) {
  const auto& c = p.coefficients();
  const IntPolynomial dp = p.derivative();
  const auto& dc = dp.coefficients();
  const std::size_t n = z.size();
  for (auto& w : z) {
    mpfr_prec_round(w.re.get(), prec, MPFR_RNDN);
    mpfr_prec_round(w.im.get(), prec, MPFR_RNDN);
  }
  Complex val(prec), der(prec), ratio(prec), sum(prec), diff(prec), inv(prec), tmp(prec), step(prec), one(prec);
  mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
  Real t(prec), s(prec), mag(prec), bound(prec);
  auto horner = [&](const std::vector<Integer>& coeffs, const Complex& x, Complex& out) {
    mpfr_set_zero(out.re.get(), 1);
    mpfr_set_zero(out.im.get(), 1);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      mul(tmp, out, x, t);
      mpfr_add_z(out.re.get(), tmp.re.get(), it->get_mpz_t(), MPFR_RNDN);
      mpfr_set(out.im.get(), tmp.im.get(), MPFR_RNDN);
    }
  };
  const std::size_t max_iter = 100 + 20 * n;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    bool converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      horner(c, z[i], val);
      if (mpfr_zero_p(val.re.get()) && mpfr_zero_p(val.im.get())) continue;
      horner(dc, z[i], der);
      if (mpfr_zero_p(der.re.get()) && mpfr_zero_p(der.im.get())) {
        // Stationary point: nudge off it.
        mpfr_mul_2si(t.get(), one.re.get(), 10 - static_cast<long>(prec) / 2, MPFR_RNDN);
        mpfr_add(z[i].re.get(), z[i].re.get(), t.get(), MPFR_RNDN);
        converged = false;
        continue;
      }
      div(ratio, val, der, t, s);
      mpfr_set_zero(sum.re.get(), 1);
      mpfr_set_zero(sum.im.get(), 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        mpfr_sub(diff.re.get(), z[i].re.get(), z[j].re.get(), MPFR_RNDN);
        mpfr_sub(diff.im.get(), z[i].im.get(), z[j].im.get(), MPFR_RNDN);
        if (mpfr_zero_p(diff.re.get()) && mpfr_zero_p(diff.im.get())) continue;
        div(inv, one, diff, t, s);
        mpfr_add(sum.re.get(), sum.re.get(), inv.re.get(), MPFR_RNDN);
        mpfr_add(sum.im.get(), sum.im.get(), inv.im.get(), MPFR_RNDN);
      }
      // step = ratio / (1 - ratio * sum)
      mul(tmp, ratio, sum, t);
      mpfr_ui_sub(tmp.re.get(), 1, tmp.re.get(), MPFR_RNDN);
      mpfr_neg(tmp.im.get(), tmp.im.get(), MPFR_RNDN);
      if (mpfr_zero_p(tmp.re.get()) && mpfr_zero_p(tmp.im.get())) {
        step = ratio;
      } else {
        div(step, ratio, tmp, t, s);
      }
      mpfr_sub(z[i].re.get(), z[i].re.get(), step.re.get(), MPFR_RNDN);
      mpfr_sub(z[i].im.get(), z[i].im.get(), step.im.get(), MPFR_RNDN);
      // |step|^2 against 2^(20 - 2 prec) |z|^2
      mpfr_sqr(mag.get(), step.re.get(), MPFR_RNDN);
      mpfr_sqr(t.get(), step.im.get(), MPFR_RNDN);
      mpfr_add(mag.get(), mag.get(), t.get(), MPFR_RNDN);
      mpfr_sqr(bound.get(), z[i].re.get(), MPFR_RNDN);
      mpfr_sqr(t.get(), z[i].im.get(), MPFR_RNDN);
      mpfr_add(bound.get(), bound.get(), t.get(), MPFR_RNDN);
      mpfr_mul_2si(bound.get(), bound.get(), 20 - 2 * static_cast<long>(prec), MPFR_RNDN);
      if (mpfr_cmp(mag.get(), bound.get()) > 0) converged = false;
    }
    if (converged) break;
  }
}

Rational to_exact(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return 0;
  Integer m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational q(m);
  if (e >= 0)
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return q;
}

// Bounds floor/ceil(sqrt(q) * 2^s) / 2^s for q >= 0.
std::pair<Rational, Rational> sqrt_bounds(const Rational& q, unsigned s) {
  Integer scaled_num = q.get_num();
  mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), 2 * s);
  Integer lo_sq, hi_sq;
  mpz_fdiv_q(lo_sq.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den().get_mpz_t());
  mpz_cdiv_q(hi_sq.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den().get_mpz_t());
  Integer lo, hi, rem;
  mpz_sqrt(lo.get_mpz_t(), lo_sq.get_mpz_t());
  mpz_sqrtrem(hi.get_mpz_t(), rem.get_mpz_t(), hi_sq.get_mpz_t());
  if (rem != 0) ++hi;
  Rational a(lo), b(hi);
  mpq_div_2exp(a.get_mpq_t(), a.get_mpq_t(), s);
  mpq_div_2exp(b.get_mpq_t(), b.get_mpq_t(), s);
  return {a, b};
}

// x > 0 and x^2 > 4y, i.e. x > 2 sqrt(y).
bool exceeds_twice_root(const Rational& x, const Rational& y) { return x > 0 && x * x > 4 * y; }

std::optional<std::vector<RootEnclosure>> certify(const IntPolynomial& p, const std::vector<Complex>& z) {
  const std::size_t n = z.size();
  const auto& c = p.coefficients();
  std::vector<Rational> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = to_exact(z[i].re.get());
    im[i] = to_exact(z[i].im.get());
  }
  std::vector<RootEnclosure> disks(n);
  const Rational lead_sq = Rational(c.back() * c.back());
  const Rational n_sq = Rational(static_cast<unsigned long>(n * n));
  for (std::size_t i = 0; i < n; ++i) {
    // Radius n |p(z_i)| / (|a_n| prod |z_i - z_j|) encloses one root when disks are disjoint.
    Rational vr = 0, vi = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      Rational nr = vr * re[i] - vi * im[i] + Rational(*it);
      vi = vr * im[i] + vi * re[i];
      vr = std::move(nr);
    }
    Rational denom = lead_sq;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Rational dr = re[i] - re[j];
      const Rational di = im[i] - im[j];
      denom *= dr * dr + di * di;
    }
    if (denom == 0) return std::nullopt;
    RootEnclosure& d = disks[i];
    d.re = re[i];
    d.im = im[i];
    d.radius_sq = n_sq * (vr * vr + vi * vi) / denom;
    const Rational c2 = re[i] * re[i] + im[i] * im[i];
    if (exceeds_twice_root(c2 - 1 - d.radius_sq, d.radius_sq)) {
      d.outside = true;
    } else if (d.radius_sq < 1 && exceeds_twice_root(1 + d.radius_sq - c2, d.radius_sq)) {
      d.outside = false;
    } else {
      return std::nullopt;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Rational dr = re[i] - re[j];
      const Rational di = im[i] - im[j];
      if (!exceeds_twice_root(dr * dr + di * di - disks[i].radius_sq - disks[j].radius_sq,
                              disks[i].radius_sq * disks[j].radius_sq))
        return std::nullopt;
    }
  for (auto& d : disks) {
    const Rational c2 = d.re * d.re + d.im * d.im;
    for (unsigned s = 64;; s *= 2) {
      auto [c_lo, c_hi] = sqrt_bounds(c2, s);
      auto [r_lo, r_hi] = sqrt_bounds(d.radius_sq, s);
      d.margin = d.outside ? Rational(c_lo - r_hi - 1) : Rational(1 - c_hi - r_hi);
      if (d.margin > 0) break;
    }
  }
  return disks;
}

}  // namespace

std::optional<std::vector<RootEnclosure>> enclose_roots(const IntPolynomial& p, unsigned budget_bits,
                                                        unsigned* used_bits) {
  if (p.degree() < 1) return std::vector<RootEnclosure>{};
  if (p.coeff(0) == 0) throw Error("enclose_roots: zero is a root");
  unsigned prec = std::min(64u, budget_bits);
  std::vector<Complex> z = initial_guesses(p, prec);
  while (true) {
    aberth(p, z, prec);
    if (auto disks = certify(p, z)) {
      if (used_bits) *used_bits = prec;
      return disks;
    }
    if (prec >= budget_bits) return std::nullopt;
    prec = std::min(2 * prec, budget_bits);
  }
}

namespace {

using RatPoly = std::vector<Rational>;  // ascending, trimmed

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly remainder(RatPoly a, const RatPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    a.pop_back();
    trim(a);
  }
  return a;
}

int sign_at(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return sgn(acc);
}

std::size_t sign_changes(const std::vector<RatPoly>& seq, const Rational& x) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& s : seq) {
    const int v = sign_at(s, x);
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

}  // namespace

std::size_t sturm_count(const IntPolynomial& p, const Rational& lo, const Rational& hi) {
  if (p.degree() < 1) return 0;
  if (p.evaluate(lo) == 0 || p.evaluate(hi) == 0) throw Error("sturm_count: interval endpoint is a root");
  std::vector<RatPoly> seq;
  RatPoly a, b;
  for (const auto& x : p.coefficients()) a.emplace_back(x);
  const IntPolynomial dp = p.derivative();
  for (const auto& x : dp.coefficients()) b.emplace_back(x);
  seq.push_back(a);
  while (!b.empty()) {
    seq.push_back(b);
    RatPoly r = remainder(a, b);
    for (auto& x : r) x = -x;
    a = std::move(b);
    b = std::move(r);
  }
  const std::size_t vl = sign_changes(seq, lo);
  const std::size_t vh = sign_changes(seq, hi);
  return vl >= vh ? vl - vh : 0;
}

IntPolynomial trace_polynomial(const IntPolynomial& p) {
  if (p.degree() < 0 || p.degree() % 2 != 0 || !(p.reversed() == p))
    throw Error("trace_polynomial: polynomial is not self-reciprocal of even degree");
  const std::size_t m = static_cast<std::size_t>(p.degree()) / 2;
  // D_j(t) = x^j + x^-j: D_0 = 2, D_1 = t, D_j = t D_{j-1} - D_{j-2}.
  IntPolynomial prev{2}, cur{0, 1};
  const IntPolynomial t{0, 1};
  IntPolynomial q{};
  q = q + IntPolynomial(std::vector<Integer>{p.coeff(m)});
  for (std::size_t j = 1; j <= m; ++j) {
    q = q + p.coeff(m + j) * cur;
    IntPolynomial next = t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return q;
}

}  // namespace anosograph
