#include "anosograph/polynomial.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace anosograph {

IntPolynomial::IntPolynomial(std::vector<Integer> ascending) : c_(std::move(ascending)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> ascending) {
  for (long v : ascending) c_.emplace_back(v);
  trim();
}

IntPolynomial IntPolynomial::monomial(std::size_t degree, const Integer& coeff) {
  std::vector<Integer> c(degree + 1);
  c[degree] = coeff;
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::x_minus(const Integer& root) { return IntPolynomial(std::vector<Integer>{-root, 1}); }

void IntPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer IntPolynomial::content() const {
  Integer g = 0;
  for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntPolynomial IntPolynomial::primitive() const {
  if (is_zero()) return {};
  Integer g = content();
  if (leading() < 0) g = -g;
  std::vector<Integer> c = c_;
  for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Integer> c(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::reversed() const {
  std::vector<Integer> c(c_.rbegin(), c_.rend());
  return IntPolynomial(std::move(c));
}

Integer IntPolynomial::evaluate(const Integer& x) const {
  Integer acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<Integer> c = c_;
  for (auto& x : c) x = -x;
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const Integer& s, const IntPolynomial& a) {
  std::vector<Integer> c = a.c_;
  for (auto& x : c) x *= s;
  return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const Integer& a = c_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    Integer mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

Json IntPolynomial::to_json() const {
  Json coeffs = Json::array();
  for (const auto& x : c_) coeffs.push_back(encode_integer(x));
  return coeffs;
}

IntPolynomial IntPolynomial::from_json(const Json& j) {
  if (!j.is_array()) throw ParseError(0, "polynomial must be an array of coefficients");
  std::vector<Integer> c;
  for (const auto& x : j) c.push_back(decode_integer(x));
  return IntPolynomial(std::move(c));
}

std::optional<IntPolynomial> divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw Error("division by the zero polynomial");
  if (a.is_zero()) return IntPolynomial{};
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<Integer> rem = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  std::vector<Integer> q(rem.size() - db);
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i] == 0) continue;
    if (!mpz_divisible_p(rem[i].get_mpz_t(), bc[db].get_mpz_t())) return std::nullopt;
    Integer t;
    mpz_divexact(t.get_mpz_t(), rem[i].get_mpz_t(), bc[db].get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= t * bc[j];
    q[i - db] = std::move(t);
  }
  for (const auto& r : rem)
    if (r != 0) return std::nullopt;
  return IntPolynomial(std::move(q));
}

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw Error("pseudo-remainder by the zero polynomial");
  std::vector<Integer> r = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  const Integer& lb = bc[db];
  while (r.size() > db && !r.empty()) {
    const Integer lr = r.back();
    const std::size_t shift = r.size() - 1 - db;
    for (auto& x : r) x *= lb;
    for (std::size_t j = 0; j <= db; ++j) r[shift + j] -= lr * bc[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return IntPolynomial(std::move(r));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial x = a.primitive();
  IntPolynomial y = b.primitive();
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPolynomial r = pseudo_remainder(x, y).primitive();
    x = std::move(y);
    y = std::move(r);
  }
  return x.primitive();
}

IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.degree() <= 0) return p.primitive();
  IntPolynomial g = gcd(p, p.derivative());
  auto q = divide_exact(p.primitive(), g);
  if (!q) throw InvariantViolation("gcd does not divide its argument");
  return q->primitive();
}

std::size_t euler_phi(std::size_t n) {
  std::size_t result = n;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

IntPolynomial cyclotomic(std::size_t d) {
  if (d == 0) throw Error("cyclotomic: index must be positive");
  static std::mutex mutex;
  static std::map<std::size_t, IntPolynomial> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }
  // x^d - 1 = prod_{e | d} Phi_e
  IntPolynomial p = IntPolynomial::monomial(d) - IntPolynomial{1};
  for (std::size_t e = 1; e < d; ++e) {
    if (d % e) continue;
    auto q = divide_exact(p, cyclotomic(e));
    if (!q) throw InvariantViolation("cyclotomic factor does not divide x^d - 1");
    p = std::move(*q);
  }
  std::lock_guard lock(mutex);
  cache.emplace(d, p);
  return p;
}

}  // namespace anosograph
