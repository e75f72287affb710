#include "anosograph/lyndon.hpp"

#include <algorithm>

namespace anosograph {

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  const std::size_t n = w.size();
  for (std::size_t r = 1; r < n; ++r) {
    // Compare w with its rotation starting at r.
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = w[i];
      const auto b = w[(r + i) % n];
      if (a < b) break;
      if (a > b || i + 1 == n) return false;
    }
  }
  return true;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  if (w.size() < 2) throw InvariantViolation("standard factorization needs a word of length >= 2");
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word suffix(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    if (is_lyndon(suffix)) return {Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)), suffix};
  }
  throw InvariantViolation("word has no Lyndon suffix");
}

namespace {

int mobius(std::size_t d) {
  int result = 1;
  for (std::size_t p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    d /= p;
    if (d % p == 0) return 0;
    result = -result;
  }
  if (d > 1) result = -result;
  return result;
}

}  // namespace

Integer witt_number(std::size_t n, std::size_t m) {
  if (m == 0) throw InvariantViolation("witt_number: degree must be positive");
  Integer sum = 0;
  for (std::size_t d = 1; d <= m; ++d) {
    if (m % d) continue;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), n, m / d);
    sum += mobius(d) * p;
  }
  return sum / static_cast<unsigned long>(m);
}

std::vector<std::size_t> LyndonBasis::dims() const {
  std::vector<std::size_t> out;
  for (const auto& w : words) out.push_back(w.size());
  return out;
}

LyndonBasis lyndon_basis(std::size_t n, std::size_t k) {
  if (k == 0) throw Error("lyndon_basis: step must be at least 1");
  if (n == 0) throw Error("lyndon_basis: at least one generator is required");
  LyndonBasis basis;
  basis.generators = n;
  basis.step = k;
  basis.words.resize(k);
  // Duval's generation: every Lyndon word of length <= k, in lexicographic order.
  Word w{0};
  while (!w.empty()) {
    basis.words[w.size() - 1].push_back(w);
    const std::size_t m = w.size();
    while (w.size() < k) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == n - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return basis;
}

FreeLieAlgebra::FreeLieAlgebra(std::size_t n, std::size_t k) : basis_(lyndon_basis(n, k)) {
  // Word codes are base-n integers; equal-length words compare like their codes.
  long double span = 1;
  for (std::size_t i = 0; i < k; ++i) span *= static_cast<long double>(n);
  if (span > 4.0e18L) throw Error("free Lie algebra too large: n^k exceeds the word-code range");
  powers_.assign(k + 1, 1);
  for (std::size_t i = 1; i <= k; ++i) powers_[i] = powers_[i - 1] * n;
  index_.resize(k);
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < basis_.words[m].size(); ++i) index_[m].emplace(code(basis_.words[m][i]), i);
}

std::uint64_t FreeLieAlgebra::code(const Word& w) const {
  std::uint64_t c = 0;
  for (auto letter : w) c = c * basis_.generators + letter;
  return c;
}

std::size_t FreeLieAlgebra::index_of(const Word& w) const {
  if (w.empty() || w.size() > step()) throw InvariantViolation("index_of: word degree out of range");
  auto it = index_[w.size() - 1].find(code(w));
  if (it == index_[w.size() - 1].end()) throw InvariantViolation("index_of: not a Lyndon word");
  return it->second;
}

FreeLieAlgebra::Poly FreeLieAlgebra::multiply(const Poly& a, std::size_t, const Poly& b,
                                              std::size_t len_b) const {
  Poly out;
  const std::uint64_t shift = powers_[len_b];
  for (const auto& [ca, xa] : a)
    for (const auto& [cb, xb] : b) {
      auto& slot = out[ca * shift + cb];
      slot += xa * xb;
    }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

const FreeLieAlgebra::Poly& FreeLieAlgebra::expansion(const Word& w) const {
  if (auto it = expansions_.find(w); it != expansions_.end()) return it->second;
  Poly p;
  if (w.size() == 1) {
    p[w[0]] = 1;
  } else {
    auto [u, v] = standard_factorization(w);
    const Poly& pu = expansion(u);
    const Poly& pv = expansion(v);
    p = multiply(pu, u.size(), pv, v.size());
    for (auto& [c, x] : multiply(pv, v.size(), pu, u.size())) p[c] -= x;
    std::erase_if(p, [](const auto& e) { return e.second == 0; });
  }
  return expansions_.emplace(w, std::move(p)).first->second;
}

SparseVector FreeLieAlgebra::to_lyndon(Poly p, std::size_t degree) const {
  // The expansion of a Lyndon bracket is its word plus strictly larger words,
  // so the smallest surviving word is always the next Lyndon coordinate.
  const auto& idx = index_[degree - 1];
  std::vector<std::pair<std::size_t, Integer>> coords;
  while (!p.empty()) {
    const auto [c, x] = *p.begin();
    auto it = idx.find(c);
    if (it == idx.end()) throw InvariantViolation("Lie polynomial has a non-Lyndon leading word");
    const Word& w = basis_.words[degree - 1][it->second];
    const Integer coeff = x;
    for (const auto& [cw, xw] : expansion(w)) {
      auto& slot = p[cw];
      slot -= coeff * xw;
      if (slot == 0) p.erase(cw);
    }
    coords.emplace_back(it->second, coeff);
  }
  std::sort(coords.begin(), coords.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector out;
  for (auto& [i, x] : coords) out.emplace_back(i, Rational(x));
  return out;
}

SparseVector FreeLieAlgebra::bracket(const Word& u, const Word& v) const {
  const std::size_t degree = u.size() + v.size();
  if (degree > step()) return {};
  const Poly& pu = expansion(u);
  const Poly& pv = expansion(v);
  Poly p = multiply(pu, u.size(), pv, v.size());
  for (auto& [c, x] : multiply(pv, v.size(), pu, u.size())) p[c] -= x;
  std::erase_if(p, [](const auto& e) { return e.second == 0; });
  return to_lyndon(std::move(p), degree);
}

}  // namespace anosograph
