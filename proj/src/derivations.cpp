#include "anosograph/derivations.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "anosograph/anosov.hpp"
#include "anosograph/spectra.hpp"

namespace anosograph {

// ---------------------------------------------------------------------------
// Quotient specifications

QuotientSpec QuotientSpec::from_json(const Json& j) {
  QuotientSpec spec;
  try {
    if (!j.is_object()) throw ParseError(0, "quotient spec must be a JSON object");
    spec.step = j.at("step").get<std::size_t>();
    if (spec.step != 2 && spec.step != 3) throw SpecError("quotient spec step must be 2 or 3");
    const Json& x = j.at("X");
    if (!x.is_array() || x.empty()) throw SpecError("quotient spec X must be a nonempty list of bracket terms");
    for (const auto& t : x) {
      BracketTerm term;
      term.labels = t.at("bracket").get<std::vector<std::string>>();
      if (t.contains("coefficient")) term.coefficient = decode_rational(t.at("coefficient"));
      if (term.labels.size() != spec.step)
        throw SpecError("bracket " + std::to_string(spec.terms.size()) + " must name " + std::to_string(spec.step) +
                        " vertices");
      spec.terms.push_back(std::move(term));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("quotient spec: ") + e.what());
  }
  return spec;
}

Json QuotientSpec::to_json() const {
  Json terms_json = Json::array();
  for (const auto& t : terms) terms_json.push_back({{"bracket", t.labels}, {"coefficient", encode_rational(t.coefficient)}});
  Json out;
  out["step"] = step;
  out["X"] = std::move(terms_json);
  return out;
}

namespace {

std::size_t vertex(const Graph& g, const std::string& label) {
  const auto& v = g.vertices();
  auto it = std::find(v.begin(), v.end(), label);
  if (it == v.end()) throw SpecError("quotient spec names unknown vertex '" + label + "'");
  return static_cast<std::size_t>(it - v.begin());
}

Json encode_rational_matrix(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(encode_rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

SparseVector unit(std::size_t i) { return SparseVector{{i, Rational(1)}}; }

}  // namespace

QuadrupleRoles quadruple_roles(const Graph& g, const QuotientSpec& spec) {
  if (spec.step != 2) throw SpecError("X = [alpha, beta] + [gamma, delta] needs a step-2 spec");
  if (spec.terms.size() != 2)
    throw SpecError("X must be the sum of exactly two brackets [alpha, beta] + [gamma, delta], got " +
                    std::to_string(spec.terms.size()));
  for (const auto& t : spec.terms)
    if (t.coefficient != 1) throw SpecError("X must have unit coefficients, got " + to_string(t.coefficient));
  const std::size_t a = vertex(g, spec.terms[0].labels[0]);
  const std::size_t b = vertex(g, spec.terms[0].labels[1]);
  const std::size_t c = vertex(g, spec.terms[1].labels[0]);
  const std::size_t d = vertex(g, spec.terms[1].labels[1]);
  if (std::set<std::size_t>{a, b, c, d}.size() != 4) throw SpecError("alpha, beta, gamma, delta must be distinct");
  if (!g.adjacent(a, b) || !g.adjacent(c, d)) throw SpecError("both brackets in X must be edges");
  // The same line <X> under swapping the terms and under reversing both.
  for (QuadrupleRoles r : {QuadrupleRoles{a, b, c, d}, QuadrupleRoles{c, d, a, b}, QuadrupleRoles{b, a, d, c},
                           QuadrupleRoles{d, c, b, a}})
    if (g.adjacent(r.alpha, r.gamma) && g.adjacent(r.alpha, r.delta)) return r;
  throw SpecError("no assignment of X = [alpha, beta] + [gamma, delta] has alpha gamma and alpha delta as edges");
}

SparseVector quotient_vector(const GradedLieAlgebra& h, const Graph& g, const QuotientSpec& spec) {
  if (h.step() != spec.step) throw SpecError("algebra step differs from the spec step");
  SparseVector x;
  if (spec.step == 2) {
    const QuadrupleRoles r = quadruple_roles(g, spec);
    axpy(x, 1, h.bracket(r.alpha, r.beta));
    axpy(x, 1, h.bracket(r.gamma, r.delta));
  } else {
    for (const auto& t : spec.terms) {
      const std::size_t a = vertex(g, t.labels[0]);
      const std::size_t b = vertex(g, t.labels[1]);
      const std::size_t c = vertex(g, t.labels[2]);
      axpy(x, t.coefficient, h.bracket(unit(a), h.bracket(b, c)));
    }
  }
  if (x.empty()) throw SpecError("X is zero in the top-degree component");
  return x;
}

GradedLieAlgebra build_quotient(const Graph& g, const QuotientSpec& spec) {
  const GradedLieAlgebra h = quotient_algebra(g, spec.step);
  return quotient_top_degree(h, {quotient_vector(h, g, spec)}).algebra;
}

// ---------------------------------------------------------------------------
// Derivations

namespace {

SparseVector apply_map(const std::vector<SparseVector>& img, const SparseVector& v) {
  SparseVector out;
  for (const auto& [c, x] : v) axpy(out, x, img[c]);
  return out;
}

// Fills images of higher basis elements from those on V by the Leibniz rule.
void leibniz_extend(const GradedLieAlgebra& a, std::vector<SparseVector>& img) {
  for (std::size_t i = a.dim(1); i < a.dim(); ++i) {
    const auto& f = a.factors(i);
    if (!f) throw InvariantViolation("basis element without a factor pair");
    img[i] = a.bracket(apply_map(img, f->first), f->second);
    axpy(img[i], 1, a.bracket(f->first, apply_map(img, f->second)));
  }
}

SparseVector derivation_defect(const GradedLieAlgebra& a, const std::vector<SparseVector>& img, std::size_t i,
                               std::size_t j) {
  SparseVector d = apply_map(img, a.bracket(i, j));
  axpy(d, -1, a.bracket(img[i], unit(j)));
  axpy(d, -1, a.bracket(unit(i), img[j]));
  return d;
}

std::vector<SparseVector> images_of(const RatMatrix& m) {
  std::vector<SparseVector> img(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) img[j].emplace_back(i, m(i, j));
  return img;
}

RatMatrix matrix_of(const std::vector<SparseVector>& img, std::size_t dim) {
  RatMatrix m(dim, img.size());
  for (std::size_t j = 0; j < img.size(); ++j)
    for (const auto& [i, x] : img[j]) m(i, j) = x;
  return m;
}

// Unknown u = r * n + c is the coefficient of e_r in D e_c, c in V. Every
// derivation is determined by D|V; a combination of Leibniz extensions is one
// iff it satisfies the identity on the pairs (e_a in V, e_j): the elements x
// with D[x, .] = [Dx, .] + [x, D.] form a subalgebra.
struct DerivationSystem {
  std::size_t rows = 0;                          // targets: n or dim
  std::vector<std::vector<SparseVector>> images;  // per unknown, on the whole algebra
  std::vector<SparseVector> kernel;              // reduced echelon basis over unknowns (+ extra)
};

DerivationSystem solve_derivations(const GradedLieAlgebra& a, bool stabilize_v,
                                   const std::optional<SparseVector>& keep_line = std::nullopt) {
  const std::size_t n = a.dim(1);
  const std::size_t dim = a.dim();
  DerivationSystem sys;
  sys.rows = stabilize_v ? n : dim;
  const std::size_t unknowns = sys.rows * n;
  const std::size_t line_block = n * dim * dim;
  RelationFinder finder;
  for (std::size_t u = 0; u < unknowns; ++u) {
    std::vector<SparseVector> img(dim);
    img[u % n] = unit(u / n);
    leibniz_extend(a, img);
    SparseVector packed;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        if (1 + a.degree_of(j) > a.step()) continue;
        for (auto& [t, x] : derivation_defect(a, img, i, j)) packed.emplace_back((i * dim + j) * dim + t, std::move(x));
      }
    if (keep_line)
      for (auto& [t, x] : apply_map(img, *keep_line)) packed.emplace_back(line_block + t, std::move(x));
    finder.push(std::move(packed));
    sys.images.push_back(std::move(img));
  }
  std::size_t total = unknowns;
  if (keep_line) {
    // Extra unknown c with D X = c X.
    SparseVector packed;
    for (const auto& [t, x] : *keep_line) packed.emplace_back(line_block + t, -x);
    finder.push(std::move(packed));
    ++total;
  }
  Subspace kernel(total);
  for (const auto& r : finder.relations()) kernel.add(r);
  sys.kernel = kernel.rows();
  return sys;
}

RatMatrix combine(const DerivationSystem& sys, const SparseVector& coeffs, std::size_t dim) {
  std::vector<SparseVector> img(dim);
  for (const auto& [u, x] : coeffs) {
    if (u >= sys.images.size()) continue;
    for (std::size_t j = 0; j < dim; ++j) axpy(img[j], x, sys.images[u][j]);
  }
  return matrix_of(img, dim);
}

}  // namespace

Json DerivationAlgebra::to_json() const {
  Json out;
  out["ambient_dim"] = ambient_dim;
  out["stabilizes_v"] = stabilizes_v;
  out["dimension"] = dimension();
  return out;
}

DerivationAlgebra derivation_algebra(const GradedLieAlgebra& a, bool stabilize_v) {
  DerivationAlgebra out;
  out.ambient_dim = a.dim();
  out.stabilizes_v = stabilize_v;
  const auto sys = solve_derivations(a, stabilize_v);
  for (const auto& k : sys.kernel) out.basis.push_back(combine(sys, k, a.dim()));
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> find_derivation_violation(const GradedLieAlgebra& a,
                                                                             const RatMatrix& d) {
  if (d.rows() != a.dim() || d.cols() != a.dim()) throw DimensionMismatch("derivation matrix has the wrong size");
  const auto img = images_of(d);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (!derivation_defect(a, img, i, j).empty()) return std::make_pair(i, j);
  return std::nullopt;
}

RatMatrix inner_derivation(const GradedLieAlgebra& a, const SparseVector& x) {
  std::vector<SparseVector> img(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) img[j] = a.bracket(x, unit(j));
  return matrix_of(img, a.dim());
}

std::optional<RatMatrix> extend_derivation(const GradedLieAlgebra& a, const RatMatrix& on_v) {
  const std::size_t n = a.dim(1);
  if (on_v.rows() != n || on_v.cols() != n) throw DimensionMismatch("map on V has the wrong size");
  std::vector<SparseVector> img(a.dim());
  const auto head = images_of(on_v);
  std::copy(head.begin(), head.end(), img.begin());
  leibniz_extend(a, img);
  RatMatrix d = matrix_of(img, a.dim());
  if (find_derivation_violation(a, d)) return std::nullopt;
  return d;
}

// ---------------------------------------------------------------------------
// Spanning-set and lifting reports

namespace {

// Coordinates of E_{rc} in End(V): r * n + c.
RatMatrix end_matrix(const SparseVector& v, std::size_t n) {
  RatMatrix m(n, n);
  for (const auto& [u, x] : v) m(u / n, u % n) = x;
  return m;
}

// Elements of span(rows) supported on `support`.
std::vector<SparseVector> restrict_to_support(const std::vector<SparseVector>& rows, const std::set<std::size_t>& support,
                                              std::size_t ambient) {
  if (rows.empty()) return {};
  std::vector<std::size_t> outside;
  for (std::size_t u = 0; u < ambient; ++u)
    if (!support.count(u)) outside.push_back(u);
  RatMatrix m(outside.size(), rows.size());
  for (std::size_t c = 0; c < rows.size(); ++c)
    for (const auto& [u, x] : rows[c]) {
      auto it = std::lower_bound(outside.begin(), outside.end(), u);
      if (it != outside.end() && *it == u) m(static_cast<std::size_t>(it - outside.begin()), c) = x;
    }
  Subspace result(ambient);
  for (const auto& y : outside.empty() ? std::vector<RatVector>{} : kernel_basis(m)) {
    SparseVector v;
    for (std::size_t c = 0; c < rows.size(); ++c)
      if (y[c] != 0) axpy(v, y[c], rows[c]);
    result.add(std::move(v));
  }
  if (outside.empty())
    for (const auto& r : rows) result.add(r);
  return result.rows();
}

}  // namespace

Json SpanReport::to_json() const {
  Json out;
  out["vertices"] = vertices;
  out["roles"] = {{"alpha", vertices[roles.alpha]}, {"beta", vertices[roles.beta]},
                  {"gamma", vertices[roles.gamma]}, {"delta", vertices[roles.delta]}};
  out["derivation_dim"] = algebra_dim;
  out["span_dim"] = span_dim;
  Json fams = Json::array();
  for (const auto& f : families) fams.push_back({{"family", f.name}, {"dimension", f.dimension}});
  out["families"] = std::move(fams);
  out["families_inside"] = families_inside;
  out["algebra_inside"] = algebra_inside;
  out["membership_agrees"] = membership_agrees;
  out["holds"] = holds();
  if (witness) out["witness"] = encode_rational_matrix(*witness);
  return out;
}

SpanReport span_report(const Graph& g, const QuotientSpec& spec) {
  SpanReport report;
  report.vertices = g.vertices();
  report.roles = quadruple_roles(g, spec);
  const GradedLieAlgebra h = build_quotient(g, spec);
  const std::size_t n = h.dim(1);
  const std::size_t ambient = n * n;
  const auto sys = solve_derivations(h, true);
  Subspace algebra(ambient);
  for (const auto& k : sys.kernel) algebra.add(k);
  report.algebra_dim = algebra.dim();

  const auto [al, be, ga, de] = report.roles;
  auto e = [n](std::size_t r, std::size_t c) { return r * n + c; };
  const std::set<std::size_t> sprime{al, be, ga, de};
  auto in_sprime = [&](std::size_t v) { return sprime.count(v) > 0; };

  std::vector<std::pair<std::string, std::set<std::size_t>>> coordinate_families;
  std::set<std::size_t> diagonal;
  for (std::size_t v = 0; v < n; ++v) diagonal.insert(e(v, v));
  coordinate_families.emplace_back("diagonal", diagonal);
  coordinate_families.emplace_back("W[alpha delta; gamma beta]", std::set<std::size_t>{e(al, de), e(ga, be)});
  coordinate_families.emplace_back("W[beta gamma; delta alpha]", std::set<std::size_t>{e(be, ga), e(de, al)});
  coordinate_families.emplace_back("W[alpha gamma; delta beta]", std::set<std::size_t>{e(al, ga), e(de, be)});
  coordinate_families.emplace_back("W[gamma alpha; beta delta]", std::set<std::size_t>{e(ga, al), e(be, de)});
  for (auto& [name, support] : coordinate_families) {
    FamilyReport f;
    f.name = name;
    for (const auto& v : restrict_to_support(algebra.rows(), support, ambient)) f.members.push_back(end_matrix(v, n));
    f.dimension = f.members.size();
    report.families.push_back(std::move(f));
  }

  // Single elementary maps of types (i)-(iv) that lie in the algebra.
  std::vector<std::pair<std::string, std::vector<std::pair<std::size_t, std::size_t>>>> singles(4);
  singles[0].first = "E[eta zeta], eta, zeta outside S'";
  singles[1].first = "E[eta zeta], eta in S', zeta outside S'";
  singles[2].first = "E[eta zeta], eta outside S', zeta in S'";
  singles[3].first = "E[alpha beta], E[gamma delta], E[beta alpha], E[delta gamma]";
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (r == c) continue;
      if (!in_sprime(r) && !in_sprime(c)) singles[0].second.emplace_back(r, c);
      if (in_sprime(r) && !in_sprime(c)) singles[1].second.emplace_back(r, c);
      if (!in_sprime(r) && in_sprime(c)) singles[2].second.emplace_back(r, c);
    }
  singles[3].second = {{al, be}, {ga, de}, {be, al}, {de, ga}};
  for (const auto& [name, list] : singles) {
    FamilyReport f;
    f.name = name;
    for (auto [r, c] : list)
      if (algebra.contains(unit(e(r, c)))) f.members.push_back(end_matrix(unit(e(r, c)), n));
    f.dimension = f.members.size();
    report.families.push_back(std::move(f));
  }

  // Direct derivation test for every elementary map against membership.
  for (std::size_t r = 0; r < n && report.membership_agrees; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const bool direct = extend_derivation(h, end_matrix(unit(e(r, c)), n)).has_value();
      if (direct != algebra.contains(unit(e(r, c)))) {
        report.membership_agrees = false;
        report.witness = end_matrix(unit(e(r, c)), n);
        break;
      }
    }

  Subspace span(ambient);
  for (const auto& f : report.families)
    for (const auto& m : f.members) {
      SparseVector v;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (m(r, c) != 0) v.emplace_back(e(r, c), m(r, c));
      if (!algebra.contains(v) && report.families_inside) {
        report.families_inside = false;
        report.witness = m;
      }
      span.add(std::move(v));
    }
  report.span_dim = span.dim();
  for (const auto& v : algebra.rows())
    if (!span.contains(v)) {
      report.algebra_inside = false;
      if (!report.witness) report.witness = end_matrix(v, n);
      break;
    }
  return report;
}

Json LiftReport::to_json() const {
  return {{"image_dim", image_dim}, {"target_dim", target_dim}, {"image_inside", image_inside}, {"holds", holds()}};
}

LiftReport lift_check(const Graph& g, const QuotientSpec& spec) {
  quadruple_roles(g, spec);
  const GradedLieAlgebra n_alg = quotient_algebra(g, 2);
  const SparseVector x = quotient_vector(n_alg, g, spec);
  const GradedLieAlgebra h = quotient_top_degree(n_alg, {x}).algebra;
  const std::size_t n = n_alg.dim(1);
  const std::size_t ambient = n * n;

  Subspace target(ambient);
  for (const auto& k : solve_derivations(h, true).kernel) target.add(k);

  // Derivations of N keeping V and <X>, restricted to V (drop the scalar c).
  Subspace image(ambient);
  for (const auto& k : solve_derivations(n_alg, true, x).kernel) {
    SparseVector v;
    for (const auto& [u, c] : k)
      if (u < ambient) v.emplace_back(u, c);
    image.add(std::move(v));
  }
  LiftReport report;
  report.image_dim = image.dim();
  report.target_dim = target.dim();
  for (const auto& v : image.rows())
    if (!target.contains(v)) report.image_inside = false;
  return report;
}

// ---------------------------------------------------------------------------
// Hyperbolic search

Json SearchFinding::to_json() const {
  Json polys = Json::array();
  for (const auto& p : char_polys) polys.push_back(p.to_json());
  return {{"phase", phase},
          {"matrix", encode_matrix(matrix)},
          {"char_poly", char_poly.to_json()},
          {"degree_char_polys", std::move(polys)},
          {"certificate", certificate}};
}

Json SearchReport::to_json() const {
  Json out;
  out["box"] = {{"entry_bound", entry_bound}, {"budget", budget}, {"seed", seed}};
  out["backend"] = backend;
  out["exhaustive_leaves"] = exhaustive_leaves;
  out["random_descents"] = random_descents;
  out["random_leaves"] = random_leaves;
  out["evaluated"] = evaluated;
  out["unimodular"] = unimodular;
  out["compatible"] = compatible;
  out["integral_unit_constant"] = integral;
  out["top_degree_unit_root"] = top_degree_unit_root;
  out["indeterminate"] = indeterminate;
  out["exhaustive"] = exhaustive;
  Json list = Json::array();
  for (const auto& f : findings) list.push_back(f.to_json());
  out["findings"] = std::move(list);
  return out;
}

namespace {

class Searcher {
 public:
  Searcher(const GradedLieAlgebra& a, const SearchConfig& cfg)
      : a_(a),
        cfg_(cfg),
        n_(a.dim(1)),
        w_(a.step() >= 2 ? a.dim(2) : 0),
        box_(kernels::CandidateSet::box(n_, cfg.entry_bound)),
        backend_(cfg.backend.value_or(kernels::best_backend())),
        rng_(cfg.seed) {
    report_.entry_bound = cfg.entry_bound;
    report_.budget = cfg.budget;
    report_.seed = cfg.seed;
    report_.backend = kernels::to_string(backend_);
    prepare_relations();
  }

  SearchReport run() {
    for (const auto& p : cfg_.plants) {
      if (p.rows() != n_ || p.cols() != n_) throw DimensionMismatch("planted matrix has the wrong size");
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          if (abs(p(i, j)) > cfg_.entry_bound) throw Error("planted matrix lies outside the search box");
      evaluate(p, "plant");
    }
    IntMatrix current(n_, n_);
    leaf_limit_ = (cfg_.budget + 1) / 2;
    node_limit_ = 16 * cfg_.budget + 1024;
    bool complete = dfs(0, current, Subspace(n_));
    report_.exhaustive = complete;
    if (!complete) random_phase(cfg_.budget - leaves_);
    return std::move(report_);
  }

 private:
  // Relations among the brackets [e_a, e_b], a < b, grouped by the column b
  // at which they first appear. combo entries are indices into pairs_.
  void prepare_relations() {
    by_column_.assign(n_, {});
    if (w_ == 0) return;
    const std::size_t base = a_.offset(2);
    beta_.assign(n_ * n_, RatVector(w_));
    for (std::size_t c = 0; c < n_; ++c)
      for (std::size_t d = 0; d < n_; ++d)
        for (const auto& [t, x] : a_.bracket(c, d)) beta_[c * n_ + d][t - base] = x;
    RelationFinder finder;
    for (std::size_t b = 0; b < n_; ++b) {
      const std::size_t before = finder.relations().size();
      for (std::size_t x = 0; x < b; ++x) {
        pairs_.emplace_back(x, b);
        finder.push(to_sparse(beta_[x * n_ + b]));
      }
      for (std::size_t r = before; r < finder.relations().size(); ++r) by_column_[b].push_back(finder.relations()[r]);
    }
  }

  // Affine system C x + k = 0 on column j given columns < j; false if infeasible.
  bool column_system(std::size_t j, const IntMatrix& g, std::vector<std::int64_t>& constants,
                     std::vector<std::int64_t>& coeffs) const {
    constants.clear();
    coeffs.clear();
    for (const auto& rel : by_column_[j]) {
      std::vector<RatVector> coef(w_, RatVector(n_));
      RatVector cst(w_);
      for (const auto& [p, kappa] : rel) {
        const auto [x, b] = pairs_[p];
        if (b == j) {
          for (std::size_t c = 0; c < n_; ++c) {
            if (g(c, x) == 0) continue;
            for (std::size_t d = 0; d < n_; ++d)
              for (std::size_t t = 0; t < w_; ++t)
                if (beta_[c * n_ + d][t] != 0) coef[t][d] += kappa * g(c, x) * beta_[c * n_ + d][t];
          }
        } else {
          for (std::size_t c = 0; c < n_; ++c)
            for (std::size_t d = 0; d < n_; ++d) {
              if (g(c, x) == 0 || g(d, b) == 0) continue;
              for (std::size_t t = 0; t < w_; ++t)
                if (beta_[c * n_ + d][t] != 0) cst[t] += kappa * g(c, x) * g(d, b) * beta_[c * n_ + d][t];
            }
        }
      }
      for (std::size_t t = 0; t < w_; ++t) {
        Integer den = cst[t].get_den();
        bool zero = true;
        for (const auto& q : coef[t]) {
          mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
          zero = zero && q == 0;
        }
        if (zero) {
          if (cst[t] != 0) return false;
          continue;
        }
        auto narrow = [&](const Rational& q) {
          const Integer z = q.get_num() * (den / q.get_den());
          if (!z.fits_slong_p()) throw InvariantViolation("column system coefficient exceeds 64 bits");
          return static_cast<std::int64_t>(z.get_si());
        };
        constants.push_back(narrow(cst[t]));
        for (const auto& q : coef[t]) coeffs.push_back(narrow(q));
      }
    }
    return true;
  }

  std::vector<std::size_t> admissible(std::size_t j, const IntMatrix& g) const {
    std::vector<std::int64_t> constants, coeffs;
    if (!column_system(j, g, constants, coeffs)) return {};
    std::vector<std::uint8_t> keep(box_.count, 1);
    kernels::filter_affine_zero(constants, coeffs, box_, keep, backend_);
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < box_.count; ++c)
      if (keep[c]) out.push_back(c);
    return out;
  }

  SparseVector column_vector(std::size_t c) const {
    SparseVector v;
    for (std::size_t i = 0; i < n_; ++i)
      if (box_.at(i, c) != 0) v.emplace_back(i, Rational(box_.at(i, c)));
    return v;
  }

  void set_column(IntMatrix& g, std::size_t j, std::size_t c) const {
    for (std::size_t i = 0; i < n_; ++i) g(i, j) = box_.at(i, c);
  }

  // Returns true when the subtree was enumerated completely.
  bool dfs(std::size_t j, IntMatrix& g, const Subspace& span) {
    if (j == n_) {
      evaluate(g, "ordered");
      report_.exhaustive_leaves = ++leaves_;
      return leaves_ < leaf_limit_;
    }
    if (++nodes_ > node_limit_) return false;
    for (std::size_t c : admissible(j, g)) {
      Subspace next = span;
      if (!next.add(column_vector(c))) continue;
      set_column(g, j, c);
      if (!dfs(j + 1, g, next)) return false;
    }
    for (std::size_t i = 0; i < n_; ++i) g(i, j) = 0;
    return true;
  }

  // Each descent is a depth-first search in random order that stops at its
  // first leaf or after a fixed number of nodes.
  void random_phase(std::size_t descents) {
    for (std::size_t t = 0; t < descents; ++t) {
      IntMatrix g(n_, n_);
      std::size_t nodes = 0;
      ++report_.random_descents;
      random_descent(0, g, Subspace(n_), nodes);
    }
  }

  bool random_descent(std::size_t j, IntMatrix& g, const Subspace& span, std::size_t& nodes) {
    if (j == n_) {
      ++report_.random_leaves;
      evaluate(g, "random");
      return true;
    }
    if (++nodes > 4 * n_) return true;
    auto options = admissible(j, g);
    std::shuffle(options.begin(), options.end(), rng_);
    for (std::size_t c : options) {
      Subspace next = span;
      if (!next.add(column_vector(c))) continue;
      set_column(g, j, c);
      if (random_descent(j + 1, g, next, nodes)) return true;
    }
    return false;
  }

  void evaluate(const IntMatrix& g, const char* phase) {
    std::ostringstream key;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) key << g(i, j) << ',';
    if (!seen_.insert(key.str()).second) return;
    ++report_.evaluated;
    if (abs(determinant(g)) != 1) return;
    ++report_.unimodular;
    std::vector<RatMatrix> blocks;
    try {
      blocks = extend_to_algebra(a_, g);
    } catch (const DescentError&) {
      return;
    }
    ++report_.compatible;
    try {
      const IntPolynomial top = primitive_char_poly(blocks.back());
      if (top.evaluate(Integer(1)) == 0 || top.evaluate(Integer(-1)) == 0 ||
          !unit_root_free(top, cfg_.budget_bits).is_free()) {
        ++report_.top_degree_unit_root;
      }
    } catch (const Indeterminate&) {
      ++report_.indeterminate;
    }

    std::vector<IntPolynomial> polys;
    IntPolynomial full{1};
    for (const auto& b : blocks) {
      auto p = integral_char_poly(b);
      if (!p) return;
      full = full * *p;
      polys.push_back(std::move(*p));
    }
    if (abs(full.coeff(0)) != 1) return;
    ++report_.integral;
    if (full.evaluate(Integer(1)) == 0 || full.evaluate(Integer(-1)) == 0) return;
    UnitRootCertificate cert;
    try {
      cert = unit_root_free(full, cfg_.budget_bits);
    } catch (const Indeterminate&) {
      ++report_.indeterminate;
      return;
    }
    if (!cert.is_free()) return;
    report_.findings.push_back({g, phase, std::move(polys), full, cert.to_json()});
  }

  const GradedLieAlgebra& a_;
  const SearchConfig& cfg_;
  std::size_t n_;
  std::size_t w_;
  kernels::CandidateSet box_;
  kernels::Backend backend_;
  std::mt19937_64 rng_;
  std::vector<RatVector> beta_;  // [e_c, e_d] in degree-2 coordinates at c * n + d
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::vector<SparseVector>> by_column_;
  std::set<std::string> seen_;
  std::size_t leaves_ = 0;
  std::size_t nodes_ = 0;
  std::size_t leaf_limit_ = 0;
  std::size_t node_limit_ = 0;
  SearchReport report_;
};

}  // namespace

SearchReport hyperbolic_search(const GradedLieAlgebra& a, const SearchConfig& config) {
  if (config.entry_bound < 1) throw Error("hyperbolic_search: entry bound must be at least 1");
  return Searcher(a, config).run();
}

}  // namespace anosograph
