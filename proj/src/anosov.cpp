#include "anosograph/anosov.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace anosograph {

std::string to_string(ViolationReason r) {
  return r == ViolationReason::singleton_class ? "singleton-class" : "internal-edge-in-small-class";
}

AnosovVerdict decide_anosov(const CoherentPartition& partition, std::size_t k) {
  if (k < 2) throw Error("decide_anosov: step must be at least 2");
  AnosovVerdict v;
  v.k = k;
  for (std::size_t c = 0; c < partition.class_count(); ++c) {
    const std::size_t size = partition.classes[c].size();
    if (size == 1) {
      v.violations.push_back({c, ViolationReason::singleton_class, std::nullopt});
    } else if (size <= k && !partition.internal_edges[c].empty()) {
      v.violations.push_back({c, ViolationReason::internal_edge_in_small_class, partition.internal_edges[c].front()});
    }
  }
  v.admits = v.violations.empty();
  return v;
}

Json to_json(const AnosovVerdict& v, const Graph& g) {
  Json out;
  out["k"] = v.k;
  out["admits"] = v.admits;
  Json list = Json::array();
  for (const auto& x : v.violations) {
    Json item;
    item["class"] = x.class_index;
    item["reason"] = to_string(x.reason);
    if (x.edge) item["edge"] = Json::array({g.label(x.edge->first), g.label(x.edge->second)});
    list.push_back(std::move(item));
  }
  out["violations"] = std::move(list);
  return out;
}

// ---------------------------------------------------------------------------

IntMatrix companion_matrix(const IntPolynomial& p) {
  if (p.degree() < 1 || p.leading() != 1) throw Error("companion_matrix: polynomial must be monic of degree >= 1");
  const std::size_t d = static_cast<std::size_t>(p.degree());
  IntMatrix c(d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) c(i, i + 1) = 1;
  for (std::size_t j = 0; j < d; ++j) c(d - 1, j) = -p.coeff(j);
  return c;
}

namespace {

// 0, -1, 1, -2, 2, ...
long ordered_value(std::size_t i) { return i == 0 ? 0 : (i % 2 ? -static_cast<long>((i + 1) / 2) : static_cast<long>(i / 2)); }

std::optional<ProductsReport> qualifies(const IntPolynomial& p, std::size_t r_max, unsigned bits) {
  if (p.evaluate(Integer(1)) == 0 || p.evaluate(Integer(-1)) == 0) return std::nullopt;
  try {
    ProductsReport report = products_off_circle(companion_matrix(p), r_max, bits);
    if (report.off_circle) return report;
  } catch (const Indeterminate&) {
    // An undecided candidate is skipped, never accepted.
  }
  return std::nullopt;
}

}  // namespace

ComponentMatrix find_component_matrix(std::size_t d, std::size_t k, const ComponentSearchConfig& config,
                                      std::size_t skip) {
  if (d < 2) throw Error("find_component_matrix: dimension must be at least 2");
  if (config.coeff_bound < 0) throw Error("find_component_matrix: coefficient bound must be nonnegative");
  const std::size_t r_max = std::min(k, d - 1);
  const std::size_t values = 2 * static_cast<std::size_t>(config.coeff_bound) + 1;
  std::size_t found = 0;
  std::size_t examined = 0;

  auto accept = [&](std::vector<Integer> coeffs, bool random) -> std::optional<ComponentMatrix> {
    IntPolynomial p(std::move(coeffs));
    ++examined;
    auto report = qualifies(p, r_max, config.budget_bits);
    if (!report || found++ < skip) return std::nullopt;
    return ComponentMatrix{companion_matrix(p), p, std::move(*report), random};
  };

  // Deterministic box: shells of height h over (a_{d-1}, ..., a_1), a_0 = -1 then +1.
  for (long h = 0; h <= config.coeff_bound; ++h) {
    const std::size_t width = d - 1;
    const std::size_t span = 2 * static_cast<std::size_t>(h) + 1;
    std::vector<std::size_t> digit(width, 0);
    while (true) {
      long height = 0;
      for (auto x : digit) height = std::max(height, std::labs(ordered_value(x)));
      if (height == h) {
        for (long a0 : {-1L, 1L}) {
          std::vector<Integer> c(d + 1);
          c[0] = a0;
          c[d] = 1;
          for (std::size_t i = 0; i < width; ++i) c[d - 1 - i] = ordered_value(digit[i]);
          if (auto m = accept(std::move(c), false)) return *m;
        }
      }
      std::size_t i = width;
      while (i-- > 0) {
        if (++digit[i] < span) break;
        digit[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }

  // Seeded random phase outside the box.
  const long wide = 2 * std::max(config.coeff_bound, 1L);
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<long> coeff(-wide, wide);
  std::uniform_int_distribution<int> sign(0, 1);
  for (std::size_t draw = 0; draw < config.budget; ++draw) {
    std::vector<Integer> c(d + 1);
    c[0] = sign(rng) ? 1 : -1;
    c[d] = 1;
    long height = 0;
    for (std::size_t i = 1; i < d; ++i) {
      const long v = coeff(rng);
      height = std::max(height, std::labs(v));
      c[i] = v;
    }
    if (height <= config.coeff_bound) continue;
    if (auto m = accept(std::move(c), true)) return *m;
  }
  std::ostringstream msg;
  msg << "no companion matrix of dimension " << d << " with r-fold products off the unit circle (r <= " << r_max
      << "): searched |a_i| <= " << config.coeff_bound << " (" << values << "^" << d - 1
      << " x 2 polynomials) and " << config.budget << " random draws with |a_i| <= " << wide << "; " << found
      << " qualifying, " << skip + 1 << " needed";
  throw ComponentSearchExhausted(msg.str());
}

// ---------------------------------------------------------------------------

namespace {

SparseVector apply_images(const std::vector<SparseVector>& img, const SparseVector& v) {
  SparseVector out;
  for (const auto& [c, x] : v) axpy(out, x, img[c]);
  return out;
}

std::vector<RatMatrix> blocks_from_images(const GradedLieAlgebra& h, const std::vector<SparseVector>& img) {
  std::vector<RatMatrix> blocks;
  for (std::size_t m = 1; m <= h.step(); ++m) {
    const std::size_t off = h.offset(m);
    const std::size_t n = h.dim(m);
    RatMatrix b(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [r, x] : img[off + j]) {
        if (r < off || r >= off + n) throw InvariantViolation("graded map leaves its degree");
        b(r - off, j) = x;
      }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

std::vector<SparseVector> images_from_blocks(const GradedLieAlgebra& h, const std::vector<RatMatrix>& blocks) {
  if (blocks.size() != h.step()) throw DimensionMismatch("one block per degree expected");
  std::vector<SparseVector> img(h.dim());
  for (std::size_t m = 1; m <= h.step(); ++m) {
    const std::size_t off = h.offset(m);
    const std::size_t n = h.dim(m);
    if (blocks[m - 1].rows() != n || blocks[m - 1].cols() != n)
      throw DimensionMismatch("block of degree " + std::to_string(m) + " has the wrong size");
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r)
        if (blocks[m - 1](r, j) != 0) img[off + j].emplace_back(off + r, blocks[m - 1](r, j));
  }
  return img;
}

}  // namespace

std::vector<RatMatrix> extend_to_algebra(const GradedLieAlgebra& h, const RatMatrix& g) {
  const std::size_t n = h.dim(1);
  if (g.rows() != n || g.cols() != n)
    throw DimensionMismatch("extend_to_algebra: degree-1 map must be " + std::to_string(n) + "x" + std::to_string(n));
  std::vector<SparseVector> img(h.dim());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (g(i, j) != 0) img[j].emplace_back(i, g(i, j));
  for (std::size_t i = n; i < h.dim(); ++i) {
    const auto& f = h.factors(i);
    if (!f) throw InvariantViolation("basis element without a factor pair");
    img[i] = h.bracket(apply_images(img, f->first), apply_images(img, f->second));
  }
  // Generated in degree 1: compatibility with ad(V) on every basis element
  // implies compatibility on all pairs.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t j = 0; j < h.dim(); ++j) {
      if (1 + h.degree_of(j) > h.step()) continue;
      if (apply_images(img, h.bracket(a, j)) != h.bracket(img[a], img[j]))
        throw DescentError("degree-1 map does not respect the relations: [" + h.element(a).label + ", " +
                           h.element(j).label + "]");
    }
  return blocks_from_images(h, img);
}

std::vector<RatMatrix> extend_to_algebra(const GradedLieAlgebra& h, const IntMatrix& g) {
  return extend_to_algebra(h, to_rational(g));
}

std::optional<std::pair<std::size_t, std::size_t>> find_bracket_violation(const GradedLieAlgebra& h,
                                                                          const std::vector<RatMatrix>& blocks) {
  const auto img = images_from_blocks(h, blocks);
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = i + 1; j < h.dim(); ++j) {
      if (h.degree_of(i) + h.degree_of(j) > h.step()) continue;
      if (apply_images(img, h.bracket(i, j)) != h.bracket(img[i], img[j])) return std::make_pair(i, j);
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> exponent_ladder(std::size_t max_exponent) {
  std::vector<std::size_t> out;
  if (max_exponent >= 1) out.push_back(1);
  for (std::size_t q = 2; q <= max_exponent; ++q) {
    std::size_t p = 2;
    while (q % p) ++p;
    std::size_t r = q;
    while (r % p == 0) r /= p;
    if (r == 1) out.push_back(q);
  }
  return out;
}

namespace {

// Index tuples in order of increasing sum, lexicographic within a sum.
void tuples_with_sum(std::size_t parts, std::size_t sum, std::size_t limit, std::vector<std::size_t>& prefix,
                     std::vector<std::vector<std::size_t>>& out) {
  if (prefix.size() + 1 == parts) {
    if (sum < limit) {
      prefix.push_back(sum);
      out.push_back(prefix);
      prefix.pop_back();
    }
    return;
  }
  for (std::size_t x = 0; x <= std::min(sum, limit - 1); ++x) {
    prefix.push_back(x);
    tuples_with_sum(parts, sum - x, limit, prefix, out);
    prefix.pop_back();
  }
}

struct Attempt {
  std::vector<IntMatrix> blocks;
  std::vector<IntPolynomial> char_polys;
  std::vector<UnitRootCertificate> certs;
  std::vector<Integer> dets;
};

// Full per-degree check of one degree-1 map; nullopt on any failure.
std::optional<Attempt> try_map(const GradedLieAlgebra& h, const IntMatrix& g, unsigned bits) {
  Attempt a;
  for (const auto& b : extend_to_algebra(h, g)) {
    auto ib = to_integer(b);
    if (!ib) return std::nullopt;
    Integer det = determinant(*ib);
    if (abs(det) != 1) return std::nullopt;
    IntPolynomial cp = char_poly(*ib);
    UnitRootCertificate cert = unit_root_free(cp, bits);
    if (!cert.is_free()) return std::nullopt;
    a.blocks.push_back(std::move(*ib));
    a.char_polys.push_back(std::move(cp));
    a.certs.push_back(std::move(cert));
    a.dets.push_back(std::move(det));
  }
  return a;
}

IntMatrix block_diagonal(std::size_t n, const CoherentPartition& p, const std::vector<IntMatrix>& parts) {
  IntMatrix g(n, n);
  for (std::size_t c = 0; c < p.class_count(); ++c) {
    const auto& cls = p.classes[c];
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = 0; j < cls.size(); ++j) g(cls[i], cls[j]) = parts[c](i, j);
  }
  return g;
}

std::string describe(const AnosovVerdict& v, const CoherentPartition& p, const Graph& g) {
  std::ostringstream os;
  os << "graph does not admit an Anosov automorphism at step " << v.k << ":";
  for (const auto& x : v.violations) {
    os << " class " << x.class_index << " {";
    for (std::size_t i = 0; i < p.classes[x.class_index].size(); ++i)
      os << (i ? "," : "") << g.label(p.classes[x.class_index][i]);
    os << "} " << to_string(x.reason) << ";";
  }
  return os.str();
}

}  // namespace

AutomorphismCertificate synthesize(const Graph& g, std::size_t k, const SynthesisConfig& config) {
  const CoherentPartition partition = coherent_components(g);
  const AnosovVerdict verdict = decide_anosov(partition, k);
  if (!verdict.admits) throw NotAdmissible(describe(verdict, partition, g));
  const GradedLieAlgebra h = quotient_algebra(g, k);
  const auto ladder = exponent_ladder(config.max_exponent);
  if (ladder.empty()) throw ExponentLadderExhausted("max_exponent must be at least 1");
  const std::size_t classes = partition.class_count();

  ComponentSearchConfig search{config.coeff_bound, config.seed, config.budget, config.budget_bits};
  std::map<std::pair<std::size_t, std::size_t>, ComponentMatrix> cache;  // (d, skip)
  auto component = [&](std::size_t d, std::size_t skip) -> const ComponentMatrix& {
    auto key = std::make_pair(d, skip);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, find_component_matrix(d, k, search, skip)).first;
    return it->second;
  };

  std::size_t tried = 0;
  for (std::size_t attempt = 0; attempt <= config.component_retries; ++attempt) {
    std::vector<const ComponentMatrix*> comps;
    for (const auto& cls : partition.classes) comps.push_back(&component(cls.size(), attempt));
    for (std::size_t sum = 0; sum <= classes * (ladder.size() - 1); ++sum) {
      std::vector<std::vector<std::size_t>> tuples;
      std::vector<std::size_t> prefix;
      tuples_with_sum(classes, sum, ladder.size(), prefix, tuples);
      for (const auto& t : tuples) {
        std::size_t common = 0;
        for (auto i : t) common = std::gcd(common, ladder[i]);
        if (common > 1) continue;  // a power of an already rejected map
        std::vector<IntMatrix> parts;
        for (std::size_t c = 0; c < classes; ++c)
          parts.push_back(matrix_power(comps[c]->matrix, static_cast<unsigned>(ladder[t[c]])));
        ++tried;
        auto result = try_map(h, block_diagonal(g.vertex_count(), partition, parts), config.budget_bits);
        if (!result) continue;

        AutomorphismCertificate cert;
        cert.graph_hash = graph_digest(g);
        cert.k = k;
        for (std::size_t c = 0; c < classes; ++c) {
          ComponentRecord rec;
          for (auto v : partition.classes[c]) rec.vertices.push_back(g.label(v));
          rec.matrix = comps[c]->matrix;
          rec.char_poly = comps[c]->polynomial;
          rec.exponent = ladder[t[c]];
          rec.products = comps[c]->products.to_json();
          cert.components.push_back(std::move(rec));
        }
        cert.degree_blocks = std::move(result->blocks);
        cert.char_polys = std::move(result->char_polys);
        for (const auto& u : result->certs) cert.unit_root_certs.push_back(u.to_json());
        cert.determinants = std::move(result->dets);
        return cert;
      }
    }
  }
  throw ExponentLadderExhausted("no exponent tuple up to " + std::to_string(config.max_exponent) + " over " +
                                std::to_string(config.component_retries + 1) +
                                " component choices gives a hyperbolic unimodular map (" + std::to_string(tried) +
                                " tuples tried)");
}

// ---------------------------------------------------------------------------

Json AutomorphismCertificate::to_json() const {
  Json out;
  out["graph_hash"] = graph_hash;
  out["k"] = k;
  Json dims = Json::array();
  for (const auto& b : degree_blocks) dims.push_back(b.rows());
  out["dims"] = std::move(dims);
  Json comps = Json::array();
  for (const auto& c : components) {
    Json j;
    j["vertices"] = c.vertices;
    j["matrix"] = encode_matrix(c.matrix);
    j["char_poly"] = c.char_poly.to_json();
    j["exponent"] = c.exponent;
    j["products"] = c.products;
    comps.push_back(std::move(j));
  }
  out["components"] = std::move(comps);
  Json blocks = Json::array();
  for (const auto& b : degree_blocks) blocks.push_back(encode_matrix(b));
  out["degree_blocks"] = std::move(blocks);
  Json polys = Json::array();
  for (const auto& p : char_polys) polys.push_back(p.to_json());
  out["char_polys"] = std::move(polys);
  out["unit_root_certs"] = unit_root_certs;
  Json dets = Json::array();
  for (const auto& d : determinants) dets.push_back(encode_integer(d));
  out["determinants"] = std::move(dets);
  return out;
}

AutomorphismCertificate AutomorphismCertificate::from_json(const Json& j) {
  auto field = [&](const char* name) -> const Json& {
    if (!j.is_object() || !j.contains(name)) throw ParseError(0, std::string("certificate: missing field '") + name + "'");
    return j.at(name);
  };
  AutomorphismCertificate c;
  try {
    c.graph_hash = field("graph_hash").get<std::string>();
    c.k = field("k").get<std::size_t>();
    for (const auto& x : field("components")) {
      ComponentRecord r;
      r.vertices = x.at("vertices").get<std::vector<std::string>>();
      r.matrix = decode_matrix(x.at("matrix"));
      r.char_poly = IntPolynomial::from_json(x.at("char_poly"));
      r.exponent = x.at("exponent").get<std::size_t>();
      if (x.contains("products")) r.products = x.at("products");
      c.components.push_back(std::move(r));
    }
    for (const auto& b : field("degree_blocks")) c.degree_blocks.push_back(decode_matrix(b));
    for (const auto& p : field("char_polys")) c.char_polys.push_back(IntPolynomial::from_json(p));
    for (const auto& u : field("unit_root_certs")) c.unit_root_certs.push_back(u);
    for (const auto& d : field("determinants")) c.determinants.push_back(decode_integer(d));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("certificate: ") + e.what());
  }
  return c;
}

Json VerificationReport::to_json() const {
  Json out;
  out["ok"] = ok;
  out["passed"] = passed;
  if (!ok) {
    out["failed_check"] = failed_check;
    out["message"] = message;
    out["witness"] = witness;
  }
  return out;
}

VerificationReport verify_certificate(const Graph& g, const AutomorphismCertificate& cert, unsigned budget_bits) {
  VerificationReport report;
  auto fail = [&](std::string check, std::string message, Json witness = Json::object()) {
    report.ok = false;
    report.failed_check = std::move(check);
    report.message = std::move(message);
    report.witness = std::move(witness);
    return report;
  };

  // Binding: hash, step, classes, shapes.
  if (cert.graph_hash != graph_digest(g)) return fail("binding", "graph hash does not match the input graph");
  if (cert.k < 2) return fail("binding", "step must be at least 2");
  const CoherentPartition partition = coherent_components(g);
  if (cert.components.size() != partition.class_count())
    return fail("binding", "component count differs from the coherent partition");
  for (std::size_t c = 0; c < partition.class_count(); ++c) {
    std::vector<std::string> labels;
    for (auto v : partition.classes[c]) labels.push_back(g.label(v));
    const auto& comp = cert.components[c];
    if (comp.vertices != labels) return fail("binding", "component " + std::to_string(c) + " is not a coherent class");
    if (comp.matrix.rows() != labels.size() || !comp.matrix.square())
      return fail("binding", "component " + std::to_string(c) + " matrix has the wrong size");
    if (comp.exponent < 1) return fail("binding", "component " + std::to_string(c) + " exponent must be positive");
  }
  const GradedLieAlgebra h = quotient_algebra(g, cert.k);
  if (cert.degree_blocks.size() != cert.k || cert.char_polys.size() != cert.k || cert.determinants.size() != cert.k)
    return fail("binding", "one block, char poly and determinant per degree expected");
  for (std::size_t m = 1; m <= cert.k; ++m)
    if (cert.degree_blocks[m - 1].rows() != h.dim(m) || !cert.degree_blocks[m - 1].square())
      return fail("binding", "degree-" + std::to_string(m) + " block has the wrong size",
                  {{"degree", m}, {"expected", h.dim(m)}});
  report.passed.push_back("binding");

  // (a) degree-1 block is the block sum of the component powers.
  std::vector<IntMatrix> parts;
  for (const auto& comp : cert.components) parts.push_back(matrix_power(comp.matrix, static_cast<unsigned>(comp.exponent)));
  const IntMatrix expected = block_diagonal(g.vertex_count(), partition, parts);
  if (!(expected == cert.degree_blocks[0])) {
    for (std::size_t i = 0; i < expected.rows(); ++i)
      for (std::size_t j = 0; j < expected.cols(); ++j)
        if (expected(i, j) != cert.degree_blocks[0](i, j))
          return fail("degree-1-block", "degree-1 block differs from the sum of component powers",
                      {{"row", i}, {"col", j}, {"expected", encode_integer(expected(i, j))},
                       {"found", encode_integer(cert.degree_blocks[0](i, j))}});
  }
  report.passed.push_back("degree-1-block");

  // (b) bracket compatibility on all basis pairs.
  std::vector<RatMatrix> blocks;
  for (const auto& b : cert.degree_blocks) blocks.push_back(to_rational(b));
  if (auto bad = find_bracket_violation(h, blocks))
    return fail("bracket-compatibility", "block does not commute with the bracket",
                {{"pair", Json::array({h.element(bad->first).label, h.element(bad->second).label})}});
  report.passed.push_back("bracket-compatibility");

  // (c) integral with integral inverse: |det| = 1 in every degree.
  for (std::size_t m = 1; m <= cert.k; ++m) {
    const Integer det = determinant(cert.degree_blocks[m - 1]);
    if (abs(det) != 1)
      return fail("unimodularity", "degree-" + std::to_string(m) + " block is not unimodular",
                  {{"degree", m}, {"determinant", encode_integer(det)}});
    if (det != cert.determinants[m - 1])
      return fail("unimodularity", "recorded determinant differs from the recomputed one", {{"degree", m}});
  }
  report.passed.push_back("unimodularity");

  // (d) unit-root freeness, re-derived.
  for (std::size_t m = 1; m <= cert.k; ++m) {
    const IntPolynomial cp = char_poly(cert.degree_blocks[m - 1]);
    if (!(cp == cert.char_polys[m - 1]))
      return fail("unit-root-freeness", "recorded characteristic polynomial differs from the recomputed one",
                  {{"degree", m}, {"char_poly", cp.to_json()}});
    const UnitRootCertificate u = unit_root_free(cp, budget_bits);
    if (!u.is_free())
      return fail("unit-root-freeness", "degree-" + std::to_string(m) + " block has an eigenvalue of modulus 1",
                  {{"degree", m}, {"certificate", u.to_json()}});
  }
  report.passed.push_back("unit-root-freeness");
  return report;
}

}  // namespace anosograph
