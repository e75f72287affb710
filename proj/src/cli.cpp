#include "anosograph/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "anosograph/anosov.hpp"
#include "anosograph/derivations.hpp"
#include "anosograph/graph.hpp"
#include "anosograph/lie_algebra.hpp"

namespace anosograph::cli {

namespace {

struct Options {
  std::string graph_path;
  std::size_t k = 2;
  long coeff_bound = 3;
  std::size_t max_exponent = 64;
  std::int32_t entry_bound = 2;
  std::size_t budget = 100000;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string cert_path;
  std::string quotient_path;
  std::string plant_path;
  bool require_finding = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph load_graph(const std::string& path) {
  try {
    return parse_graph(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(0, path + ": " + e.what());
  }
}

Json load_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, path + ": " + e.what());
  }
}

Json header(const char* command) {
  Json out;
  out["schema"] = 1;
  out["command"] = command;
  return out;
}

// Indented key: value rendering of a JSON document.
void render_text(const Json& j, std::ostream& out, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar_list = [](const Json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_structured() && !(value.is_array() && scalar_list(value))) {
        out << pad << key << ":\n";
        render_text(value, out, indent + 2);
      } else {
        out << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (x.is_structured() && !(x.is_array() && scalar_list(x))) {
        out << pad << "-\n";
        render_text(x, out, indent + 2);
      } else {
        out << pad << "- " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
      }
    }
  } else {
    out << pad << j.dump() << "\n";
  }
}

void emit(const Json& j, const Options& o, std::ostream& out) {
  if (o.format == "text")
    render_text(j, out);
  else
    out << j.dump(2) << "\n";
}

int analyze(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.graph_path);
  const CoherentPartition p = coherent_components(g);
  Json doc = header("analyze");
  doc["graph_hash"] = graph_digest(g);
  doc["k"] = o.k;
  doc["partition"] = to_json(p, g);
  Json verdict = to_json(decide_anosov(p, o.k), g);
  doc["admits"] = verdict["admits"];
  doc["violations"] = verdict["violations"];
  emit(doc, o, out);
  return ok;
}

int dims(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.graph_path);
  const GradedLieAlgebra h = quotient_algebra(g, o.k);
  Json doc = header("dims");
  doc["k"] = o.k;
  doc["dims"] = h.dims();
  doc["total"] = h.dim();
  doc["ideal_dims"] = h.ideal_dims();
  emit(doc, o, out);
  return ok;
}

int synthesize_cmd(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.graph_path);
  const CoherentPartition p = coherent_components(g);
  const AnosovVerdict v = decide_anosov(p, o.k);
  if (!v.admits) {
    Json doc = header("synthesize");
    Json verdict = to_json(v, g);
    doc["k"] = o.k;
    doc["admits"] = false;
    doc["violations"] = verdict["violations"];
    emit(doc, o, out);
    return not_admissible;
  }
  SynthesisConfig cfg;
  cfg.coeff_bound = o.coeff_bound;
  cfg.max_exponent = o.max_exponent;
  cfg.seed = o.seed;
  cfg.budget = o.budget;
  cfg.budget_bits = default_budget_bits();
  Json doc = header("synthesize");
  try {
    const AutomorphismCertificate cert = synthesize(g, o.k, cfg);
    doc["admits"] = true;
    doc["certificate"] = cert.to_json();
  } catch (const ComponentSearchExhausted& e) {
    doc["admits"] = true;
    doc["error"] = "component-search-exhausted";
    doc["message"] = e.what();
    emit(doc, o, out);
    return exhausted;
  } catch (const ExponentLadderExhausted& e) {
    doc["admits"] = true;
    doc["error"] = "exponent-ladder-exhausted";
    doc["message"] = e.what();
    emit(doc, o, out);
    return exhausted;
  }
  emit(doc, o, out);
  return ok;
}

AutomorphismCertificate load_certificate(const std::string& path) {
  const Json j = load_json(path);
  return AutomorphismCertificate::from_json(j.is_object() && j.contains("certificate") ? j.at("certificate") : j);
}

int verify(const Options& o, std::ostream& out) {
  if (o.cert_path.empty()) throw UsageError("verify needs --cert FILE");
  const Graph g = load_graph(o.graph_path);
  const AutomorphismCertificate cert = load_certificate(o.cert_path);
  const VerificationReport report = verify_certificate(g, cert, default_budget_bits());
  Json doc = header("verify");
  doc["report"] = report.to_json();
  emit(doc, o, out);
  return report.ok ? ok : verification_failed;
}

int derivations_cmd(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.graph_path);
  Json doc = header("derivations");
  if (o.quotient_path.empty()) {
    const GradedLieAlgebra h = quotient_algebra(g, o.k);
    doc["k"] = o.k;
    doc["dims"] = h.dims();
    doc["derivation_dim"] = derivation_algebra(h).dimension();
    doc["v_stabilizing_derivation_dim"] = derivation_algebra(h, true).dimension();
  } else {
    const QuotientSpec spec = QuotientSpec::from_json(load_json(o.quotient_path));
    const GradedLieAlgebra a = build_quotient(g, spec);
    doc["quotient"] = spec.to_json();
    doc["dims"] = a.dims();
    doc["derivation_dim"] = derivation_algebra(a).dimension();
    doc["v_stabilizing_derivation_dim"] = derivation_algebra(a, true).dimension();
    if (spec.step == 2) {
      doc["span_report"] = span_report(g, spec).to_json();
      doc["lift_check"] = lift_check(g, spec).to_json();
    }
  }
  emit(doc, o, out);
  return ok;
}

int search(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o.graph_path);
  Json doc = header("search");
  GradedLieAlgebra a;
  if (o.quotient_path.empty()) {
    a = quotient_algebra(g, o.k);
    doc["k"] = o.k;
  } else {
    const QuotientSpec spec = QuotientSpec::from_json(load_json(o.quotient_path));
    a = build_quotient(g, spec);
    doc["quotient"] = spec.to_json();
  }
  doc["dims"] = a.dims();
  SearchConfig cfg;
  cfg.entry_bound = o.entry_bound;
  cfg.budget = o.budget;
  cfg.seed = o.seed;
  cfg.budget_bits = default_budget_bits();
  if (!o.plant_path.empty()) {
    const AutomorphismCertificate cert = load_certificate(o.plant_path);
    if (cert.degree_blocks.empty()) throw UsageError("planted certificate has no degree-1 block");
    cfg.plants.push_back(cert.degree_blocks[0]);
  }
  const SearchReport report = hyperbolic_search(a, cfg);
  doc["search"] = report.to_json();
  emit(doc, o, out);
  return o.require_finding && report.findings.empty() ? exhausted : ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Anosov automorphisms of graph-defined nilpotent Lie algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "anosograph 1.0");

  auto common = [&](CLI::App* sub) {
    sub->add_option("graph", o.graph_path, "edge-list file")->required();
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  };
  auto step = [&](CLI::App* sub) {
    sub->add_option("--k", o.k, "nilpotency step")->check(CLI::Range(std::size_t{2}, std::size_t{64}))->capture_default_str();
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "coherent components and the Anosov verdict");
  common(analyze_cmd);
  step(analyze_cmd);
  auto* dims_cmd = app.add_subcommand("dims", "per-degree dimensions of H_k");
  common(dims_cmd);
  step(dims_cmd);
  auto* synth_cmd = app.add_subcommand("synthesize", "construct a certified Anosov automorphism");
  common(synth_cmd);
  step(synth_cmd);
  synth_cmd->add_option("--coeff-bound", o.coeff_bound, "companion coefficient bound")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth_cmd->add_option("--max-exponent", o.max_exponent, "largest exponent tried")->capture_default_str();
  synth_cmd->add_option("--budget", o.budget, "random draws after the coefficient box")->capture_default_str();
  synth_cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  auto* verify_cmd = app.add_subcommand("verify", "re-check a certificate against a graph");
  common(verify_cmd);
  verify_cmd->add_option("--cert", o.cert_path, "certificate file")->required();
  auto* der_cmd = app.add_subcommand("derivations", "derivation algebras, span and lift reports");
  common(der_cmd);
  step(der_cmd);
  der_cmd->add_option("--quotient", o.quotient_path, "quotient spec file");
  auto* search_cmd = app.add_subcommand("search", "bounded search for hyperbolic automorphisms");
  common(search_cmd);
  step(search_cmd);
  search_cmd->add_option("--quotient", o.quotient_path, "quotient spec file");
  search_cmd->add_option("--entry-bound", o.entry_bound, "entries in [-B, B]")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  search_cmd->add_option("--budget", o.budget, "candidate maps evaluated")->capture_default_str();
  search_cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  search_cmd->add_option("--plant", o.plant_path, "certificate whose degree-1 block is evaluated first");
  search_cmd->add_flag("--require-finding", o.require_finding, "exit 4 when nothing is found");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (*analyze_cmd) return analyze(o, out);
    if (*dims_cmd) return dims(o, out);
    if (*synth_cmd) return synthesize_cmd(o, out);
    if (*verify_cmd) return verify(o, out);
    if (*der_cmd) return derivations_cmd(o, out);
    if (*search_cmd) return search(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
  return usage_error;
}

}  // namespace anosograph::cli
