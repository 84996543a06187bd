#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sympten/connection_ops.hpp"
#include "sympten/tensor_io.hpp"
#include "sympten/verify.hpp"

using namespace sympten;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv_digest(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct CommonOpts {
  std::string mode{"rational"};
  double tol{1e-6};
  std::uint64_t seed{42};
  int lattice{3};
  std::string out;
};

std::string effective_mode(const std::string& flag_mode) {
  if (const char* env = std::getenv("SYMPTEN_MODE")) {
    std::string v = env;
    if (v == "rational" || v == "float") return v;
    throw std::invalid_argument("SYMPTEN_MODE must be 'rational' or 'float'");
  }
  return flag_mode;
}

void emit(const json& report, const std::string& out) {
  if (out.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream f(out);
    if (!f) throw std::invalid_argument("cannot write: " + out);
    f << report.dump(2) << "\n";
  }
}

json base_report(const std::string& command, const std::string& digest,
                 const std::string& mode) {
  json rep;
  rep["command"] = command;
  rep["inputs_digest"] = digest;
  rep["mode"] = mode;
  return rep;
}

template <class S>
int run_decompose(const std::string& input, const CommonOpts& opts) {
  const std::string text = read_file(input);
  auto t = tensor_from_json<S>(text);
  json rep = base_report("decompose", fnv_digest(text), Scalar<S>::name());
  if (t.order() != 3) throw std::invalid_argument("decompose: order-3 tensor expected");
  bool antisymmetrized = false;
  if (t.signature().is_none()) {
    t = antisymmetrize(t, {1, 2});
    t.set_signature({1, 2});
    antisymmetrized = true;
  } else if (!(t.signature() == Signature{1, 2})) {
    throw std::invalid_argument("decompose: signature must be [1,2] or none");
  }
  auto d = decompose_torsion(t);
  rep["antisymmetrized_input"] = antisymmetrized;
  rep["n"] = t.space().n();
  rep["lambda3_split_degenerate"] = t.space().n() == 1;
  rep["decomposition"] = json::parse(decomposition_to_json(d));
  const bool pass = Scalar<S>::exact ? Scalar<S>::is_zero(d.recombination_residual)
                                     : Scalar<S>::to_double(d.recombination_residual) < opts.tol;
  rep["pass"] = pass;
  rep["tolerance"] = Scalar<S>::exact ? 0.0 : opts.tol;
  emit(rep, opts.out);
  std::cerr << "decompose: residual "
            << Scalar<S>::to_string(d.recombination_residual) << (pass ? " [pass]" : " [FAIL]")
            << (antisymmetrized ? " (input antisymmetrized in slots 2,3)" : "") << "\n";
  return pass ? 0 : 1;
}

template <class S>
int run_invariants(const std::string& input, bool skew, const CommonOpts& opts) {
  const std::string text = read_file(input);
  auto q = tensor_from_json<S>(text);
  json rep = base_report("invariants", fnv_digest(text), Scalar<S>::name());
  auto r = r_invariants(q);
  json rv = json::array();
  for (const auto& v : r) rv.push_back(Scalar<S>::to_string(v));
  rep["r"] = std::move(rv);
  auto u = unique_invariant(q, skew);
  rep["r_of_Q"] = Scalar<S>::to_string(u.value);
  bool pass = true;
  if (skew) {
    rep["mixed_index_route"] = Scalar<S>::to_string(*u.mixed_route);
    const bool agree = Scalar<S>::exact
                           ? u.value == *u.mixed_route
                           : std::abs(Scalar<S>::to_double(u.value) -
                                      Scalar<S>::to_double(*u.mixed_route)) < opts.tol;
    rep["routes_agree"] = agree;
    pass = agree;
  }
  rep["pass"] = pass;
  rep["tolerance"] = Scalar<S>::exact ? 0.0 : opts.tol;
  emit(rep, opts.out);
  std::cerr << "invariants: r(Q) = " << Scalar<S>::to_string(u.value)
            << (pass ? " [pass]" : " [FAIL]") << "\n";
  return pass ? 0 : 1;
}

int run_classify(int n, const CommonOpts& opts) {
  auto cls = classify_traces(n);
  json rep = base_report("classify-traces", "n=" + std::to_string(n), "rational");
  rep["classification"] = json::parse(classification_report_to_json(cls));
  rep["pass"] = cls.pass;
  emit(rep, opts.out);
  std::cerr << "classify-traces: n=" << n << " span rank " << cls.span_rank
            << (cls.pass ? " [pass]" : " [FAIL]") << "\n";
  return cls.pass ? 0 : 1;
}

int run_tondeur(const std::string& chart_path, const CommonOpts& opts) {
  const std::string text = read_file(chart_path);
  auto chart = load_chart_config(text);
  ConnectionCheckOptions copts{opts.lattice, opts.seed, opts.tol};
  auto c = tondeur(base_connection(chart), copts);
  auto pts = chart->validation_lattice(opts.lattice, opts.seed);
  const int m = chart->dim();
  double worst_no = max_nabla_omega(c, pts);
  double worst_t = 0;
  for (const auto& x : pts) {
    auto tl = lowered_torsion(c, x);
    auto dw = chart->dw3(x);
    for (std::size_t i = 0; i < tl.size(); ++i)
      worst_t = std::max(worst_t, std::abs(tl[i] - dw[i] / 3.0));
  }
  json rep = base_report("tondeur", fnv_digest(text), "float");
  rep["lattice_points"] = pts.size();
  rep["max_nabla_omega"] = worst_no;
  rep["max_torsion_minus_third_domega"] = worst_t;
  rep["tolerance"] = opts.tol;
  json samples = json::array();
  for (std::size_t k = 0; k < std::min<std::size_t>(4, pts.size()); ++k) {
    const auto& x = pts[k * (pts.size() / 4)];
    json s;
    s["point"] = x;
    s["t_invariant"] = torsion_invariant(c, x).full;
    json gam = json::array();
    auto g = c.gamma(x);
    for (int i = 0; i < m && i < 2; ++i)
      for (int j = 0; j < m; ++j)
        for (int h = 0; h < m; ++h)
          gam.push_back({i + 1, j + 1, h + 1, g[(static_cast<std::size_t>(i) * m + j) * m + h]});
    s["gamma_rows"] = std::move(gam);
    samples.push_back(std::move(s));
  }
  rep["samples"] = std::move(samples);
  const bool pass = worst_no < opts.tol && worst_t < opts.tol;
  rep["pass"] = pass;
  emit(rep, opts.out);
  std::cerr << "tondeur: max|nabla omega| = " << worst_no << ", max|T - (1/3) d omega| = "
            << worst_t << (pass ? " [pass]" : " [FAIL]") << "\n";
  return pass ? 0 : 1;
}

int run_verify(const std::string& suite, const std::vector<int>& ns, const CommonOpts& opts) {
  if (ns.empty()) throw std::invalid_argument("verify: at least one n is required");
  for (int n : ns)
    if (n < 1 || n > 3)
      throw std::invalid_argument("verify: exhaustive suites support n in 1..3 only");
  std::vector<SuiteReport> reports;
  json exactness = json::array();
  if (suite == "koszul" || suite == "all") {
    reports.push_back(run_koszul_suite(ns, opts.seed));
    for (int n : ns)
      for (int l = 3; l <= 4; ++l)
        exactness.push_back(json::parse(exactness_report_to_json(verify_exactness(l, n))));
  }
  if (suite == "projectors" || suite == "all")
    reports.push_back(run_projector_suite(ns, opts.seed));
  if (suite == "invariants" || suite == "all")
    reports.push_back(run_invariant_suite(ns, opts.seed));
  if (suite == "connections" || suite == "all")
    reports.push_back(run_connection_suite(opts.seed, opts.tol, opts.lattice));
  if (reports.empty())
    throw std::invalid_argument("verify: unknown suite '" + suite +
                                "' (koszul|projectors|invariants|connections|all)");
  bool all_pass = true;
  json out;
  out["command"] = "verify";
  out["suites"] = json::array();
  for (const auto& rep : reports) {
    json js;
    js["suite"] = rep.suite;
    js["checks"] = json::array();
    for (const auto& c : rep.checks) {
      std::cerr << (c.pass ? "PASS " : "FAIL ") << "[" << rep.suite << "] " << c.name;
      if (c.tolerance > 0) std::cerr << " (" << c.value << " vs " << c.tolerance << ")";
      if (!c.detail.empty()) std::cerr << " -- " << c.detail;
      std::cerr << "\n";
      json cj;
      cj["name"] = c.name;
      cj["pass"] = c.pass;
      cj["value"] = c.value;
      cj["tolerance"] = c.tolerance;
      if (!c.detail.empty()) cj["detail"] = c.detail;
      js["checks"].push_back(std::move(cj));
      all_pass = all_pass && c.pass;
    }
    js["pass"] = rep.pass();
    out["suites"].push_back(std::move(js));
  }
  if (!exactness.empty()) out["exactness_reports"] = std::move(exactness);
  out["pass"] = all_pass;
  out["seed"] = opts.seed;
  out["tolerance"] = opts.tol;
  emit(out, opts.out);
  std::cerr << (all_pass ? "verify: all checks passed\n" : "verify: FAILURES present\n");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symplectic torsion tensors: decomposition, invariants, connections"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string input, chart_path, suite{"all"};
  std::vector<int> ns{1, 2, 3};
  bool skew = false;
  int classify_n = 2;

  auto add_common = [&](CLI::App* cmd, bool with_mode) {
    if (with_mode)
      cmd->add_option("--mode", opts.mode, "arithmetic backend (rational|float)")
          ->check(CLI::IsMember({"rational", "float"}));
    cmd->add_option("--tol", opts.tol, "tolerance for float-mode checks");
    cmd->add_option("--seed", opts.seed, "seed for random lattice points");
    cmd->add_option("--lattice", opts.lattice, "per-axis validation lattice size");
    cmd->add_option("--out", opts.out, "write the JSON report to this path");
  };

  auto* dec = app.add_subcommand("decompose", "split a torsion-like tensor into its four parts");
  dec->add_option("--input", input, "tensor JSON file")->required();
  add_common(dec, true);

  auto* inv = app.add_subcommand("invariants", "evaluate r1..r4 and r(Q) on a tensor");
  inv->add_option("--input", input, "tensor JSON file")->required();
  inv->add_flag("--skew", skew, "require Q skew in the first two slots and run both routes");
  add_common(inv, true);

  auto* cls = app.add_subcommand("classify-traces", "classify the 15 quadratic matchings");
  cls->add_option("--n", classify_n, "half-dimension (1..3)")->required();
  add_common(cls, false);

  auto* ton = app.add_subcommand("tondeur", "run the torsion-correction construction on a chart");
  ton->add_option("--chart", chart_path, "chart config JSON")->required();
  add_common(ton, false);

  auto* ver = app.add_subcommand("verify", "run the identity/invariant suites");
  ver->add_option("--suite", suite, "koszul|projectors|invariants|connections|all");
  ver->add_option("--n", ns, "half-dimensions to cover")->delimiter(',');
  add_common(ver, false);

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string mode = effective_mode(opts.mode);
    if (dec->parsed())
      return mode == "rational" ? run_decompose<Rational>(input, opts)
                                : run_decompose<double>(input, opts);
    if (inv->parsed())
      return mode == "rational" ? run_invariants<Rational>(input, skew, opts)
                                : run_invariants<double>(input, skew, opts);
    if (cls->parsed()) return run_classify(classify_n, opts);
    if (ton->parsed()) return run_tondeur(chart_path, opts);
    if (ver->parsed()) return run_verify(suite, ns, opts);
  } catch (const std::exception& e) {
    json err;
    err["error"] = e.what();
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
