#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "latfac/corpus.hpp"
#include "latfac/error.hpp"
#include "latfac/json_io.hpp"
#include "latfac/property_a.hpp"
#include "latfac/specfactor1d.hpp"
#include "latfac/specfactor2d.hpp"

using namespace latfac;

namespace {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Report {
 public:
  explicit Report(std::string command, std::vector<std::string> argv) {
    j_["command"] = std::move(command);
    j_["argv"] = std::move(argv);
    j_["inputs_digest"] = nullptr;
    j_["outputs"] = Json::array();
    j_["checks"] = Json::array();
    j_["timing_ms"] = Json::object();
    j_["results"] = Json::object();
  }

  void digest(const std::vector<std::string>& paths, const std::vector<std::string>& flags) {
    std::uint64_t h = fnv1a("latfac");
    for (const auto& p : paths) h = fnv1a(slurp(p), h);
    for (const auto& f : flags) h = fnv1a(f + "\n", h);
    std::ostringstream ss;
    ss << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    j_["inputs_digest"] = ss.str();
  }

  void output(const std::string& path) { j_["outputs"].push_back(path); }

  void check(const std::string& name, const std::string& invariant, bool pass, Json detail = nullptr) {
    Json c;
    c["name"] = name;
    c["invariant"] = invariant;
    c["pass"] = pass;
    if (!detail.is_null()) c["detail"] = std::move(detail);
    j_["checks"].push_back(std::move(c));
    all_pass_ = all_pass_ && pass;
  }

  template <class F>
  auto timed(const std::string& stage, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      stop(stage, t0);
    } else {
      auto r = f();
      stop(stage, t0);
      return r;
    }
  }

  Json& results() { return j_["results"]; }
  bool all_pass() const { return all_pass_; }

  int finish(int code) {
    j_["status"] = code == 0 ? "pass" : (j_.contains("error") ? "error" : "fail");
    j_["exit_code"] = code;
    std::cout << j_.dump(2) << '\n';
    return code;
  }

  int fail_with(const Error& e) {
    j_["error"] = Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    return finish(exit_code(e.code()));
  }

 private:
  void stop(const std::string& stage, std::chrono::steady_clock::time_point t0) {
    const auto dt = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    j_["timing_ms"][stage] = dt;
  }

  Json j_;
  bool all_pass_ = true;
};

// A failed self-check is a numerical failure.
int checks_code(const Report& r) { return r.all_pass() ? 0 : exit_code(ErrorCode::NoConvergence); }

std::string fmt(double v) { return Json(v).dump(); }

struct Args {
  std::string input;
  std::string out;
  double tol = 1e-10;
  double eps = 1e-3;
  std::string alpha;
  double beta = 0;
  std::string mode = "auto";
  std::size_t max_convergents = 10;
  std::string n_list = "5,7,9,11";
  std::uint64_t seed = 1;
  std::size_t count = 10;
  int dim = 1;
};

int cmd_factor1d(const Args& a, Report& rep) {
  rep.digest({a.input}, {"tol=" + fmt(a.tol)});
  const TrigPoly1 t = rep.timed("parse", [&] { return poly1_from_json(read_json_file(a.input)); });
  // The root oracle rejects zeros on the circle with RootOnCircle.
  const RootFactorPair oracle = rep.timed("roots", [&] { return psi_factor_roots(t); });
  const double scale = std::max(1.0, l1_coeff_norm(t));
  const FactorPair f = rep.timed("factor", [&] { return psi_factor(t, a.tol * scale); });

  rep.timed("checks", [&] {
    const double sup = sup_norm_certified(t, 1e-9 * l1_coeff_norm(t)).upper;
    const TrigPoly1 resid = f.psi_plus * f.psi_minus - t;
    const double err = resid.is_zero() ? 0.0 : sup_norm_certified(resid, 1e-3 * a.tol * sup).upper;
    rep.check("identity", "||Psi+ Psi- - t||_inf <= tol ||t||_inf", err <= a.tol * sup,
              Json{{"error_upper", err}, {"sup_t", sup}});
    double agree = 0;
    for (const auto& [j, c] : f.psi_plus.coeffs()) agree = std::max(agree, std::abs(c - oracle.psi_plus.coeff(j)));
    for (const auto& [j, c] : oracle.psi_plus.coeffs()) agree = std::max(agree, std::abs(c - f.psi_plus.coeff(j)));
    rep.check("root_oracle", "cepstral and root factors agree to 1e-8 after sign normalization", agree <= 1e-8,
              Json{{"max_coeff_diff", agree}});
    bool support = true;
    for (const auto& [j, c] : f.psi_plus.coeffs()) support = support && j >= 0 && j <= t.n_plus();
    for (const auto& [j, c] : f.psi_minus.coeffs()) support = support && j <= 0 && -j <= t.n_minus();
    rep.check("support", "freq(Psi+) in {0..n+}, freq(Psi-) in {-n-..0}", support);
  });
  rep.results()["factor"] = to_json(f);
  if (!a.out.empty()) {
    write_json_file(a.out, to_json(f));
    rep.output(a.out);
  }
  return checks_code(rep);
}

int cmd_factor2d(const Args& a, Report& rep) {
  rep.digest({a.input}, {"eps=" + fmt(a.eps)});
  const TrigPoly2 t = rep.timed("parse", [&] { return poly2_from_json(read_json_file(a.input)); });
  const SconvReport r = rep.timed("verify", [&] { return verify_sconv(t, a.eps, {}); });
  const TrigPoly2 s = rep.timed("factor", [&] { return s_n_approx(s_factor(t, r.M), r.N); });
  rep.check("distance", "||S+ - S_N+||_inf <= eps at N = ceil(N(eps, t))", r.distance_pass,
            Json{{"distance_upper", r.distance}, {"distance_sampled", r.distance_sampled}, {"N", r.N}, {"M", r.M}});
  rep.check("envelope", "distance at every N below the budget stays under the slice envelope",
            r.envelope_violations.empty(), Json{{"checked_up_to", r.envelope_checked_up_to},
                                                {"violations", r.envelope_violations.size()}});
  rep.check("gamma1", "Gamma_z t stays in the positive-real-part sector on the annulus", r.gamma1_pass,
            Json{{"min_re", r.gamma1_min_re}, {"sup", r.gamma1_sup}});
  rep.results()["gamma_profile_pass"] = r.gamma_profile_pass;
  rep.results()["budget"] = Json{{"rho", r.budget.rho},       {"sigma1", r.budget.sigma1},
                                 {"tau", r.budget.tau},       {"theta", r.budget.theta},
                                 {"slice_bound", r.budget.slice_bound}, {"zeta", r.budget.zeta},
                                 {"N_eps", r.budget.N_eps},   {"N", r.N}};
  if (!a.out.empty()) {
    Json o = to_json(s);
    o["N"] = r.N;
    o["M"] = r.M;
    o["eps"] = a.eps;
    o["distance_upper"] = r.distance;
    write_json_file(a.out, o);
    rep.output(a.out);
  }
  return checks_code(rep);
}

std::string resolve_mode(const Args& a, const Alpha& alpha) {
  if (a.mode != "auto") return a.mode;
  if (!alpha.is_rational()) return "irrational";
  return alpha.value() == BigRational(0) ? "axis" : "rational";
}

int cmd_propA(const Args& a, Report& rep) {
  rep.digest({a.input}, {"alpha=" + a.alpha, "beta=" + fmt(a.beta), "eps=" + fmt(a.eps), "mode=" + a.mode,
                         "max_convergents=" + std::to_string(a.max_convergents)});
  const TrigPoly2 t = rep.timed("parse", [&] { return poly2_from_json(read_json_file(a.input)); });
  const Alpha alpha = parse_alpha(a.alpha.empty() ? "0" : a.alpha);
  const std::string mode = resolve_mode(a, alpha);
  rep.results()["mode"] = mode;

  PropertyAResult r;
  try {
    r = rep.timed("pipeline", [&]() -> PropertyAResult {
      if (mode == "axis") {
        if (!alpha.is_rational() || alpha.value() != BigRational(0))
          throw Error(ErrorCode::InvalidInput, "--mode axis needs alpha = 0");
        return factor_strip_axis(t, a.beta, a.eps);
      }
      if (mode == "rational") {
        if (!alpha.is_rational()) throw Error(ErrorCode::InvalidInput, "--mode rational needs alpha = p/q");
        return factor_strip_rational(t, alpha.as_rational(), a.beta, a.eps);
      }
      if (mode == "irrational") return factor_strip_irrational(t, alpha, a.beta, a.eps, a.max_convergents);
      throw Error(ErrorCode::InvalidInput, "--mode must be axis, rational, irrational or auto");
    });
  } catch (const BudgetExhaustedError& e) {
    Json trace = Json::array();
    for (const auto& tr : e.trace()) trace.push_back(to_json(tr));
    rep.results()["convergent_trace"] = trace;
    if (!a.out.empty()) {
      write_json_file(a.out, Json{{"status", "BudgetExhausted"}, {"convergent_trace", trace}});
      rep.output(a.out);
    }
    throw;
  }

  const VerifyReport v = rep.timed("verify", [&] { return verify_result(t, r); });
  rep.check("containment", "freq(s) is certified inside F(alpha, beta)", v.containment_ok,
            Json{{"outside", v.outside.size()}});
  rep.check("error_bound", "||t - |s|^2||_inf <= (2||t||_inf + eps) eps", v.error_ok,
            Json{{"error_upper", v.error.upper}, {"bound", v.bound}});
  const Json rj = to_json(r);
  for (const char* key : {"g", "n_shift", "a_diag", "error_upper", "N", "convergent_trace"}) rep.results()[key] = rj[key];
  if (!a.out.empty()) {
    write_json_file(a.out, rj);
    rep.output(a.out);
  }
  return checks_code(rep);
}

std::vector<std::int64_t> parse_n_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "--n-list: not an integer: " + item);
    }
  }
  if (out.empty()) throw Error(ErrorCode::InvalidInput, "--n-list is empty");
  return out;
}

int cmd_bench(const Args& a, Report& rep) {
  rep.digest({}, {"n_list=" + a.n_list});
  const auto ns = parse_n_list(a.n_list);
  std::ostringstream csv;
  csv << "n,mahler,sup_t,sup_im_log,log_sup_psi_plus,mahler_predicted,sup_t_predicted,sup_im_predicted,"
         "log_sup_psi_predicted\n";
  Json rows = Json::array();
  rep.timed("rows", [&] {
    for (std::int64_t n : ns) {
      const Example1Row r = example1_row(n);
      csv << r.n << ',' << fmt(r.mahler) << ',' << fmt(r.sup_t) << ',' << fmt(r.sup_im_log) << ','
          << fmt(r.log_sup_psi) << ',' << fmt(r.mahler_predicted) << ',' << fmt(r.sup_t_predicted) << ','
          << fmt(r.sup_im_predicted) << ',' << fmt(r.log_sup_psi_predicted) << '\n';
      rows.push_back(Json{{"n", r.n}, {"mahler", r.mahler}, {"sup_t", r.sup_t}, {"log_sup_psi_plus", r.log_sup_psi}});
    }
  });
  rep.results()["rows"] = rows;
  if (a.out.empty()) {
    std::cerr << csv.str();
  } else {
    std::ofstream out(a.out);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + a.out);
    out << csv.str();
    rep.output(a.out);
  }
  return 0;
}

int cmd_gen_corpus(const Args& a, Report& rep) {
  rep.digest({}, {"seed=" + std::to_string(a.seed), "count=" + std::to_string(a.count), "dim=" + std::to_string(a.dim)});
  if (a.out.empty()) throw Error(ErrorCode::InvalidInput, "gen-corpus needs --out <directory prefix>");
  CorpusOptions o;
  o.seed = a.seed;
  o.count = a.count;
  std::vector<Json> items;
  if (a.dim == 1) {
    for (const auto& t : corpus1d(o)) items.push_back(to_json(t));
  } else if (a.dim == 2) {
    o.max_n1 = 4;
    o.max_n2 = 4;
    o.min_lo = 0.5;
    o.min_hi = 1.5;
    for (const auto& t : corpus2d(o)) items.push_back(to_json(t));
  } else {
    throw Error(ErrorCode::InvalidInput, "--dim must be 1 or 2");
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::ostringstream name;
    name << a.out << std::setw(4) << std::setfill('0') << i << ".json";
    write_json_file(name.str(), items[i]);
    rep.output(name.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latfac: spectral factorization and lattice-strip factors of positive trigonometric polynomials"};
  app.require_subcommand(1);
  Args a;

  auto* f1 = app.add_subcommand("factor1d", "Factor a positive 1D polynomial as Psi+ Psi-");
  f1->add_option("input", a.input, "dim-1 polynomial JSON")->required();
  f1->add_option("--tol", a.tol, "relative factorization tolerance")->capture_default_str();
  f1->add_option("--out", a.out, "write the factor pair JSON here");

  auto* f2 = app.add_subcommand("factor2d", "Truncated analytic factor S_N+ of a positive 2D polynomial");
  f2->add_option("input", a.input, "dim-2 polynomial JSON")->required();
  f2->add_option("--eps", a.eps, "target distance")->capture_default_str();
  f2->add_option("--out", a.out, "write S_N+ JSON here");

  auto* pa = app.add_subcommand("propA", "Factor with frequencies in the strip F(alpha, beta)");
  pa->add_option("input", a.input, "dim-2 polynomial JSON")->required();
  pa->add_option("--alpha", a.alpha, "p/q or a decimal string")->capture_default_str();
  pa->add_option("--beta", a.beta, "strip half-width")->required();
  pa->add_option("--eps", a.eps, "approximation target")->capture_default_str();
  pa->add_option("--mode", a.mode, "axis, rational, irrational or auto")->capture_default_str();
  pa->add_option("--max-convergents", a.max_convergents, "convergents to try")->capture_default_str();
  pa->add_option("--out", a.out, "write the result JSON here");

  auto* be = app.add_subcommand("bench-example1", "CSV of the t_n family (Mahler measure, norms, factor growth)");
  be->add_option("--n-list", a.n_list, "odd n values, comma separated")->capture_default_str();
  be->add_option("--out", a.out, "CSV path (stderr when absent)");

  auto* gc = app.add_subcommand("gen-corpus", "Write a random corpus of positive polynomials");
  gc->add_option("--seed", a.seed, "random seed")->capture_default_str();
  gc->add_option("--count", a.count, "number of polynomials")->capture_default_str();
  gc->add_option("--dim", a.dim, "1 or 2")->capture_default_str();
  gc->add_option("--out", a.out, "path prefix; files are <prefix>NNNN.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code(ErrorCode::InvalidInput);
  }

  const std::vector<std::string> echo(argv, argv + argc);
  const std::map<CLI::App*, std::pair<const char*, std::function<int(const Args&, Report&)>>> table{
      {f1, {"factor1d", cmd_factor1d}},
      {f2, {"factor2d", cmd_factor2d}},
      {pa, {"propA", cmd_propA}},
      {be, {"bench-example1", cmd_bench}},
      {gc, {"gen-corpus", cmd_gen_corpus}},
  };
  for (const auto& [sub, entry] : table) {
    if (!sub->parsed()) continue;
    Report rep(entry.first, echo);
    try {
      return rep.finish(entry.second(a, rep));
    } catch (const Error& e) {
      return rep.fail_with(e);
    } catch (const nlohmann::json::exception& e) {
      return rep.fail_with(Error(ErrorCode::InvalidInput, e.what()));
    } catch (const std::exception& e) {
      return rep.fail_with(Error(ErrorCode::NoConvergence, e.what()));
    }
  }
  return exit_code(ErrorCode::InvalidInput);
}
