#include "latfac/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "latfac/error.hpp"

namespace latfac {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

std::int64_t get_int(const Json& e, const char* key) {
  if (!e.contains(key)) bad(std::string("coefficient entry without \"") + key + "\"");
  const Json& v = e.at(key);
  if (!v.is_number_integer()) bad(std::string("\"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

double get_double(const Json& e, const char* key, bool required) {
  if (!e.contains(key)) {
    if (required) bad(std::string("coefficient entry without \"") + key + "\"");
    return 0.0;
  }
  const Json& v = e.at(key);
  if (!v.is_number()) bad(std::string("\"") + key + "\" must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(std::string("\"") + key + "\" is not finite");
  return d;
}

const Json& coeff_array(const Json& j, int dim) {
  if (!j.is_object()) bad("polynomial JSON must be an object");
  if (poly_dim(j) != dim) bad("expected a dim-" + std::to_string(dim) + " polynomial");
  if (!j.contains("coeffs") || !j.at("coeffs").is_array()) bad("polynomial JSON needs a \"coeffs\" array");
  return j.at("coeffs");
}

Json big(const BigInt& v) {
  if (v >= BigInt(std::numeric_limits<std::int64_t>::min()) && v <= BigInt(std::numeric_limits<std::int64_t>::max()))
    return v.convert_to<std::int64_t>();
  return v.str();
}

Json bracket(const Bracket& b) {
  Json o;
  o["lower"] = b.lower;
  o["upper"] = b.upper;
  return o;
}

}  // namespace

int poly_dim(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.at("dim").is_number_integer()) bad("polynomial JSON needs an integer \"dim\"");
  const int d = j.at("dim").get<int>();
  if (d != 1 && d != 2) bad("\"dim\" must be 1 or 2");
  return d;
}

Json to_json(const TrigPoly1& t) {
  Json o;
  o["dim"] = 1;
  Json arr = Json::array();
  for (const auto& [j, c] : t.coeffs()) arr.push_back(Json{{"j", j}, {"re", c.real()}, {"im", c.imag()}});
  o["coeffs"] = std::move(arr);
  return o;
}

Json to_json(const TrigPoly2& t) {
  Json o;
  o["dim"] = 2;
  Json arr = Json::array();
  for (const auto& [f, c] : t.coeffs())
    arr.push_back(Json{{"j", f.j}, {"k", f.k}, {"re", c.real()}, {"im", c.imag()}});
  o["coeffs"] = std::move(arr);
  return o;
}

TrigPoly1 poly1_from_json(const Json& j) {
  TrigPoly1::Map m;
  for (const Json& e : coeff_array(j, 1)) {
    if (!e.is_object()) bad("coefficient entries must be objects");
    const std::int64_t f = get_int(e, "j");
    if (!m.emplace(f, cplx{get_double(e, "re", true), get_double(e, "im", false)}).second)
      bad("duplicate frequency j=" + std::to_string(f));
  }
  return TrigPoly1(std::move(m));
}

TrigPoly2 poly2_from_json(const Json& j) {
  TrigPoly2::Map m;
  for (const Json& e : coeff_array(j, 2)) {
    if (!e.is_object()) bad("coefficient entries must be objects");
    const Freq2 f{get_int(e, "j"), get_int(e, "k")};
    if (!m.emplace(f, cplx{get_double(e, "re", true), get_double(e, "im", false)}).second)
      bad("duplicate frequency (" + std::to_string(f.j) + "," + std::to_string(f.k) + ")");
  }
  return TrigPoly2(std::move(m));
}

Json to_json(const Alpha& a) {
  Json o;
  if (a.is_rational()) {
    o["kind"] = "rational";
    o["p"] = big(boost::multiprecision::numerator(a.value()));
    o["q"] = big(boost::multiprecision::denominator(a.value()));
  } else {
    o["kind"] = "real";
    o["digits"] = a.digits();
  }
  return o;
}

Json to_json(const LatticeStrip& F) {
  Json o;
  o["alpha"] = to_json(F.alpha);
  o["beta"] = F.beta.approx();
  return o;
}

Alpha alpha_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) bad("alpha JSON needs \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rational") {
    if (!j.contains("p") || !j.contains("q") || !j.at("p").is_number_integer() || !j.at("q").is_number_integer())
      bad("rational alpha needs integer \"p\" and \"q\"");
    return Alpha::rational(j.at("p").get<std::int64_t>(), j.at("q").get<std::int64_t>());
  }
  if (kind == "real") {
    if (!j.contains("digits") || !j.at("digits").is_string()) bad("real alpha needs a \"digits\" string");
    return Alpha::real_digits(j.at("digits").get<std::string>());
  }
  bad("alpha kind must be \"rational\" or \"real\"");
}

LatticeStrip strip_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("alpha") || !j.contains("beta") || !j.at("beta").is_number())
    bad("strip JSON needs \"alpha\" and a numeric \"beta\"");
  return LatticeStrip(alpha_from_json(j.at("alpha")), j.at("beta").get<double>());
}

Alpha parse_alpha(const std::string& s) {
  if (s.empty()) bad("empty alpha");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::size_t fp = 0, fq = 0;
    const BigRational p = parse_decimal(s.substr(0, slash), &fp);
    const BigRational q = parse_decimal(s.substr(slash + 1), &fq);
    if (fp != 0 || fq != 0) bad("alpha p/q needs integer p and q");
    if (q.sign() <= 0) bad("alpha p/q needs q > 0");
    return Alpha::rational(p / q);
  }
  if (s.find('.') == std::string::npos) {
    std::size_t f = 0;
    return Alpha::rational(parse_decimal(s, &f));
  }
  return Alpha::real_digits(s);
}

Json to_json(const FactorPair& f) {
  Json o;
  o["psi_plus"] = to_json(f.psi_plus);
  o["psi_minus"] = to_json(f.psi_minus);
  o["gamma"] = Json{{"re", f.gamma.real()}, {"im", f.gamma.imag()}};
  return o;
}

Json to_json(const ConvergentTrial& tr) {
  Json o;
  o["p"] = big(tr.p);
  o["q"] = big(tr.q);
  o["status"] = tr.status;
  o["gap"] = tr.gap ? bracket(*tr.gap) : Json(nullptr);
  o["threshold"] = tr.threshold && std::isfinite(*tr.threshold) ? Json(*tr.threshold) : Json(nullptr);
  o["n1_predicted"] = tr.n1_predicted ? Json(*tr.n1_predicted) : Json(nullptr);
  o["n1_actual"] = tr.n1_actual ? Json(*tr.n1_actual) : Json(nullptr);
  o["a_diag"] = tr.a_diag ? Json(*tr.a_diag) : Json(nullptr);
  return o;
}

Json to_json(const PropertyAResult& r) {
  Json o = to_json(r.s);
  o["strip"] = to_json(r.strip);
  o["error_upper"] = r.measured_error.upper;
  o["error_lower"] = r.measured_error.lower;
  o["error_bound"] = r.error_bound;
  o["eps"] = r.eps;
  o["g"] = Json::array({Json::array({r.g.g11(), r.g.g12()}), Json::array({r.g.g21(), r.g.g22()})});
  o["n_shift"] = r.n_shift;
  o["a_diag"] = r.a_diag ? Json(*r.a_diag) : Json(nullptr);
  o["reflected"] = r.reflected;
  o["beta_tilde"] = r.beta_tilde ? Json(r.beta_tilde->convert_to<double>()) : Json(nullptr);
  o["N"] = r.budget.N();
  Json trace = Json::array();
  for (const auto& tr : r.trace) trace.push_back(to_json(tr));
  o["convergent_trace"] = std::move(trace);
  return o;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace latfac
