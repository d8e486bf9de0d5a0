#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "latfac/error.hpp"
#include "latfac/json_io.hpp"

using namespace latfac;

namespace {

ErrorCode parse_error(const std::string& text) {
  try {
    poly1_from_json(Json::parse(text));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::NoConvergence;
}

}  // namespace

TEST_CASE("polynomials round-trip bit for bit") {
  const TrigPoly1 t{{-3, {0.1, -1.0 / 3.0}}, {0, std::sqrt(2.0)}, {7, {1e-300, 5e300}}};
  const Json j = to_json(t);
  const TrigPoly1 back = poly1_from_json(Json::parse(j.dump()));
  CHECK(back == t);

  const TrigPoly2 u{{{-1, 2}, {std::acos(-1.0), 0.0}}, {{0, 0}, 3.0}, {{4, -4}, {0.0, 1.0 / 7.0}}};
  CHECK(poly2_from_json(Json::parse(to_json(u).dump())) == u);

  const auto path = std::filesystem::temp_directory_path() / "latfac_json_io_roundtrip.json";
  write_json_file(path.string(), to_json(u));
  CHECK(poly2_from_json(read_json_file(path.string())) == u);
  std::filesystem::remove(path);
}

TEST_CASE("coefficients are written in ascending order") {
  const Json j = to_json(TrigPoly1{{5, 1.0}, {-2, 1.0}, {0, 1.0}});
  CHECK(j["coeffs"][0]["j"] == -2);
  CHECK(j["coeffs"][2]["j"] == 5);
}

TEST_CASE("malformed polynomials") {
  CHECK(parse_error(R"({"dim":1,"coeffs":[{"j":1,"re":1},{"j":1,"re":2}]})") == ErrorCode::InvalidInput);
  CHECK(parse_error(R"({"dim":2,"coeffs":[]})") == ErrorCode::InvalidInput);
  CHECK(parse_error(R"({"dim":1,"coeffs":[{"j":1.5,"re":1}]})") == ErrorCode::InvalidInput);
  CHECK(parse_error(R"({"dim":1,"coeffs":[{"j":1}]})") == ErrorCode::InvalidInput);
  CHECK(parse_error(R"({"coeffs":[]})") == ErrorCode::InvalidInput);
  CHECK(poly1_from_json(Json::parse(R"({"dim":1,"coeffs":[{"j":0,"re":2}]})")) == TrigPoly1::constant(2.0));
}

TEST_CASE("strips and slopes") {
  const LatticeStrip F(Alpha::rational(1, 2), 0.6);
  const LatticeStrip G = strip_from_json(to_json(F));
  CHECK(G.alpha.value() == BigRational(1, 2));
  CHECK(G.beta_approx() == 0.6);

  const Alpha r = parse_alpha("3/9");
  CHECK(r.is_rational());
  CHECK(r.value() == BigRational(1, 3));
  CHECK(parse_alpha("-2").value() == BigRational(-2));
  const Alpha d = parse_alpha("0.618");
  CHECK_FALSE(d.is_rational());
  CHECK(d.interval().lo < BigRational(618, 1000));
  CHECK(d.interval().hi > BigRational(618, 1000));
  CHECK(alpha_from_json(to_json(d)).digits() == "0.618");
  CHECK_THROWS_AS(parse_alpha("1/0"), Error);
}
