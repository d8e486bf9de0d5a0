#pragma once

#include <string>

#include <json.hpp>

#include "latfac/lattice.hpp"
#include "latfac/property_a.hpp"
#include "latfac/specfactor1d.hpp"
#include "latfac/trigpoly.hpp"

namespace latfac {

using Json = nlohmann::ordered_json;

// {"dim":1,"coeffs":[{"j":..,"re":..,"im":..},...]}, coefficients in
// ascending frequency order. Doubles are written in shortest round-trip form,
// so a read/write cycle is bit-exact.
Json to_json(const TrigPoly1& t);
Json to_json(const TrigPoly2& t);

// Throw InvalidInput on a wrong dim, malformed entries or duplicate frequencies.
TrigPoly1 poly1_from_json(const Json& j);
TrigPoly2 poly2_from_json(const Json& j);
// Reads "dim" to decide.
int poly_dim(const Json& j);

Json to_json(const Alpha& a);
Json to_json(const LatticeStrip& F);
Alpha alpha_from_json(const Json& j);
LatticeStrip strip_from_json(const Json& j);

// "p/q", "-3", or a decimal string (an interval of half-width one unit in the
// last digit). A decimal with no fractional part is read as an integer.
Alpha parse_alpha(const std::string& s);

Json to_json(const FactorPair& f);
Json to_json(const ConvergentTrial& tr);
Json to_json(const PropertyAResult& r);

Json read_json_file(const std::string& path);
// Two-space indent and a trailing newline.
void write_json_file(const std::string& path, const Json& j);

}  // namespace latfac
