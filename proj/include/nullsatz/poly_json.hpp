#pragma once

// Polynomial text format:
//   {"vars":["z1","z2"],"terms":[{"a":1,"b":0,"re":"-1/2","im":"0"}, ...]}
// "re"/"im" are rational strings ("num/den", integers or decimals, converted
// exactly). An ideal file is either one polynomial object, a JSON array of
// them, or {"generators":[...]}.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nullsatz/bipoly.hpp"
#include "nullsatz/errors.hpp"

namespace nullsatz {

namespace detail {

inline Rational json_rational(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.dump());
  throw InputError(where + ": coefficient must be a rational string");
}

}  // namespace detail

inline BiPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("polynomial must be a JSON object");
  if (j.contains("vars")) {
    const auto& vars = j.at("vars");
    if (vars != nlohmann::json::array({"z1", "z2"}))
      throw InputError("polynomial \"vars\" must be [\"z1\",\"z2\"]");
  }
  if (!j.contains("terms") || !j.at("terms").is_array())
    throw InputError("polynomial is missing its \"terms\" array");
  BiPoly f;
  std::size_t index = 0;
  for (const auto& t : j.at("terms")) {
    const std::string where = "term " + std::to_string(index++) + " " + t.dump();
    if (!t.is_object()) throw InputError(where + ": term must be an object");
    if (!t.contains("a") || !t.contains("b") || !t.at("a").is_number_integer() ||
        !t.at("b").is_number_integer())
      throw InputError(where + ": exponents \"a\" and \"b\" must be integers");
    const auto a = t.at("a").get<long long>();
    const auto b = t.at("b").get<long long>();
    if (a < 0 || b < 0 || a > 1000 || b > 1000)
      throw InputError(where + ": exponents must lie in [0, 1000]");
    Rational re = t.contains("re") ? detail::json_rational(t.at("re"), where) : Rational(0);
    Rational im = t.contains("im") ? detail::json_rational(t.at("im"), where) : Rational(0);
    f.add_term(static_cast<int>(a), static_cast<int>(b), GaussRational(re, im));
  }
  return f;
}

inline nlohmann::json poly_to_json(const BiPoly& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : f.terms())
    terms.push_back({{"a", e.a}, {"b", e.b}, {"re", rational_to_string(c.re())},
                     {"im", rational_to_string(c.im())}});
  return {{"vars", {"z1", "z2"}}, {"terms", terms}};
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

inline std::vector<BiPoly> ideal_from_json(const nlohmann::json& j) {
  const nlohmann::json* list = &j;
  if (j.is_object() && j.contains("generators")) list = &j.at("generators");
  std::vector<BiPoly> gens;
  if (list->is_array()) {
    std::size_t k = 0;
    for (const auto& g : *list) {
      try {
        gens.push_back(poly_from_json(g));
      } catch (const InputError& e) {
        throw InputError("generator " + std::to_string(k) + ": " + e.what());
      }
      ++k;
    }
  } else {
    gens.push_back(poly_from_json(*list));
  }
  if (gens.empty()) throw InputError("ideal has no generators");
  return gens;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline BiPoly read_poly_file(const std::string& path) {
  return poly_from_json(parse_json_text(read_text_file(path), path));
}

inline std::vector<BiPoly> read_ideal_file(const std::string& path) {
  return ideal_from_json(parse_json_text(read_text_file(path), path));
}

}  // namespace nullsatz
