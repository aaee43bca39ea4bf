#pragma once

// Run configuration and JSON reports. Floats are written with 17 significant
// digits by a dedicated dumper, so identical runs give byte-identical files.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nullsatz/bergman.hpp"
#include "nullsatz/decompose.hpp"
#include "nullsatz/hopf.hpp"
#include "nullsatz/nullsatz.hpp"
#include "nullsatz/poly_json.hpp"

namespace nullsatz {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::uint64_t seed = 1;
  double tol_res = 1e-10;
  double tol_point = 1e-8;
  double tol_circle = 1e-6;
  double delta = 1e-6;
  int samples = 100000;
  std::vector<double> r_grid{0.51, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
  int n_max = 20;
  int alpha_grid = 4096;
  double grid_pitch = 0.01;
  int hopf_trials = 512;
  DomainSpec domain;
  unsigned threads = 1;  // not part of the serialized configuration

  void validate() const {
    for (double t : {tol_res, tol_point, tol_circle, delta, grid_pitch})
      if (!(t > 0) || !std::isfinite(t)) throw InputError("tolerances and grid pitch must be positive");
    if (samples < 1 || n_max < 0 || alpha_grid < 8 || hopf_trials < 1)
      throw InputError("sample counts must be positive");
    try {
      validate_r_grid(r_grid, false);
    } catch (const DomainError& e) {
      throw InputError(e.what());
    }
  }

  DensityOptions density() const {
    DensityOptions o;
    o.n_max = n_max;
    o.r_grid = r_grid;
    o.samples = samples;
    o.seed = seed;
    return o;
  }
  DecomposeOptions decompose() const {
    DecomposeOptions o;
    o.seed = seed;
    o.tol_res = tol_res;
    o.tol_point = tol_point;
    return o;
  }
  ClassifyOptions classify() const {
    ClassifyOptions o;
    o.delta = delta;
    o.grid_pitch = grid_pitch;
    o.tol_point = tol_point;
    o.threads = threads;
    o.decompose = decompose();
    o.density = density();
    return o;
  }
  HopfOptions hopf() const {
    HopfOptions o;
    o.trials = hopf_trials;
    o.alpha_grid = alpha_grid;
    o.tol_circle = tol_circle;
    o.threads = threads;
    return o;
  }
};

inline Json to_json(const DomainSpec& d) { return {{"p", d.p()}, {"q", d.q()}}; }

inline Json to_json(const RunConfig& c) {
  return {{"seed", c.seed},
          {"tolerances",
           {{"tol_res", c.tol_res}, {"tol_point", c.tol_point}, {"tol_circle", c.tol_circle}, {"delta", c.delta}}},
          {"samples", c.samples},
          {"r_grid", c.r_grid},
          {"n_max", c.n_max},
          {"alpha_grid", c.alpha_grid},
          {"grid_pitch", c.grid_pitch},
          {"hopf_trials", c.hopf_trials},
          {"domain", to_json(c.domain)}};
}

/// Reads a configuration object; absent keys keep their defaults.
inline RunConfig config_from_json(const nlohmann::json& j, RunConfig c = {}) {
  if (!j.is_object()) throw InputError("configuration must be a JSON object");
  try {
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      if (t.contains("tol_res")) c.tol_res = t.at("tol_res").get<double>();
      if (t.contains("tol_point")) c.tol_point = t.at("tol_point").get<double>();
      if (t.contains("tol_circle")) c.tol_circle = t.at("tol_circle").get<double>();
      if (t.contains("delta")) c.delta = t.at("delta").get<double>();
    }
    if (j.contains("samples")) c.samples = j.at("samples").get<int>();
    if (j.contains("r_grid")) c.r_grid = j.at("r_grid").get<std::vector<double>>();
    if (j.contains("n_max")) c.n_max = j.at("n_max").get<int>();
    if (j.contains("alpha_grid")) c.alpha_grid = j.at("alpha_grid").get<int>();
    if (j.contains("grid_pitch")) c.grid_pitch = j.at("grid_pitch").get<double>();
    if (j.contains("hopf_trials")) c.hopf_trials = j.at("hopf_trials").get<int>();
    if (j.contains("domain")) c.domain = DomainSpec(j.at("domain").at("p").get<double>(),
                                                    j.at("domain").at("q").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("configuration: ") + e.what());
  } catch (const DomainError& e) {
    throw InputError(std::string("configuration: ") + e.what());
  }
  return c;
}

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }
inline Json to_json(const Point2& p) { return {{"z1", to_json(p.z1)}, {"z2", to_json(p.z2)}}; }

inline Json to_json(const CBiPoly& f) {
  Json terms = Json::array();
  for (int a = 0; a < f.rows(); ++a)
    for (int b = 0; b < f.cols(); ++b)
      if (f.at(a, b) != Complex{})
        terms.push_back({{"a", a}, {"b", b}, {"re", f.at(a, b).real()}, {"im", f.at(a, b).imag()}});
  return {{"vars", {"z1", "z2"}}, {"terms", terms}};
}

inline Json exact_json(const BiPoly& f) { return Json::parse(poly_to_json(f).dump()); }

inline Json to_json(const CoordinateChange& c) {
  return {{"swapped", c.swapped},
          {"shear", {{"re", rational_to_string(c.shear.re())}, {"im", rational_to_string(c.shear.im())}}}};
}

inline Json to_json(const CurveComponent& c) {
  Json w = Json::array();
  for (const auto& p : c.witnesses) w.push_back(to_json(p));
  return {{"factor", exact_json(c.parent)},
          {"factor_index", c.factor_index},
          {"orbit", c.orbit},
          {"degree", c.degree},
          {"coordinates", to_json(c.coords)},
          {"base_point", to_json(c.base_point)},
          {"defining_polynomial", to_json(c.defining)},
          {"witnesses", w},
          {"max_witness_residual", c.max_witness_residual}};
}

inline Json to_json(const FactorMonodromy& f) {
  Json bp = Json::array(), fiber = Json::array();
  for (auto z : f.branch_points) bp.push_back(to_json(z));
  for (auto z : f.base_fiber) fiber.push_back(to_json(z));
  return {{"factor", exact_json(f.factor)},
          {"multiplicity", f.multiplicity},
          {"coordinates", to_json(f.coords)},
          {"branch_points", bp},
          {"base_point", to_json(f.base_point)},
          {"base_fiber", fiber},
          {"permutations", f.permutations},
          {"orbits", f.orbits},
          {"reconstruction_error", f.reconstruction_error},
          {"tracking_refinements", f.tracking_refinements}};
}

inline Json to_json(const IsolatedPoint& p) {
  return {{"location", to_json(p.location)}, {"residuals", p.residuals}};
}

inline Json to_json(const VarietyDecomposition& d) {
  Json curves = Json::array(), points = Json::array(), factors = Json::array(), residual = Json::array();
  for (const auto& c : d.curves) curves.push_back(to_json(c));
  for (const auto& p : d.points) points.push_back(to_json(p));
  for (const auto& f : d.factors) factors.push_back(to_json(f));
  for (const auto& g : d.residual_generators) residual.push_back(exact_json(g));
  return {{"gcd", exact_json(d.gcd)},
          {"residual_generators", residual},
          {"point_part_solved", d.point_part_solved},
          {"factors", factors},
          {"curve_components", curves},
          {"isolated_points", points}};
}

inline Json to_json(const IntersectionResult& r) {
  return {{"component", r.component},
          {"verdict", to_string(r.verdict)},
          {"min_phi", r.min_phi},
          {"argmin", to_json(r.argmin)},
          {"verified", r.verified},
          {"residual", r.residual},
          {"trace",
           {{"grid_points", r.grid_points},
            {"pitch", r.pitch},
            {"radius", r.radius},
            {"refinement_evaluations", r.refinement_evaluations}}},
          {"note", r.note}};
}

inline Json to_json(const DilationNorm& d) {
  return {{"r", d.r}, {"l2", d.l2}, {"sup", d.sup}, {"flagged", d.flagged}};
}

inline Json to_json(const DensityCertificate& c) {
  Json profile = Json::array(), dil = Json::array();
  for (const auto& [n, d] : c.profile) profile.push_back({{"N", n}, {"distance", d}});
  for (const auto& d : c.dilation) dil.push_back(to_json(d));
  return {{"polynomial", exact_json(c.polynomial)},
          {"domain", to_json(c.domain)},
          {"assessment", to_string(c.assessment)},
          {"unit_norm", std::sqrt(monomial_norm(c.domain, 0, 0))},
          {"profile", profile},
          {"profile_nonincreasing", c.profile_nonincreasing},
          {"profile_rank_deficient", c.profile_rank_deficient},
          {"dilation", dil},
          {"zero", c.zero ? to_json(*c.zero) : Json(nullptr)},
          {"kernel_lower_bound", c.kernel_lower_bound ? Json(*c.kernel_lower_bound) : Json(nullptr)}};
}

inline std::string maximal_ideal_text(const Point2& w) {
  auto c = [](Complex z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", z.real(), z.imag());
    return std::string(buf);
  };
  return "(z1 - " + c(w.z1) + ", z2 - " + c(w.z2) + ")";
}

inline Json to_json(const ClosureVerdict& v) {
  Json comps = Json::array();
  for (const auto& r : v.components) comps.push_back(to_json(r));
  Json witness = nullptr;
  if (v.witness)
    witness = {{"point", to_json(*v.witness)},
               {"maximal_ideal", maximal_ideal_text(*v.witness)},
               {"phi", v.witness_phi},
               {"residual", v.witness_residual}};
  return {{"verdict", to_string(v.overall)},
          {"justification", v.justification},
          {"components", comps},
          {"witness", witness},
          {"certificate", v.certificate ? to_json(*v.certificate) : Json(nullptr)},
          {"decomposition", v.decomposition ? to_json(*v.decomposition) : Json(nullptr)},
          {"diagnostics", v.diagnostics}};
}

inline Json to_json(const RatioBoundReport& r) {
  return {{"polynomial", exact_json(r.polynomial)},
          {"domain", to_json(r.domain)},
          {"r_grid", r.r_grid},
          {"samples", r.samples},
          {"seed", r.seed},
          {"sup", r.sup},
          {"argmax", to_json(r.argmax)},
          {"arg_r", r.arg_r},
          {"degree_sum", r.degree_sum},
          {"bound", r.bound},
          {"flagged", r.flagged},
          {"first_flagged", r.first_flagged ? to_json(*r.first_flagged) : Json(nullptr)},
          {"pass", r.pass}};
}

inline Json to_json(const HopfRotation& h) {
  Json m = Json::array();
  for (const auto& row : h.matrix) m.push_back(Json::array({to_json(row[0]), to_json(row[1])}));
  return {{"a", to_json(h.a)},
          {"b", to_json(h.b)},
          {"matrix", m},
          {"min_circle_modulus", h.min_modulus},
          {"argmin_alpha", h.argmin_alpha},
          {"unitarity_defect", h.unitarity_defect()},
          {"trials", h.trials},
          {"seed", h.seed}};
}

inline Json to_json(const BallRatioReport& r) {
  return {{"r_grid", r.r_grid},
          {"samples", r.samples},
          {"seed", r.seed},
          {"sup", r.sup},
          {"argmax", to_json(r.argmax)},
          {"arg_r", r.arg_r},
          {"flagged", r.flagged},
          {"first_flagged", r.first_flagged ? to_json(*r.first_flagged) : Json(nullptr)},
          {"finite", r.finite}};
}

namespace detail {

inline void dump_string(std::ostream& os, const std::string& s) {
  os << Json(s).dump();
}

inline void dump_value(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{" << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << "," << nl;
        first = false;
        os << pad;
        dump_string(os, it.key());
        os << sep;
        dump_value(os, it.value(), indent, depth + 1);
      }
      os << nl << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[" << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << "," << nl;
        os << pad;
        dump_value(os, j[i], indent, depth + 1);
      }
      os << nl << close << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        os << (std::isnan(x) ? "\"nan\"" : x > 0 ? "\"inf\"" : "\"-inf\"");
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      std::string s(buf);
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      os << s;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace detail

/// Serializes with every float at 17 significant digits.
inline std::string dump_report(const Json& j, int indent = 2) {
  std::ostringstream os;
  detail::dump_value(os, j, indent, 0);
  os << "\n";
  return os.str();
}

}  // namespace nullsatz
