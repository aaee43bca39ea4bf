#pragma once

// Command-line front end. Every subcommand writes one JSON report that embeds the
// run configuration; `run` never throws and maps every failure to an exit code.
//
// Exit codes
//   classify  0 CLOSED, 1 DENSE, 2 NEITHER, 3 INCONCLUSIVE
//   density   0 DENSE, 1 NOT_DENSE, 3 INCONCLUSIVE
//   ratio     0 when the sampled sup respects 2^d(p), 1 otherwise
//   others    0 on success
//   10 library error, 11 no admissible fiber circle, 64 malformed input or usage,
//   70 unexpected internal failure

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nullsatz/report.hpp"

namespace nullsatz::cli {

enum ExitCode : int {
  kOk = 0,
  kLibraryError = 10,
  kHopfError = 11,
  kUsage = 64,
  kInternal = 70,
};

inline DomainSpec parse_domain(const std::string& text) {
  if (text == "ball") return DomainSpec::ball();
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InputError("--domain expects p,q or ball, got '" + text + "'");
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InputError("--domain: '" + s + "' is not a decimal number");
    return x;
  };
  const double p = number(text.substr(0, comma)), q = number(text.substr(comma + 1));
  try {
    return DomainSpec(p, q);
  } catch (const DomainError& e) {
    throw InputError(std::string("--domain: ") + e.what());
  }
}

inline std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InputError(flag + ": '" + item + "' is not a decimal number");
  }
  if (out.empty()) throw InputError(flag + " is empty");
  return out;
}

inline std::uint64_t parse_seed(const std::string& text, const std::string& source) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text[0] != '-') v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InputError(source + ": '" + text + "' is not a nonnegative integer");
  return v;
}

/// Raw flag values before they are folded into a RunConfig.
struct Flags {
  std::string domain;
  std::string ideal;
  std::string poly;
  std::string config;
  std::string seed;
  std::string r_grid;
  std::string zero;
  std::string out;
  int samples = 0;
  int n_max = -1;
  int max_degree = 4;
  double pitch = 0;
  unsigned threads = 0;
  bool pretty = false;
};

/// Default < config file < NULLSATZ_SEED < explicit flags.
inline RunConfig resolve_config(const Flags& f) {
  RunConfig c;
  if (!f.config.empty()) c = config_from_json(parse_json_text(read_text_file(f.config), f.config), c);
  if (const char* env = std::getenv("NULLSATZ_SEED"); env && *env) c.seed = parse_seed(env, "NULLSATZ_SEED");
  if (!f.seed.empty()) c.seed = parse_seed(f.seed, "--seed");
  if (!f.domain.empty()) c.domain = parse_domain(f.domain);
  if (!f.r_grid.empty()) c.r_grid = parse_list(f.r_grid, "--r-grid");
  if (f.samples > 0) c.samples = f.samples;
  if (f.n_max >= 0) c.n_max = f.n_max;
  if (f.pitch > 0) c.grid_pitch = f.pitch;
  c.threads = f.threads > 0 ? f.threads : default_threads();
  c.validate();
  return c;
}

inline Point2 parse_zero(const std::string& text) {
  const auto v = parse_list(text, "--zero");
  if (v.size() != 4) throw InputError("--zero expects re1,im1,re2,im2");
  return {{v[0], v[1]}, {v[2], v[3]}};
}

inline std::vector<BiPoly> load_generators(const Flags& f) {
  if (!f.ideal.empty() && !f.poly.empty()) throw InputError("give either --ideal or --poly, not both");
  if (!f.ideal.empty()) return read_ideal_file(f.ideal);
  if (!f.poly.empty()) return {read_poly_file(f.poly)};
  throw InputError("an input polynomial (--poly) or ideal (--ideal) is required");
}

inline BiPoly load_poly(const Flags& f) {
  if (f.poly.empty()) throw InputError("--poly is required");
  return read_poly_file(f.poly);
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

inline std::string fmt(Complex z) {
  std::ostringstream os;
  os << std::setprecision(8) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

struct Outcome {
  Json result;
  int code = kOk;
  std::string table;
};

inline Outcome cmd_classify(const Flags& f, const RunConfig& c) {
  const auto gens = load_generators(f);
  const ClosureVerdict v = classify(gens, c.domain, c.classify());
  Outcome o{to_json(v), 0, ""};
  switch (v.overall) {
    case Closure::Closed: o.code = 0; break;
    case Closure::Dense: o.code = 1; break;
    case Closure::Neither: o.code = 2; break;
    case Closure::Inconclusive: o.code = 3; break;
  }
  std::ostringstream t;
  t << "verdict  " << to_string(v.overall) << "\n" << "reason   " << v.justification << "\n";
  t << std::left << std::setw(12) << "component" << std::setw(14) << "verdict" << std::setw(20) << "min phi"
    << "argmin\n";
  for (const auto& r : v.components)
    t << std::setw(12) << r.component << std::setw(14) << to_string(r.verdict) << std::setw(20) << fmt(r.min_phi)
      << "(" << fmt(r.argmin.z1) << ", " << fmt(r.argmin.z2) << ")\n";
  if (v.witness) t << "witness  " << maximal_ideal_text(*v.witness) << "\n";
  if (!v.diagnostics.empty()) t << "note     " << v.diagnostics << "\n";
  o.table = t.str();
  return o;
}

inline Outcome cmd_density(const Flags& f, const RunConfig& c) {
  const BiPoly p = load_poly(f);
  std::optional<Point2> zero;
  if (!f.zero.empty()) zero = parse_zero(f.zero);
  const DensityCertificate cert = density_certificate(p, c.domain, c.density(), zero);
  Outcome o{to_json(cert), 0, ""};
  o.code = cert.assessment == DensityAssessment::Dense ? 0 : cert.assessment == DensityAssessment::NotDense ? 1 : 3;
  std::ostringstream t;
  t << "assessment  " << to_string(cert.assessment) << "\n" << std::left << std::setw(6) << "N" << "d_N\n";
  for (const auto& [n, d] : cert.profile) t << std::setw(6) << n << fmt(d) << "\n";
  t << std::setw(8) << "r" << std::setw(20) << "||1 - f_r||" << "sup\n";
  for (const auto& d : cert.dilation) t << std::setw(8) << d.r << std::setw(20) << fmt(d.l2) << fmt(d.sup) << "\n";
  if (cert.kernel_lower_bound) t << "kernel lower bound  " << fmt(*cert.kernel_lower_bound) << "\n";
  o.table = t.str();
  return o;
}

inline Outcome cmd_ratio(const Flags& f, const RunConfig& c) {
  const BiPoly p = load_poly(f);
  const RatioBoundReport rep = ratio_sup(p, c.domain, c.r_grid, c.samples, c.seed);
  Outcome o{to_json(rep), rep.pass ? 0 : 1, ""};
  std::ostringstream t;
  t << "sup    " << fmt(rep.sup) << " at r = " << rep.arg_r << "\n"
    << "bound  " << fmt(rep.bound) << " (d = " << rep.degree_sum << ")\n"
    << "result " << (rep.pass ? "pass" : "FAIL") << "\n";
  o.table = t.str();
  return o;
}

inline Outcome cmd_decompose(const Flags& f, const RunConfig& c) {
  const auto gens = load_generators(f);
  const VarietyDecomposition d = decompose_ideal(gens, c.decompose());
  Json result = to_json(d);
  result["component_count"] = d.curves.size() + d.points.size();
  Outcome o{result, 0, ""};
  std::ostringstream t;
  t << "curve components  " << d.curves.size() << "\n" << "isolated points   " << d.points.size() << "\n";
  for (std::size_t i = 0; i < d.curves.size(); ++i)
    t << "  curve " << i << "  factor " << d.curves[i].factor_index << "  degree " << d.curves[i].degree << "\n";
  for (std::size_t i = 0; i < d.points.size(); ++i)
    t << "  point " << i << "  (" << fmt(d.points[i].location.z1) << ", " << fmt(d.points[i].location.z2) << ")\n";
  o.table = t.str();
  return o;
}

inline Outcome cmd_hopf(const Flags& f, const RunConfig& c) {
  const BiPoly p = load_poly(f);
  const HopfRotation rot = find_rotation(p, c.seed, c.hopf());
  const CBiPoly g = rot.compose(CBiPoly(p));
  const BallRatioReport ratio = ball_ratio_sup(g, c.r_grid, c.samples, c.seed);
  Json dil = Json::array();
  std::ostringstream t;
  t << "rotation a = " << fmt(rot.a) << ", b = " << fmt(rot.b) << "\n"
    << "min |f o rho(0, e^ia)|  " << fmt(rot.min_modulus) << "\n"
    << "ratio sup               " << fmt(ratio.sup) << "\n"
    << std::left << std::setw(8) << "r" << "||1 - g_r||\n";
  for (double r : c.r_grid) {
    const DilationNorm d = ball_dilation_norm(g, r, c.samples, c.seed);
    dil.push_back(to_json(d));
    t << std::setw(8) << r << fmt(d.l2) << "\n";
  }
  Outcome o{{{"polynomial", exact_json(p)},
             {"rotation", to_json(rot)},
             {"rotated_polynomial", to_json(g)},
             {"ratio", to_json(ratio)},
             {"dilation", dil}},
            0,
            t.str()};
  return o;
}

inline Outcome cmd_norms(const Flags& f, const RunConfig& c) {
  if (f.max_degree < 0) throw InputError("--max-degree must be nonnegative");
  const MonomialNormTable table(c.domain, f.max_degree);
  Json rows = Json::array();
  std::ostringstream t;
  t << std::left << std::setw(5) << "a" << std::setw(5) << "b" << "nu_ab\n";
  for (int n = 0; n <= f.max_degree; ++n)
    for (int a = n; a >= 0; --a) {
      rows.push_back({{"a", a}, {"b", n - a}, {"nu", table.at(a, n - a)}});
      t << std::setw(5) << a << std::setw(5) << n - a << fmt(table.at(a, n - a)) << "\n";
    }
  return {{{"max_degree", f.max_degree}, {"norms", rows}}, 0, t.str()};
}

/// Runs one invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closure and density certificates for polynomial ideals in Bergman spaces", "nullsatz"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--domain", f.domain, "p,q with decimal exponents, or 'ball' for 2,2");
    sub->add_option("--config", f.config, "JSON run configuration");
    sub->add_option("--seed", f.seed, "seed (overrides NULLSATZ_SEED and the config file)");
    sub->add_option("--samples", f.samples, "quasi-random sample count");
    sub->add_option("--r-grid", f.r_grid, "comma-separated dilation radii in (1/2, 1)");
    sub->add_option("--threads", f.threads, "maximum worker threads");
    sub->add_option("--out", f.out, "write the JSON report to this file");
    sub->add_flag("--pretty", f.pretty, "print a summary table on stderr");
  };
  struct Sub {
    CLI::App* app;
    Outcome (*fn)(const Flags&, const RunConfig&);
  };
  std::vector<Sub> subs;

  auto* classify_cmd = app.add_subcommand("classify", "closed / dense / neither verdict for an ideal");
  common(classify_cmd);
  classify_cmd->add_option("--ideal", f.ideal, "ideal JSON file");
  classify_cmd->add_option("--poly", f.poly, "single generator JSON file");
  classify_cmd->add_option("--pitch", f.pitch, "search grid pitch");
  classify_cmd->add_option("--n-max", f.n_max, "largest N in the distance profile");
  subs.push_back({classify_cmd, cmd_classify});

  auto* density_cmd = app.add_subcommand("density", "density certificate for a principal ideal");
  common(density_cmd);
  density_cmd->add_option("--poly", f.poly, "polynomial JSON file")->required();
  density_cmd->add_option("--n-max", f.n_max, "largest N in the distance profile");
  density_cmd->add_option("--zero", f.zero, "re1,im1,re2,im2 of a zero inside the domain");
  subs.push_back({density_cmd, cmd_density});

  auto* ratio_cmd = app.add_subcommand("ratio", "sampled sup of |p(z) / p(rz)| against 2^d(p)");
  common(ratio_cmd);
  ratio_cmd->add_option("--poly", f.poly, "polynomial JSON file")->required();
  subs.push_back({ratio_cmd, cmd_ratio});

  auto* decompose_cmd = app.add_subcommand("decompose", "irreducible components of V(I)");
  common(decompose_cmd);
  decompose_cmd->add_option("--ideal", f.ideal, "ideal JSON file");
  decompose_cmd->add_option("--poly", f.poly, "polynomial JSON file");
  subs.push_back({decompose_cmd, cmd_decompose});

  auto* hopf_cmd = app.add_subcommand("hopf", "unitary rotation clearing a Hopf fiber, with ball ratios");
  common(hopf_cmd);
  hopf_cmd->add_option("--poly", f.poly, "polynomial JSON file")->required();
  subs.push_back({hopf_cmd, cmd_hopf});

  auto* norms_cmd = app.add_subcommand("norms", "monomial norm table");
  common(norms_cmd);
  norms_cmd->add_option("--max-degree", f.max_degree, "largest total degree");
  subs.push_back({norms_cmd, cmd_norms});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const RunConfig config = resolve_config(f);
    for (const auto& s : subs) {
      if (!s.app->parsed()) continue;
      Outcome o = s.fn(f, config);
      Json report{{"command", s.app->get_name()}, {"config", to_json(config)}, {"result", std::move(o.result)}};
      const std::string text = dump_report(report);
      if (f.out.empty()) {
        out << text;
      } else {
        std::ofstream file(f.out, std::ios::binary);
        if (!(file << text)) throw InputError("cannot write " + f.out);
      }
      if (f.pretty) err << o.table;
      return o.code;
    }
    err << "usage error: no subcommand\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const HopfError& e) {
    err << "hopf error: " << e.what() << " (best circle modulus " << e.best_min_modulus() << ")\n";
    return kHopfError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kLibraryError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace nullsatz::cli
