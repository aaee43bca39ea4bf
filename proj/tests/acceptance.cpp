// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nullsatz/cli.hpp"

using namespace nullsatz;

namespace {

constexpr double kPi = std::numbers::pi;
const BiPoly Z1 = BiPoly::z1();
const BiPoly Z2 = BiPoly::z2();
const std::vector<double> kRGrid{0.51, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};

BiPoly q(long num, long den) { return BiPoly(GaussRational(Rational(num, den))); }

struct Outcome {
  bool pass;
  std::string detail;
};

// Monte Carlo value of nu_ab = int |z1|^{2a} |z2|^{2b} dV. With s_i = |z_i|^2 the
// volume element is pi^2 ds1 ds2; u = s1^{p/2}, v = s2^{q/2} flattens the domain to
// the simplex u + v < 1, written as u = x, v = (1 - x) y. Drawing x and y from power
// laws matching the integrand's singular factors leaves the weight (1 - x)^beta.
double mc_norm(double p, double q, int a, int b, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double al = (2.0 * a + 2) / p, be = (2.0 * b + 2) / q;
  double acc = 0;
  for (int i = 0; i < n; ++i) {
    const double x = std::pow(U(rng), 1 / al);
    acc += std::pow(1 - x, be);
  }
  return kPi * kPi * (2 / p) * (2 / q) * acc / n / (al * be);
}

// Plain hit-or-miss estimate of the ball volume from the box [-1, 1]^4.
double mc_ball_volume(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const double x1 = U(rng), y1 = U(rng), x2 = U(rng), y2 = U(rng);
    hits += x1 * x1 + y1 * y1 + x2 * x2 + y2 * y2 < 1;
  }
  return 16.0 * hits / n;
}

Outcome criterion1() {
  std::mt19937_64 rng(2024);
  const int n = 1000000;
  double worst = 0;
  std::string where;
  for (auto [p, qq] : std::vector<std::pair<double, double>>{{2, 2}, {1, 1}, {2, 1}, {0.5, 3}}) {
    const DomainSpec d(p, qq);
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; a + b <= 4; ++b) {
        const double exact = monomial_norm(d, a, b), mc = mc_norm(p, qq, a, b, n, rng);
        const double rel = std::abs(mc - exact) / exact;
        if (rel > worst) {
          worst = rel;
          std::ostringstream os;
          os << "(p,q)=(" << p << "," << qq << ") a=" << a << " b=" << b;
          where = os.str();
        }
      }
  }
  const double vol = mc_ball_volume(n, rng), nu00 = monomial_norm(DomainSpec::ball(), 0, 0);
  const double rel_vol = std::abs(vol - kPi * kPi / 2) / (kPi * kPi / 2);
  const double rel_nu = std::abs(nu00 - kPi * kPi / 2) / (kPi * kPi / 2);
  std::ostringstream os;
  os << "worst relative deviation " << worst << " at " << where << "; box MC ball volume " << vol
     << " (rel " << rel_vol << "); closed-form nu00 rel " << rel_nu;
  return {worst < 0.01 && rel_vol < 0.01 && rel_nu < 0.01, os.str()};
}

Outcome criterion2() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> mod(1.05, 3.0), ang(0, 2 * kPi);
  std::uniform_int_distribution<int> nf(1, 4), var(0, 1);
  int products = 0, violations = 0;
  double worst_margin = -1e300;
  for (; products < 60; ++products) {
    BiPoly p(1);
    for (int k = nf(rng); k > 0; --k) {
      // a rational approximation of a point with |c| > 1 keeps the factor zero-free on the closure
      const Complex c = std::polar(mod(rng), ang(rng));
      const GaussRational cr(Rational(static_cast<long>(std::lround(c.real() * 1000)), 1000),
                             Rational(static_cast<long>(std::lround(c.imag() * 1000)), 1000));
      p = p * ((var(rng) ? Z1 : Z2) - BiPoly(cr));
    }
    for (auto d : {DomainSpec::ball(), DomainSpec(1, 1)}) {
      const auto rep = ratio_sup(p, d, kRGrid, 10000, static_cast<std::uint64_t>(products + 1));
      worst_margin = std::max(worst_margin, rep.sup - rep.bound);
      if (!(rep.sup <= rep.bound + 1e-9) || rep.flagged) ++violations;
    }
  }
  const auto witness = ratio_sup(Z1 - 1, DomainSpec::ball(), {0.5}, 10000, 1);
  std::ostringstream os;
  os << products << " products on 2 domains, " << violations << " violations, max(sup - 2^d) = " << worst_margin
     << "; witness z1 - 1 sup = " << witness.sup;
  return {violations == 0 && std::abs(witness.sup - 4.0 / 3.0) <= 1e-3, os.str()};
}

Outcome criterion3() {
  DensityOptions o;
  o.n_max = 20;
  const auto cert = density_certificate(Z1 - 2, DomainSpec::ball(), o);
  bool strict = true;
  for (std::size_t i = 1; i < cert.profile.size(); ++i)
    strict = strict && cert.profile[i].second < cert.profile[i - 1].second;
  double tail = -1;
  for (const auto& dn : cert.dilation)
    if (dn.r == 0.99) tail = dn.l2;
  const double d0 = cert.profile.front().second, target = std::sqrt(kPi * kPi / 26);
  std::ostringstream os;
  os << "d_0 = " << d0 << " (target " << target << "), d_20 = " << cert.profile.back().second
     << ", strictly decreasing " << (strict ? "yes" : "no") << ", ||1 - f_0.99|| = " << tail;
  return {std::abs(d0 - target) <= 1e-6 && strict && cert.profile.size() == 21 && tail >= 0 && tail <= 0.0223,
          os.str()};
}

Outcome criterion4() {
  DensityOptions o;
  o.n_max = 20;
  const auto cert = density_certificate(Z1, DomainSpec::ball(), o, Point2{0.0, 0.0});
  const double target = kPi / std::sqrt(2.0);
  double worst = 0;
  for (const auto& [n, d] : cert.profile) worst = std::max(worst, std::abs(d - target));
  const double kb = cert.kernel_lower_bound.value_or(-1);
  std::ostringstream os;
  os << "max |d_N - pi/sqrt2| = " << worst << " over " << cert.profile.size()
     << " values; K(0,0)^(-1/2) = " << kb;
  return {worst <= 1e-9 && std::abs(kb - target) <= 1e-9, os.str()};
}

Outcome criterion5() {
  const std::vector<std::pair<BiPoly, std::size_t>> cases{
      {Z2 * Z2 - Z1, 1},
      {Z2 * Z2 - Z1 * Z1, 2},
      {(Z2 * Z2 - Z1) * (Z2 + 2), 2},
      {(Z2 - Z1) * (Z2 + Z1) * (Z2 - 2 * Z1), 3},
      {Z2.pow(3) - Z1 * Z1, 1}};
  int bad = 0, runs = 0;
  std::ostringstream os;
  for (const auto& [f, want] : cases) {
    std::vector<std::size_t> seen;
    for (std::uint64_t seed : {1, 2, 3})
      for (double step : {1.0 / 64, 1.0 / 128}) {
        DecomposeOptions o;
        o.seed = seed;
        o.max_step = step;
        std::size_t got = 0;
        try {
          got = decompose_curve(f, o).size();
        } catch (const Error&) {
          got = 0;
        }
        ++runs;
        bad += got != want;
        seen.push_back(got);
      }
    os << seen.front() << (std::equal(seen.begin() + 1, seen.end(), seen.begin()) ? "" : "*") << " ";
  }
  return {bad == 0, "counts " + os.str() + "over " + std::to_string(runs) + " runs (3 base-point seeds x 2 step sizes)"};
}

Outcome criterion6() {
  struct Case {
    const char* name;
    std::vector<BiPoly> ideal;
    Closure want;
  };
  const std::vector<Case> corpus{{"z1-1/2", {Z1 - q(1, 2)}, Closure::Closed},
                                 {"z1-2", {Z1 - 2}, Closure::Dense},
                                 {"(z1-2)(z1-1/2)", {(Z1 - 2) * (Z1 - q(1, 2))}, Closure::Neither},
                                 {"(z1,z2)", {Z1, Z2}, Closure::Closed},
                                 {"(z1-2,z2)", {Z1 - 2, Z2}, Closure::Dense},
                                 {"(z2^2-z1)(z2-2)", {(Z2 * Z2 - Z1) * (Z2 - 2)}, Closure::Neither}};
  ClassifyOptions o;
  o.attach_certificate = false;
  int match = 0, total = 0, inconclusive = 0;
  std::string misses;
  for (const auto& c : corpus)
    for (auto d : {DomainSpec::ball(), DomainSpec(1, 1)}) {
      const Closure got = classify(c.ideal, d, o).overall;
      ++total;
      inconclusive += got == Closure::Inconclusive;
      if (got == c.want)
        ++match;
      else
        misses += std::string(" ") + c.name + "->" + to_string(got);
    }
  return {match == total && inconclusive == 0,
          std::to_string(match) + "/" + std::to_string(total) + " verdicts match, " + std::to_string(inconclusive) +
              " inconclusive" + misses};
}

Outcome criterion7() {
  bool ok = true;
  std::ostringstream os;
  for (const auto& [name, f] : std::vector<std::pair<std::string, BiPoly>>{
           {"z1", Z1}, {"z2", Z2}, {"z1z2", Z1 * Z2}, {"z1^2+z2^2-4", Z1 * Z1 + Z2 * Z2 - 4}}) {
    const HopfRotation rot = find_rotation(f, 1);
    const CBiPoly g = rot.compose(CBiPoly(f));
    double check = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 65536; ++k) check = std::min(check, std::abs(g.eval(0.0, std::polar(1.0, 2 * kPi * k / 65536))));
    const double defect = rot.unitarity_defect();
    ok = ok && defect < 1e-12 && rot.min_modulus > 1e-6 && check > 1e-6 &&
         std::abs(check - rot.min_modulus) < 1e-6;
    if (name == "z1z2") ok = ok && std::abs(rot.min_modulus - 0.5) <= 1e-6;
    os << name << ": defect " << defect << " min " << rot.min_modulus << " (grid " << check << "); ";
  }
  return {ok, os.str()};
}

Outcome criterion8(const std::string& samples) {
  const std::vector<std::vector<std::string>> runs{
      {"classify", "--ideal", samples + "/point_and_line.json", "--samples", "20000"},
      {"classify", "--domain", "1,1", "--ideal", samples + "/princ_two.json", "--samples", "20000"},
      {"density", "--poly", samples + "/princ_two.json", "--samples", "20000"},
      {"ratio", "--poly", samples + "/product_two.json"},
      {"decompose", "--poly", samples + "/twolines.json"},
      {"hopf", "--poly", samples + "/sphere_four.json", "--samples", "20000"},
      {"norms", "--domain", "0.5,3", "--max-degree", "6"}};
  int identical = 0;
  for (const auto& args : runs) {
    std::ostringstream a, b, c, e;
    const int ca = cli::run(args, a, e), cb = cli::run(args, b, e);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "4"});
    const int cc = cli::run(threaded, c, e);
    identical += ca == cb && cb == cc && !a.str().empty() && a.str() == b.str() && b.str() == c.str();
  }
  return {identical == static_cast<int>(runs.size()),
          std::to_string(identical) + "/" + std::to_string(runs.size()) +
              " subcommand reports byte-identical across repeats and thread counts"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"monomial norms vs Monte Carlo", criterion1},
      {"dilation ratio bound", criterion2},
      {"density convergence for z1 - 2", criterion3},
      {"non-density lower bound for z1", criterion4},
      {"monodromy component counts", criterion5},
      {"classifier corpus", criterion6},
      {"Hopf rotation", criterion7},
      {"report determinism", [] { return criterion8(NULLSATZ_SAMPLES_DIR); }}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
