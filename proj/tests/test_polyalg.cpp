#include <gtest/gtest.h>

#include <random>

#include "nullsatz/poly_json.hpp"
#include "nullsatz/polyalg.hpp"

using namespace nullsatz;

namespace {

const BiPoly Z1 = BiPoly::z1();
const BiPoly Z2 = BiPoly::z2();

BiPoly half() { return BiPoly(GaussRational(Rational(1, 2))); }

BiPoly random_poly(std::mt19937& rng, int max_deg, int max_terms) {
  std::uniform_int_distribution<int> deg(0, max_deg), coef(-3, 3), terms(1, max_terms),
      flavor(0, 5);
  BiPoly f;
  int n = terms(rng);
  for (int k = 0; k < n; ++k) {
    GaussRational c(static_cast<long>(coef(rng)));
    int kind = flavor(rng);
    if (kind == 0) c = GaussRational(Rational(coef(rng), 2), Rational(coef(rng)));
    if (kind == 1) c = GaussRational(0, Rational(coef(rng), 3));
    f.add_term(deg(rng), deg(rng), c);
  }
  return f;
}

}  // namespace

TEST(Arith, DifferenceOfSquares) {
  EXPECT_EQ((Z1 + Z2) * (Z1 - Z2), Z1 * Z1 - Z2 * Z2);
}

TEST(Arith, EvalExactAndFloat) {
  BiPoly f = Z1 * Z1 * Z2 + 1;
  EXPECT_EQ(f.eval(GaussRational(2), GaussRational(3)), GaussRational(13));
  EXPECT_NEAR(std::abs(f.eval(Complex(2, 0), Complex(3, 0)) - Complex(13, 0)), 0.0, 1e-14);
  CBiPoly nf(f);
  EXPECT_NEAR(std::abs(nf.eval(Complex(2, 0), Complex(3, 0)) - Complex(13, 0)), 0.0, 1e-14);
}

TEST(Arith, AdditiveInverseIsZero) {
  BiPoly f = Z1 * Z2 - 3 * Z2 + half();
  EXPECT_TRUE((f + (-f)).is_zero());
  EXPECT_TRUE((f - f).terms().empty());
}

TEST(Arith, FloatEvalMatchesExactOnRandomPolys) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    BiPoly f = random_poly(rng, 5, 6);
    Complex x1(0.3, -0.7), x2(-1.1, 0.4);
    Complex sparse = f.eval(x1, x2);
    Complex dense = CBiPoly(f).eval(x1, x2);
    Complex direct{};
    for (const auto& [e, c] : f.terms())
      direct += c.to_complex() * std::pow(x1, e.a) * std::pow(x2, e.b);
    EXPECT_NEAR(std::abs(sparse - direct), 0.0, 1e-11);
    EXPECT_NEAR(std::abs(dense - direct), 0.0, 1e-11);
  }
}

TEST(TotalD, Examples) {
  EXPECT_EQ(total_d(Z1 * Z1 * Z2 + 1), 3);
  EXPECT_EQ(total_d(BiPoly(5)), 0);
  EXPECT_EQ(total_d((Z1 - 2) * (Z2 - 2)), 2);
  EXPECT_THROW(total_d(BiPoly()), DegreeError);
}

TEST(Gcd2, Examples) {
  EXPECT_EQ(gcd2(Z2 * Z2 - Z1 * Z1, Z2 - Z1), Z2 - Z1);
  EXPECT_EQ(gcd2(Z1, Z2), BiPoly(1));
  BiPoly f = (Z2 - Z1) * (Z2 - Z1) * (Z2 + 2);
  BiPoly g = (Z2 - Z1) * (Z1 - 3);
  BiPoly h = gcd2(f, g);
  EXPECT_EQ(h, Z2 - Z1);
  EXPECT_TRUE(divide_exact(f, h).has_value());
  EXPECT_TRUE(divide_exact(g, h).has_value());
  EXPECT_THROW(gcd2(BiPoly(), BiPoly()), DegreeError);
  EXPECT_EQ(gcd2(BiPoly(), 3 * Z1), Z1);
}

TEST(Gcd2, ContentInZ1IsKept) {
  // common factor free of z2
  BiPoly f = (Z1 - 2) * (Z2 + Z1);
  BiPoly g = (Z1 - 2) * (Z1 + 5) * Z2;
  EXPECT_EQ(gcd2(f, g), Z1 - 2);
}

TEST(Gcd2, PropertyDividesAndRecoversCommonFactor) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    BiPoly h = random_poly(rng, 2, 3);
    BiPoly f = random_poly(rng, 2, 3) * h;
    BiPoly g = random_poly(rng, 2, 3) * h;
    if (f.is_zero() || g.is_zero()) continue;
    BiPoly d = gcd2(f, g);
    ASSERT_TRUE(divide_exact(f, d).has_value()) << f << " / " << d;
    ASSERT_TRUE(divide_exact(g, d).has_value()) << g << " / " << d;
    if (!h.is_zero()) {
      ASSERT_TRUE(divide_exact(d, normalized(h)).has_value()) << d << " vs " << h;
    }
    EXPECT_TRUE(d.leading_term().second.is_one());
  }
}

TEST(DivideExact, RejectsNonMultiples) {
  EXPECT_FALSE(divide_exact(Z1 * Z1 + 1, Z1).has_value());
  EXPECT_EQ(*divide_exact(Z1 * Z1 - Z2 * Z2, Z1 + Z2), Z1 - Z2);
}

namespace {
BiPoly reconstruct(const SquarefreeDecomposition& d) {
  BiPoly p(d.unit);
  for (const auto& f : d.factors) p *= f.factor.pow(f.multiplicity);
  return p;
}
int multiplicity_of(const SquarefreeDecomposition& d, const BiPoly& factor) {
  for (const auto& f : d.factors)
    if (f.factor == factor) return f.multiplicity;
  return 0;
}
}  // namespace

TEST(Squarefree, Examples) {
  auto d1 = squarefree((Z2 - Z1) * (Z2 - Z1));
  ASSERT_EQ(d1.factors.size(), 1u);
  EXPECT_EQ(d1.factors[0].factor, Z2 - Z1);
  EXPECT_EQ(d1.factors[0].multiplicity, 2);

  auto d2 = squarefree(Z2 * Z2 - Z1);
  ASSERT_EQ(d2.factors.size(), 1u);
  EXPECT_EQ(d2.factors[0].factor, Z2 * Z2 - Z1);
  EXPECT_EQ(d2.factors[0].multiplicity, 1);

  auto d3 = squarefree(Z1 * Z1 * (Z2 + 2));
  ASSERT_EQ(d3.factors.size(), 2u);
  EXPECT_EQ(multiplicity_of(d3, Z1), 2);
  EXPECT_EQ(multiplicity_of(d3, Z2 + 2), 1);

  EXPECT_THROW(squarefree(BiPoly(4)), DegreeError);
}

TEST(Squarefree, PropertyReconstructsExactly) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    BiPoly a = random_poly(rng, 2, 3), b = random_poly(rng, 1, 2);
    BiPoly f = a * b * b * BiPoly(GaussRational(Rational(3, 2), 1));
    if (f.is_constant()) continue;
    auto d = squarefree(f);
    EXPECT_EQ(reconstruct(d), f);
    for (const auto& fac : d.factors) {
      // each factor is square-free: no common factor with both partials
      BiPoly g = gcd2(fac.factor, gcd2(fac.factor.derivative_z1(), fac.factor.derivative_z2()));
      EXPECT_TRUE(g.is_constant()) << fac.factor;
    }
  }
}

TEST(Resultant, Examples) {
  EXPECT_EQ(resultant_z2(Z2 * Z2 - Z1, Z2 + 2), (QPoly{GaussRational(4), GaussRational(-1)}));
  EXPECT_EQ(resultant_z2(Z2 - Z1, Z2 + Z1), (QPoly{GaussRational(0), GaussRational(2)}));
  BiPoly f = Z2 * Z2 * Z1 - Z1 + 3 * Z2;
  EXPECT_TRUE(resultant_z2(f, f).is_zero());
  EXPECT_THROW(resultant_z2(Z1, Z1 + 1), DegreeError);
}

TEST(Resultant, VanishesExactlyAtCommonRoots) {
  // z2^2 - z1 and z2 + 2 share the root z2 = -2 exactly when z1 = 4
  QPoly r = resultant_z2(Z2 * Z2 - Z1, Z2 + 2);
  EXPECT_TRUE(r.eval(GaussRational(4)).is_zero());
  EXPECT_FALSE(r.eval(GaussRational(3)).is_zero());
}

TEST(Resultant, PropertyMultiplicative) {
  std::mt19937 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    BiPoly f = random_poly(rng, 2, 3), h = random_poly(rng, 2, 3), g = random_poly(rng, 2, 3);
    if (f.deg_z2() < 1 || h.deg_z2() < 1 || g.deg_z2() < 1) continue;
    EXPECT_EQ(resultant_z2(f * h, g), resultant_z2(f, g) * resultant_z2(h, g));
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(Resultant, MatchesBruteForceSylvesterDeterminant) {
  // independent route: determinant of the Sylvester matrix with polynomial entries,
  // expanded by cofactors
  using Row = std::vector<QPoly>;
  std::function<QPoly(const std::vector<Row>&)> det = [&](const std::vector<Row>& m) -> QPoly {
    if (m.size() == 1) return m[0][0];
    QPoly acc;
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (m[0][c].is_zero()) continue;
      std::vector<Row> minor;
      for (std::size_t r = 1; r < m.size(); ++r) {
        Row row;
        for (std::size_t k = 0; k < m.size(); ++k)
          if (k != c) row.push_back(m[r][k]);
        minor.push_back(row);
      }
      QPoly term = m[0][c] * det(minor);
      acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
  };
  std::mt19937 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    BiPoly f = random_poly(rng, 2, 4), g = random_poly(rng, 2, 4);
    int m = f.deg_z2(), n = g.deg_z2();
    if (m < 1 || n < 1) continue;
    auto fz = f.as_z2_poly(), gz = g.as_z2_poly();
    std::vector<Row> s(static_cast<std::size_t>(m + n), Row(static_cast<std::size_t>(m + n)));
    for (int r = 0; r < n; ++r)
      for (int k = 0; k <= m; ++k) s[r][r + k] = fz[m - k];
    for (int r = 0; r < m; ++r)
      for (int k = 0; k <= n; ++k) s[n + r][r + k] = gz[n - k];
    EXPECT_EQ(resultant_z2(f, g), det(s));
  }
}

TEST(Shear, SubstitutesLinearly) {
  BiPoly f = Z1 * Z2 - 2;
  BiPoly s = shear(f, GaussRational(3));
  EXPECT_EQ(s, (Z1 + 3 * Z2) * Z2 - 2);
}

TEST(Rational, ParsesExactly) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
  EXPECT_EQ(parse_rational("2.5e-1"), Rational(1, 4));
  EXPECT_EQ(parse_rational("1E2"), Rational(100));
  EXPECT_EQ(parse_rational(" 7 "), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
  EXPECT_THROW(parse_rational("1.5x"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
}

TEST(PolyJson, RoundTripIsLossless) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    BiPoly f = random_poly(rng, 4, 5);
    std::string text = poly_to_json(f).dump();
    EXPECT_EQ(poly_from_json(nlohmann::json::parse(text)), f);
  }
}

TEST(PolyJson, ParsesDecimalsAndRejectsMalformedTerms) {
  auto j = nlohmann::json::parse(
      R"({"vars":["z1","z2"],"terms":[{"a":1,"b":0,"re":"1","im":"0"},{"a":0,"b":0,"re":"-0.5"}]})");
  EXPECT_EQ(poly_from_json(j), Z1 - half());

  auto bad = nlohmann::json::parse(R"({"terms":[{"a":1,"b":0,"re":"1"},{"a":-1,"b":0,"re":"2"}]})");
  try {
    poly_from_json(bad);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("term 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(poly_from_json(nlohmann::json::parse(R"({"terms":[{"a":0,"b":0,"re":"x"}]})")),
               InputError);
  EXPECT_THROW(poly_from_json(nlohmann::json::parse(R"({"vars":["x","y"],"terms":[]})")),
               InputError);
}

TEST(PolyJson, IdealForms) {
  auto one = nlohmann::json::parse(R"({"terms":[{"a":1,"b":0,"re":"1"}]})");
  EXPECT_EQ(ideal_from_json(one).size(), 1u);
  auto arr = nlohmann::json::array({one, one});
  EXPECT_EQ(ideal_from_json(arr).size(), 2u);
  nlohmann::json obj = {{"generators", arr}};
  EXPECT_EQ(ideal_from_json(obj).size(), 2u);
  EXPECT_THROW(ideal_from_json(nlohmann::json::array()), InputError);
}
