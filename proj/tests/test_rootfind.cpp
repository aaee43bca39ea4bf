#include <gtest/gtest.h>

#include <random>

#include "nullsatz/rootfind.hpp"

using namespace nullsatz;

namespace {

const BiPoly Z1 = BiPoly::z1();
const BiPoly Z2 = BiPoly::z2();

std::vector<Complex> from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const auto& r : roots) {
    std::vector<Complex> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = next;
  }
  return c;
}

Path loop_around_origin(double radius) {
  Path p;
  p.then(Path::circle(Complex(0, 0), Complex(radius, 0)));
  return p;
}

std::vector<Complex> base_fiber(const CBiPoly& f, Complex z1) {
  return all_roots(f.slice_z1(z1)).roots;
}

}  // namespace

TEST(AllRoots, ImaginaryUnitPair) {
  RootSet rs = all_roots(std::vector<Complex>{1.0, 0.0, 1.0});
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_NEAR(std::abs(rs.roots[0] - Complex(0, -1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(rs.roots[1] - Complex(0, 1)), 0.0, 1e-12);
  EXPECT_EQ(rs.degree, 2);
}

TEST(AllRoots, FiberOfParabolaAtFour) {
  CBiPoly f(Z2 * Z2 - Z1);
  RootSet rs = all_roots(f.slice_z1(Complex(4, 0)));
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_NEAR(std::abs(rs.roots[0] - Complex(-2, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(rs.roots[1] - Complex(2, 0)), 0.0, 1e-12);
}

TEST(AllRoots, KnownFactorization) {
  RootSet rs = all_roots(from_roots({1.0, 2.0, 3.0}));
  ASSERT_EQ(rs.roots.size(), 3u);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(std::abs(rs.roots[k] - Complex(k + 1, 0)), 0.0, 1e-10);
}

TEST(AllRoots, MultipleRootsAreClustered) {
  RootSet rs = all_roots(from_roots({1.0, 1.0, -2.0}));
  ASSERT_EQ(rs.clusters.size(), 2u);
  int total = 0;
  for (const auto& c : rs.clusters) {
    total += c.multiplicity;
    if (c.multiplicity == 2) {
      EXPECT_NEAR(std::abs(c.center - Complex(1, 0)), 0.0, 1e-7);
    }
  }
  EXPECT_EQ(total, 3);
}

TEST(AllRoots, ExactZeroRootsFactoredOut) {
  RootSet rs = all_roots(std::vector<Complex>{0.0, 0.0, -1.0, 1.0});
  ASSERT_EQ(rs.roots.size(), 3u);
  EXPECT_EQ(rs.roots[0], Complex(0, 0));
  EXPECT_EQ(rs.roots[1], Complex(0, 0));
  EXPECT_NEAR(std::abs(rs.roots[2] - Complex(1, 0)), 0.0, 1e-14);
}

TEST(AllRoots, Errors) {
  EXPECT_THROW(all_roots(std::vector<Complex>{3.0}), DegreeError);
  EXPECT_THROW(all_roots(std::vector<Complex>{1.0, 1.0, 1e-20}), DegreeError);
  RootOptions starved;
  starved.max_sweeps = 1;
  try {
    all_roots(from_roots({0.5, 1.5, -2.0, Complex(0, 3), 4.0}), starved);
    FAIL() << "expected RootFindError";
  } catch (const RootFindError& e) {
    EXPECT_EQ(e.best_iterate().size(), 5u);
  }
}

TEST(AllRoots, PropertyResidualInvariant) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> deg(1, 9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = Complex(u(rng), u(rng));
    RootSet rs = all_roots(c);
    ASSERT_EQ(static_cast<int>(rs.roots.size()), rs.degree);
    double norm = 0;
    for (const auto& x : c) norm = std::max(norm, std::abs(x));
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
      const double scale = std::pow(std::max(1.0, std::abs(rs.roots[i])), rs.degree);
      EXPECT_LE(rs.residuals[i], 1e-10 * (1 + norm) * scale);
    }
    EXPECT_TRUE(std::is_sorted(rs.roots.begin(), rs.roots.end(), detail::lex_less));
  }
}

TEST(Track, SquareRootLoopSwapsSheets) {
  CBiPoly f(Z2 * Z2 - Z1);
  Path loop = loop_around_origin(0.3);
  TrackedPath tp = track(f, loop, base_fiber(f, loop.start()));
  EXPECT_EQ(tp.permutation(), (std::vector<int>{1, 0}));
}

TEST(Track, SingleValuedRootsGiveIdentity) {
  CBiPoly f(Z2 * Z2 - Z1 * Z1);
  Path loop = loop_around_origin(0.3);
  EXPECT_EQ(track(f, loop, base_fiber(f, loop.start())).permutation(), (std::vector<int>{0, 1}));

  CBiPoly g((Z2 - 1) * (Z2 - 2));
  Path other;
  other.then(Path::segment(Complex(0.5, 0.5), Complex(2, 0)))
      .then(Path::circle(Complex(1, 0), Complex(2, 0)))
      .then(Path::segment(Complex(2, 0), Complex(0.5, 0.5)));
  EXPECT_EQ(track(g, other, base_fiber(g, other.start())).permutation(),
            (std::vector<int>{0, 1}));
}

TEST(Track, LoopThenReverseIsIdentity) {
  CBiPoly f(Z2 * Z2 * Z2 - Z1 * Z1 + Z1 * Z2);
  Path loop;
  const Complex base(0.7, 0.4);
  loop.then(Path::segment(base, Complex(0.1, 0))).then(Path::circle(Complex(0, 0), Complex(0.1, 0)))
      .then(Path::segment(Complex(0.1, 0), base));
  auto fiber = base_fiber(f, base);
  TrackedPath there = track(f, loop, fiber);
  TrackedPath back = track(f, loop.reversed(), there.fibers.back());
  std::vector<Complex> end = back.fibers.back();
  auto m = nearest_matching(end, fiber);
  ASSERT_TRUE(m.has_value());
  for (std::size_t i = 0; i < m->size(); ++i) EXPECT_EQ((*m)[i], static_cast<int>(i));
}

TEST(Track, PermutationStableUnderStepHalving) {
  CBiPoly f(Z2 * Z2 * Z2 - Z1);
  Path loop = loop_around_origin(0.5);
  auto fiber = base_fiber(f, loop.start());
  TrackOptions coarse, fine;
  fine.max_step = coarse.max_step / 2;
  auto p1 = track(f, loop, fiber, coarse).permutation();
  auto p2 = track(f, loop, fiber, fine).permutation();
  EXPECT_EQ(p1, p2);
  // a cube root is a 3-cycle
  for (int i = 0; i < 3; ++i) EXPECT_NE(p1[static_cast<std::size_t>(i)], i);
}

TEST(Track, ClearanceViolationIsAnError) {
  CBiPoly f(Z2 * Z2 - Z1);
  TrackOptions opt;
  opt.branch_points = {Complex(0, 0)};
  opt.clearance = 0.5;
  Path loop = loop_around_origin(0.3);
  EXPECT_THROW(track(f, loop, base_fiber(f, loop.start()), opt), TrackingError);
}

TEST(Track, RejectsWrongInitialFiber) {
  CBiPoly f(Z2 * Z2 - Z1);
  Path loop = loop_around_origin(0.3);
  EXPECT_THROW(track(f, loop, {Complex(1, 0), Complex(-1, 0)}), TrackingError);
}
