#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "biqwlct/error.hpp"
#include "biqwlct/fft.hpp"
#include "biqwlct/grid.hpp"
#include "biqwlct/parallel.hpp"
#include "biqwlct/transform.hpp"
#include "support/oracles.hpp"
#include "support/rng.hpp"

using namespace biqwlct;
using oracle::kPi;
using testing_support::Rng;

TEST(Axis, SymmetricIsCellCentred) {
  const Axis a = Axis::symmetric(4, 0.5);
  EXPECT_DOUBLE_EQ(a.origin, -0.75);
  EXPECT_DOUBLE_EQ(a.coord(3), 0.75);
  const Axis odd = Axis::symmetric(5, 0.25);
  EXPECT_DOUBLE_EQ(odd.coord(2), 0.0);
}

TEST(Axis, Validate) {
  EXPECT_THROW((Axis{1, 0.0, 1.0}.validate()), Error);
  EXPECT_THROW((Axis{4, 0.0, 0.0}.validate()), Error);
  EXPECT_THROW((Axis{4, 0.0, -1.0}.validate()), Error);
  EXPECT_THROW((Axis{4, NAN, 1.0}.validate()), Error);
  EXPECT_NO_THROW((Axis{2, -3.0, 0.1}.validate()));
}

TEST(Axis, MatchesToleratesRoundOff) {
  const Axis a{8, -1.75, 0.5};
  Axis b = a;
  b.origin += 1e-15;
  EXPECT_TRUE(a.matches(b));
  b.step = 0.5001;
  EXPECT_FALSE(a.matches(b));
  b = a;
  b.n = 9;
  EXPECT_FALSE(a.matches(b));
}

TEST(DualAxis, Examples) {
  const LctParam m1 = LctParam::make(1, 1, 0, 1);
  EXPECT_DOUBLE_EQ(dual_axis(Axis::symmetric(32, 0.25), m1).step, kPi / 4);
  const LctParam m2 = LctParam::make(0.5, 2, 0, 2);
  EXPECT_DOUBLE_EQ(dual_axis(Axis::symmetric(16, 0.5), m2).step, kPi / 2);
}

TEST(DualAxis, SymmetricAndUsesAbsB) {
  const Axis xi{10, 3.0, 0.2};
  const Axis pos = dual_axis(xi, LctParam::make(1, 2, 0, 1));
  const Axis neg = dual_axis(xi, LctParam::make(1, -2, 0, 1));
  EXPECT_TRUE(pos.matches(neg));
  EXPECT_EQ(pos.n, xi.n);
  EXPECT_NEAR(pos.coord(0), -pos.coord(pos.n - 1), 1e-14);
  const GridSpec g = dual_grid(GridSpec{xi, Axis::symmetric(6, 1.0)}, LctParam::make(1, 2, 0, 1),
                               LctParam::make(0, 1, -1, 0));
  EXPECT_DOUBLE_EQ(g.axis2.step, 2 * kPi / 6);
}

TEST(Field2D, Construction) {
  const GridSpec g = GridSpec::symmetric(3, 2, 1.0, 1.0);
  Field2D f{g};
  EXPECT_EQ(f.size(), 6u);
  EXPECT_EQ(f.index(2, 1), 5u);
  f.at(2, 1) = 7.0;
  EXPECT_EQ(f.values()[5], Biquaternion{7.0});
  EXPECT_TRUE(f.all_finite());
  EXPECT_THROW((Field2D{g, std::vector<Biquaternion>(5)}), Error);
  std::vector<Biquaternion> bad(6);
  bad[3] = Biquaternion{Complex{0, INFINITY}};
  EXPECT_THROW((Field2D{g, bad}), Error);
}

TEST(WlctField, Layout) {
  const GridSpec w = GridSpec::symmetric(2, 3, 1.0, 1.0);
  const GridSpec nu = GridSpec::symmetric(4, 2, 0.5, 0.25);
  WlctField field{w, nu};
  EXPECT_EQ(field.slices().size(), 8u);
  field.at(1, 2, 3, 1) = 5.0;
  EXPECT_EQ(field.slice(3, 1).at(1, 2), Biquaternion{5.0});
  EXPECT_DOUBLE_EQ(field.cell_volume(), 1.0 * 0.5 * 0.25);
}

TEST(NuLattice, CountsAndOffsets) {
  const GridSpec g = GridSpec::symmetric(16, 15, 0.5, 0.25);
  const GridSpec nu = nu_lattice(g, 1);
  EXPECT_EQ(nu.axis1.n, 16u);
  EXPECT_DOUBLE_EQ(nu.axis1.origin, -8 * 0.5);
  EXPECT_EQ(nu.axis2.n, 15u);
  EXPECT_DOUBLE_EQ(nu.axis2.origin, -7 * 0.25);
  const GridSpec s3 = nu_lattice(g, 3);
  EXPECT_EQ(s3.axis1.n, 6u);
  EXPECT_DOUBLE_EQ(s3.axis1.step, 1.5);
  EXPECT_DOUBLE_EQ(s3.axis1.origin, -3 * 1.5);
  EXPECT_THROW(nu_lattice(g, 0), Error);
}

class FftSizes : public ::testing::TestWithParam<std::size_t> {};

TEST_P(FftSizes, MatchesNaiveDft) {
  const std::size_t n = GetParam();
  Rng rng(40 + n);
  std::vector<Complex> x(n), y(n);
  for (auto& v : x) v = {rng.normal(), rng.normal()};
  FftPlan plan{n};
  EXPECT_EQ(plan.size(), n);
  plan.forward(x, y);
  double worst = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    oracle::cd acc{};
    for (std::size_t j = 0; j < n; ++j) {
      const double t = -2 * kPi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      acc += x[j] * oracle::cd{std::cos(t), std::sin(t)};
    }
    worst = std::max(worst, std::abs(acc - y[k]));
    scale = std::max(scale, std::abs(acc));
  }
  EXPECT_LT(worst, 1e-13 * std::max(1.0, scale));
}

INSTANTIATE_TEST_SUITE_P(Radices, FftSizes,
                         ::testing::Values(1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 16, 17, 30, 31, 32,
                                           45, 64, 97, 100, 128, 210, 256));

TEST(Fft, LinearAndUnitImpulse) {
  FftPlan plan{8};
  std::vector<Complex> x(8), y(8);
  x[0] = 1.0;
  plan.forward(x, y);
  for (const auto& v : y) EXPECT_LT(std::abs(v - Complex{1.0}), 1e-15);
  std::fill(x.begin(), x.end(), Complex{2.0, -1.0});
  plan.forward(x, y);
  EXPECT_LT(std::abs(y[0] - Complex{16.0, -8.0}), 1e-14);
  for (std::size_t k = 1; k < 8; ++k) EXPECT_LT(std::abs(y[k]), 1e-14);
}

TEST(Parallel, VisitsEveryIndexOnce) {
  for (std::size_t count : {0u, 1u, 7u, 1000u}) {
    std::vector<int> hits(count, 0);
    parallel_for(count, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (int h : hits) EXPECT_EQ(h, 1);
  }
  EXPECT_GE(worker_count(), 1u);
}

TEST(Parallel, ThreadCapFromEnvironment) {
  ::setenv("BIQWLCT_THREADS", "1", 1);
  EXPECT_EQ(worker_count(), 1u);
  ::setenv("BIQWLCT_THREADS", "junk", 1);
  EXPECT_GE(worker_count(), 1u);
  ::unsetenv("BIQWLCT_THREADS");
}
