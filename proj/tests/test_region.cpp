// Copyright 2026 The clonereg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "clonereg/region.hpp"
#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace clonereg {
namespace {

/// Direct form t^2/a^2 + (s - c_lambda)^2/b^2 - lambda^2 of the lambda-ellipse.
double ellipse_excess(SingletPair p, int d, double lambda) {
  const double k = d * d - 1.0;
  const double a2 = 1.0 / k, b = 1.0 / k, c = (lambda * d - 2.0) / k;
  const double s = p.p1 + p.p2, t = p.p1 - p.p2;
  return t * t / a2 + (s - c) * (s - c) / (b * b) - lambda * lambda;
}

/// Reference membership by scanning 10^4 + 1 lambda values.
bool grid_member(SingletPair p, int d) {
  const int steps = 10000;
  for (int k = 0; k <= steps; ++k) {
    if (ellipse_excess(p, d, static_cast<double>(d) * k / steps) <= 0.0) return true;
  }
  return false;
}

TEST(Coordinates, Landmarks) {
  const RegionCoords rc = to_region_coords({1.0, 0.0}, 2);
  EXPECT_EQ(rc.s, 1.0);
  EXPECT_EQ(rc.t, 1.0);
  const RegionCoords from_f = coords_from_fidelities(5.0 / 6.0, 5.0 / 6.0, 2);
  const RegionCoords from_p = to_region_coords({2.0 / 3.0, 2.0 / 3.0}, 2);
  EXPECT_NEAR(from_f.s, 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(from_f.t, 0.0, 1e-15);
  EXPECT_NEAR(from_f.s, from_p.s, 1e-15);
  EXPECT_NEAR(from_f.t, from_p.t, 1e-15);
}

TEST(Coordinates, ConstantsAndRoundTrip) {
  auto rng = std::mt19937_64(1);
  for (int d : {2, 3, 4}) {
    const RegionCoords frame{0, 0, d};
    EXPECT_NEAR(frame.a() * frame.a(), frame.b(), 1e-15);
    for (int k = 0; k < 100; ++k) {
      const SingletPair p = gen::uniform_pair(-0.5, 1.5, rng);
      const SingletPair back = from_region_coords(to_region_coords(p, d));
      EXPECT_NEAR(back.p1, p.p1, 1e-14);
      EXPECT_NEAR(back.p2, p.p2, 1e-14);
      // fidelity route
      const double f1 = p.p1 + (1 - p.p1) / d, f2 = p.p2 + (1 - p.p2) / d;
      const RegionCoords viaf = coords_from_fidelities(f1, f2, d);
      EXPECT_NEAR(viaf.s, p.p1 + p.p2, 1e-14);
      EXPECT_NEAR(viaf.t, p.p1 - p.p2, 1e-14);
    }
  }
  EXPECT_THROW(to_region_coords({0, 0}, 1), std::invalid_argument);
}

TEST(Landmarks, SymmetricMaximumAndMinimumFraction) {
  EXPECT_DOUBLE_EQ(symmetric_pmax(2), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(min_singlet_fraction(2), -1.0 / 3.0);
  EXPECT_DOUBLE_EQ(symmetric_pmax(3), 5.0 / 8.0);
  EXPECT_DOUBLE_EQ(min_singlet_fraction(3), -1.0 / 8.0);
  EXPECT_DOUBLE_EQ(symmetric_pmax(4), 3.0 / 5.0);
  EXPECT_DOUBLE_EQ(min_singlet_fraction(4), -1.0 / 15.0);
}

TEST(RestrictedRegion, Examples) {
  const RegionWitness origin2 = in_restricted_region({0.0, 0.0}, 2);
  EXPECT_TRUE(origin2.inside);
  EXPECT_NEAR(origin2.margin, 0.0, 1e-15);
  EXPECT_NEAR(origin2.algebraic_margin, 0.0, 1e-15);
  const RegionWitness origin3 = in_restricted_region({0.0, 0.0}, 3);
  EXPECT_FALSE(origin3.inside);
  EXPECT_LT(origin3.margin, 0.0);
  EXPECT_FALSE(origin3.witness_lambda.has_value());
  const RegionWitness top = in_restricted_region({2.0 / 3.0, 2.0 / 3.0}, 2);
  EXPECT_TRUE(top.inside);
  EXPECT_NEAR(top.margin, 0.0, 1e-15);
  EXPECT_NEAR(top.algebraic_margin, 0.0, 1e-15);
  EXPECT_EQ(*top.witness_lambda, 2.0);
}

TEST(RestrictedRegion, DeterminantAndEllipseFormsAgree) {
  auto rng = std::mt19937_64(2);
  for (int d : {2, 3, 4}) {
    for (int k = 0; k < 1000; ++k) {
      const SingletPair p = gen::uniform_pair(-0.3, 1.1, rng);
      const RegionWitness w = in_restricted_region(p, d);
      const double det = (1 - p.p1) * (1 - p.p2) / (d * d) - std::pow((p.p1 + p.p2 - 1) / 2, 2);
      const double lo = -1.0 / (d * d - 1.0);
      const bool box = p.p1 >= lo && p.p1 <= 1 && p.p2 >= lo && p.p2 <= 1;
      if (box) {
        EXPECT_NEAR(w.algebraic_margin, det, 1e-14);
        EXPECT_NEAR(in_ellipse(p, d, d).algebraic_margin, det, 1e-14);
      }
      if (std::abs(det) > 1e-12 && std::abs(ellipse_excess(p, d, d)) > 1e-9) {
        EXPECT_EQ(w.inside, det >= 0 && box);
        EXPECT_EQ(w.inside, ellipse_excess(p, d, d) <= 0);
      }
    }
  }
}

TEST(RestrictedRegion, EllipseLiesInBox) {
  for (int d : {2, 3, 4}) {
    double lo = 1.0, hi = -1.0;
    for (const auto& bp : boundary_points(d, d, 4096)) {
      lo = std::min({lo, bp.p.p1, bp.p.p2});
      hi = std::max({hi, bp.p.p1, bp.p.p2});
    }
    EXPECT_NEAR(lo, min_singlet_fraction(d), 1e-6);
    EXPECT_NEAR(hi, 1.0, 1e-6);
  }
}

TEST(GeneralRegion, OriginWindow) {
  for (int d = 2; d <= 5; ++d) {
    const RegionWitness w = in_general_region({0.0, 0.0}, d);
    ASSERT_TRUE(w.inside) << "d=" << d;
    EXPECT_NEAR(w.lambda_lo, 2.0 / (d + 1.0), 1e-14);
    EXPECT_NEAR(w.lambda_hi, std::min<double>(d, 2.0 / (d - 1.0)), 1e-14);
    EXPECT_NEAR(*w.witness_lambda, 0.5 * (w.lambda_lo + w.lambda_hi), 1e-15);
  }
}

TEST(GeneralRegion, ContainsRestrictedWithLambdaD) {
  auto rng = std::mt19937_64(3);
  for (int d : {2, 3, 4}) {
    int used = 0;
    while (used < 200) {
      const SingletPair p = gen::uniform_pair(-0.2, 1.0, rng);
      if (!in_restricted_region(p, d).inside) continue;
      const RegionWitness w = in_general_region(p, d);
      EXPECT_TRUE(w.inside);
      EXPECT_NEAR(w.lambda_hi, d, 1e-12);
      ++used;
    }
  }
}

TEST(GeneralRegion, OutsideBeyondOne) {
  const RegionWitness w = in_general_region({1.01, 0.0}, 2);
  EXPECT_FALSE(w.inside);
  EXPECT_LT(w.margin, 0.0);
  for (int k = 0; k <= 1000; ++k) EXPECT_GT(ellipse_excess({1.01, 0.0}, 2, 2.0 * k / 1000), 0.0);
}

TEST(GeneralRegion, AgreesWithLambdaGridScan) {
  auto rng = std::mt19937_64(4);
  for (int d : {2, 3, 4, 5}) {
    int checked = 0;
    for (int k = 0; k < 400; ++k) {
      const SingletPair p = gen::uniform_pair(min_singlet_fraction(d) - 0.1, 1.1, rng);
      const RegionWitness w = in_general_region(p, d);
      if (std::abs(w.margin) < 1e-6) continue;
      EXPECT_EQ(w.inside, grid_member(p, d)) << p.p1 << ", " << p.p2 << " d=" << d;
      ++checked;
    }
    EXPECT_GT(checked, 350);
  }
}

TEST(GeneralRegion, WitnessAndWindowEndpoints) {
  auto rng = std::mt19937_64(5);
  for (int d : {2, 3, 4}) {
    for (int k = 0; k < 500; ++k) {
      const SingletPair p = gen::uniform_pair(min_singlet_fraction(d) - 0.1, 1.1, rng);
      const RegionWitness w = in_general_region(p, d);
      if (!w.inside) continue;
      ASSERT_TRUE(w.witness_lambda.has_value());
      const double l = *w.witness_lambda;
      EXPECT_GE(l, 0.0);
      EXPECT_LE(l, d);
      EXPECT_LE(ellipse_excess(p, d, l), 1e-9);
      EXPECT_TRUE(in_ellipse(p, d, l).inside);
      if (w.lambda_lo > 0.0) {
        EXPECT_NEAR(ellipse_excess(p, d, w.lambda_lo), 0.0, 1e-9);
      }
      if (w.lambda_hi < d) {
        EXPECT_NEAR(ellipse_excess(p, d, w.lambda_hi), 0.0, 1e-9);
      }
    }
  }
}

TEST(Margin, IsLowerBoundOnEuclideanDistance) {
  auto rng = std::mt19937_64(6);
  for (int d : {2, 3}) {
    for (RegionMode mode : {RegionMode::restricted, RegionMode::general}) {
      for (int k = 0; k < 300; ++k) {
        const SingletPair p = gen::uniform_pair(min_singlet_fraction(d) - 0.1, 1.1, rng);
        const RegionWitness w = region_membership(p, d, mode);
        const double r = 0.999 * std::abs(w.margin);
        if (r < 1e-6) continue;
        for (int j = 0; j < 64; ++j) {
          const double th = 2 * std::numbers::pi * j / 64;
          const SingletPair q{p.p1 + r * std::cos(th), p.p2 + r * std::sin(th)};
          EXPECT_EQ(region_membership(q, d, mode).inside, w.inside) << to_string(mode) << " d=" << d;
        }
      }
    }
  }
}

TEST(Region, SwapSymmetry) {
  auto rng = std::mt19937_64(7);
  for (int d : {2, 3, 4}) {
    for (int k = 0; k < 300; ++k) {
      const SingletPair p = gen::uniform_pair(-0.3, 1.1, rng);
      for (RegionMode mode : {RegionMode::restricted, RegionMode::general}) {
        const RegionWitness a = region_membership(p, d, mode);
        const RegionWitness b = region_membership({p.p2, p.p1}, d, mode);
        EXPECT_EQ(a.inside, b.inside);
        EXPECT_NEAR(a.margin, b.margin, 1e-15);
      }
    }
  }
}

TEST(Region, RestrictedEqualsLambdaDEllipse) {
  auto rng = std::mt19937_64(8);
  for (int d : {2, 3, 4}) {
    const double lo = min_singlet_fraction(d) - 0.1;
    for (int k = 0; k < 1000; ++k) {
      const SingletPair p = gen::uniform_pair(lo, 1.1, rng);
      const RegionWitness r = in_restricted_region(p, d);
      const RegionWitness e = in_ellipse(p, d, d);
      if (std::abs(e.margin) < 1e-7) continue;
      EXPECT_EQ(r.inside, e.inside);
    }
  }
}

TEST(BoundaryPoints, CountAndLandmarks) {
  EXPECT_EQ(boundary_points(2, 2.0, 4).size(), 4u);
  const auto pts = boundary_points(2, 2.0, 4);
  EXPECT_NEAR(pts[0].p.p1, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(pts[0].p.p2, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(pts[1].p.p1, 1.0 / 3.0 + 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(pts[1].p.p2, 1.0 / 3.0 - 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_TRUE(in_general_region(pts[1].p, 2).inside);
  EXPECT_NEAR(pts[1].theta, std::numbers::pi / 2, 1e-15);
}

TEST(BoundaryPoints, LieOnTheirEllipseInsideTheRegion) {
  for (int d : {2, 3, 4}) {
    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
      const double l = d * frac;
      for (const auto& bp : boundary_points(d, l, 97)) {
        EXPECT_EQ(bp.lambda, l);
        EXPECT_NEAR(in_ellipse(bp.p, d, l).margin, 0.0, 1e-10);
        const RegionWitness w = in_general_region(bp.p, d);
        EXPECT_TRUE(w.inside);
        EXPECT_GE(w.margin, -1e-10);
        EXPECT_TRUE(w.witness_lambda.has_value());
      }
    }
  }
}

TEST(BoundaryPoints, OptimalCurveSatisfiesDeterminantEquality) {
  for (int d : {2, 3, 4}) {
    for (const auto& bp : boundary_points(d, d, 200)) {
      const double lhs = (1 - bp.p.p1) * (1 - bp.p.p2) / (d * d);
      const double rhs = std::pow((bp.p.p1 + bp.p.p2 - 1) / 2, 2);
      EXPECT_NEAR(lhs, rhs, 1e-10);
      EXPECT_NEAR(in_restricted_region(bp.p, d).margin, 0.0, 1e-10);
    }
  }
}

TEST(BoundaryPoints, Errors) {
  EXPECT_THROW(boundary_points(2, 0.0, 10), std::invalid_argument);
  EXPECT_THROW(boundary_points(2, 2.5, 10), std::invalid_argument);
  EXPECT_THROW(boundary_points(2, 1.0, 2), std::invalid_argument);
}

TEST(AnalyticBitmap, GeometryAndSymmetry) {
  const PlotWindow w = plot_window(2);
  EXPECT_NEAR(w.lo, -1.0 / 3.0 - 0.05, 1e-15);
  EXPECT_EQ(w.hi, 1.05);
  const Bitmap bm = analytic_bitmap(2, RegionMode::general, 32, w);
  EXPECT_EQ(bm.cells.size(), 32u * 32u);
  EXPECT_NEAR(bm.center(0), w.lo + 0.5 * bm.cell_size(), 1e-15);
  for (int r = 0; r < 32; ++r)
    for (int c = 0; c < 32; ++c) EXPECT_EQ(bm.at(r, c), bm.at(c, r));
  const Bitmap restricted = analytic_bitmap(2, RegionMode::restricted, 32, w);
  int inside_general = 0, inside_restricted = 0;
  for (std::size_t k = 0; k < bm.cells.size(); ++k) {
    inside_general += bm.cells[k];
    inside_restricted += restricted.cells[k];
    if (restricted.cells[k]) {
      EXPECT_TRUE(bm.cells[k]);
    }
  }
  EXPECT_GT(inside_general, inside_restricted);
}

}  // namespace
}  // namespace clonereg
