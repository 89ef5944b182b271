#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hbn/geometry.hpp"

using namespace hbn;
using std::numbers::pi;

namespace {

std::vector<DomainSpec> builtins() {
  return {DomainSpec::half_plane(), DomainSpec::sector(pi / 2), DomainSpec::sector(1.3 * pi),
          DomainSpec::slit_plane(), DomainSpec::disk_exterior(1.0, {2.0, 0.0}),
          DomainSpec::disk(1.0)};
}

}  // namespace

TEST(Geometry, ContainsExamples) {
  EXPECT_TRUE(contains(DomainSpec::half_plane(), {1.0, 0.0}));
  EXPECT_FALSE(contains(DomainSpec::half_plane(), {-1.0, 0.0}));
  EXPECT_TRUE(contains(DomainSpec::disk_exterior(1.0, {2.0, 0.0}), {2.0, 0.0}));
  EXPECT_FALSE(contains(DomainSpec::slit_plane(), {-3.0, 0.0}));
  EXPECT_TRUE(contains(DomainSpec::slit_plane(), {-3.0, 1e-9}));
  EXPECT_FALSE(contains(DomainSpec::sector(pi / 2), {0.0, 0.0}));
}

TEST(Geometry, BoundaryDistanceExamples) {
  EXPECT_DOUBLE_EQ(boundary_distance(DomainSpec::half_plane(), {1.0, 0.0}), 1.0);
  EXPECT_NEAR(boundary_distance(DomainSpec::sector(pi / 2), {2.0, 0.0}), 2.0 * std::sin(pi / 4), 1e-15);
  EXPECT_DOUBLE_EQ(boundary_distance(DomainSpec::disk_exterior(1.0, {2.0, 0.0}), {3.0, 0.0}), 2.0);
  // Behind both rays the nearest boundary point of a wide sector is the vertex.
  EXPECT_DOUBLE_EQ(boundary_distance(DomainSpec::sector(1.5 * pi), {1.0, 0.0}), 1.0);
  EXPECT_NEAR(boundary_distance(DomainSpec::sector(1.5 * pi), std::polar(1.0, 0.7 * pi)),
              std::sin(0.05 * pi), 1e-15);
  EXPECT_DOUBLE_EQ(boundary_distance(DomainSpec::slit_plane(), {-2.0, 0.5}), 0.5);
}

TEST(Geometry, BoundaryDistanceOutsideThrows) {
  try {
    boundary_distance(DomainSpec::half_plane(), {-1.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::QueryOutsideDomain);
  }
}

TEST(Geometry, InTailExamples) {
  const auto hp = DomainSpec::half_plane();
  EXPECT_TRUE(in_tail(hp, {1e-7, 5.0}, TailQuery(3.0)));
  EXPECT_FALSE(in_tail(hp, {1e-7, 5.0}, TailQuery(10.0)));
  const auto ext = DomainSpec::disk_exterior(1.0, {2.0, 0.0});
  for (double t = 0.0; t < 2 * pi; t += 0.1)
    EXPECT_FALSE(in_tail(ext, std::polar(1.0 + 1e-7, t), TailQuery(2.0)));
}

TEST(Geometry, InTailIsMonotoneInRadius) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-50.0, 50.0), rr(0.0, 60.0);
  for (const auto& d : builtins()) {
    for (int i = 0; i < 500; ++i) {
      const PlanePoint z{u(gen), u(gen)};
      double r1 = rr(gen), r2 = rr(gen);
      if (r1 > r2) std::swap(r1, r2);
      if (in_tail(d, z, TailQuery(r2))) {
        EXPECT_TRUE(in_tail(d, z, TailQuery(r1)));
      }
    }
  }
}

TEST(Geometry, InscribedCircleStaysInside) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (const auto& d : builtins()) {
    int checked = 0;
    while (checked < 200) {
      const PlanePoint z{u(gen), u(gen)};
      if (!contains(d, z)) continue;
      ++checked;
      const double rho = boundary_distance(d, z);
      ASSERT_GT(rho, 0.0);
      for (int k = 0; k < 256; ++k)
        EXPECT_TRUE(contains(d, z + std::polar(0.999 * rho, 2 * pi * k / 256)))
            << shape_name(d) << " z=" << z;
      // Exact distance for built-ins: the slightly larger circle leaves D.
      // The slit plane's complement has no interior, so sampling cannot see it.
      const auto* sec = std::get_if<Sector>(&d.shape());
      if (sec && sec->opening == 2 * pi) continue;
      bool leaves = false;
      for (int k = 0; k < 4096 && !leaves; ++k)
        leaves = !contains(d, z + std::polar(1.01 * rho, 2 * pi * k / 4096));
      EXPECT_TRUE(leaves) << shape_name(d) << " z=" << z;
    }
  }
}

TEST(Geometry, NearestBoundaryPointIsAtDistance) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (const auto& d : builtins()) {
    for (int i = 0; i < 300; ++i) {
      const PlanePoint z{u(gen), u(gen)};
      if (!contains(d, z)) continue;
      EXPECT_NEAR(std::abs(nearest_boundary_point(d, z) - z), boundary_distance(d, z), 1e-12);
    }
  }
}

TEST(Geometry, ValidatesConstruction) {
  EXPECT_THROW(DomainSpec::sector(0.0), Error);
  EXPECT_THROW(DomainSpec::sector(2 * pi + 1e-9), Error);
  EXPECT_THROW(DomainSpec::disk(-1.0), Error);
  try {
    DomainSpec::half_plane({-1.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BasepointOutsideDomain);
  }
  EXPECT_THROW(DomainSpec::half_plane({NAN, 0.0}), Error);
  EXPECT_THROW(TailQuery{-1.0}, Error);
  EXPECT_THROW(TailQuery{std::numeric_limits<double>::infinity()}, Error);
  EXPECT_NO_THROW(TailQuery{0.0});
}

TEST(Geometry, Flags) {
  EXPECT_FALSE(DomainSpec::disk_exterior(1.0, {2.0, 0.0}).regular());
  EXPECT_FALSE(DomainSpec::disk_exterior(1.0, {2.0, 0.0}).simply_connected());
  EXPECT_TRUE(DomainSpec::disk(1.0).bounded());
  for (const auto& d : {DomainSpec::half_plane(), DomainSpec::sector(1.0), DomainSpec::disk(2.0)})
    EXPECT_TRUE(d.regular());
}

TEST(Geometry, AffineImageExamples) {
  const auto hp = DomainSpec::half_plane();
  const auto same = affine_image(hp, 1.0, 0.0);
  EXPECT_TRUE(std::holds_alternative<HalfPlane>(same.shape()));
  EXPECT_EQ(same.basepoint(), hp.basepoint());

  const auto doubled = affine_image(hp, 2.0, 0.0);
  EXPECT_TRUE(std::holds_alternative<HalfPlane>(doubled.shape()));
  EXPECT_EQ(doubled.basepoint(), PlanePoint(2.0, 0.0));
  EXPECT_DOUBLE_EQ(boundary_distance(doubled, {2.0, 0.0}), 2.0 * boundary_distance(hp, {1.0, 0.0}));

  const auto moved = affine_image(DomainSpec::disk(1.0), 1.0, 5.0);
  EXPECT_TRUE(contains(moved, {5.5, 0.0}));
  EXPECT_FALSE(contains(moved, {0.0, 0.0}));
  EXPECT_NEAR(boundary_distance(moved, {5.0, 0.0}), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(nearest_boundary_point(moved, {5.5, 0.0}) - PlanePoint(6.0, 0.0)), 0.0, 1e-15);
  EXPECT_TRUE(moved.bounded());

  try {
    affine_image(hp, 0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroScale);
  }
}

TEST(Geometry, AffineImagePreservesContains) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const std::vector<std::pair<PlanePoint, PlanePoint>> maps = {
      {{2.0, 0.0}, {0.0, 0.0}}, {{0.0, 1.0}, {0.0, 0.0}}, {{1.0, -2.0}, {3.0, 1.0}},
      {{-0.5, 0.0}, {-1.0, 2.0}}};
  for (const auto& d : builtins()) {
    for (const auto& [a, b] : maps) {
      const auto img = affine_image(d, a, b);
      EXPECT_EQ(img.regular(), d.regular());
      EXPECT_EQ(img.bounded(), d.bounded());
      for (int i = 0; i < 300; ++i) {
        const PlanePoint z{u(gen), u(gen)};
        EXPECT_EQ(contains(d, z), contains(img, a * z + b));
        if (contains(d, z)) {
          EXPECT_NEAR(boundary_distance(img, a * z + b), std::abs(a) * boundary_distance(d, z), 1e-12);
        }
      }
    }
  }
}

TEST(Geometry, AffineImagesCompose) {
  const auto once = affine_image(affine_image(DomainSpec::half_plane(), {0.0, 1.0}, 2.0), 3.0, {0.0, 1.0});
  const auto* g = std::get_if<GenericSdf>(&once.shape());
  ASSERT_NE(g, nullptr);
  ASSERT_TRUE(g->source);
  EXPECT_TRUE(std::holds_alternative<HalfPlane>(g->source->base.shape()));
  EXPECT_EQ(g->source->scale, PlanePoint(0.0, 3.0));
  EXPECT_EQ(g->source->shift, PlanePoint(6.0, 1.0));
}
