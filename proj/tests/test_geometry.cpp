#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "numrange_lab/geometry.hpp"
#include "numrange_lab/rng.hpp"
#include "numrange_lab/theory.hpp"

using namespace numrange_lab;

namespace {

std::vector<double> uniform_angles(std::size_t count) {
  std::vector<double> thetas(count);
  for (std::size_t k = 0; k < count; ++k)
    thetas[k] = 2.0 * M_PI * double(k) / double(count);
  return thetas;
}

ConvexRegion<double> support_polygon(std::size_t count,
                                     const std::function<double(double)>& support) {
  auto thetas = uniform_angles(count);
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) values[k] = support(thetas[k]);
  return halfplane_intersection(thetas, values);
}

double vertex_distance(const ConvexRegion<double>& region, double x, double y) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : region.vertices)
    best = std::min(best, (v - Vec2<double>(x, y)).norm());
  return best;
}

}  // namespace

TEST_CASE("three half-planes cut a known triangle") {
  std::vector<double> thetas = {0.0, 2.0 * M_PI / 3.0, 4.0 * M_PI / 3.0};
  std::vector<double> values = {1.0, 1.0, 1.0};
  auto region = halfplane_intersection(thetas, values);
  REQUIRE(region.shape == RegionShape::polygon);
  REQUIRE(region.vertices.size() == 3);
  double s3 = std::sqrt(3.0);
  CHECK(vertex_distance(region, 1.0, s3) < 1e-9);
  CHECK(vertex_distance(region, 1.0, -s3) < 1e-9);
  CHECK(vertex_distance(region, -2.0, 0.0) < 1e-9);
  CHECK(region.area() == doctest::Approx(3.0 * s3).epsilon(1e-9));
}

TEST_CASE("contradictory constraints raise, malformed input raises") {
  std::vector<double> thetas = {0.0, M_PI / 2.0, M_PI, 3.0 * M_PI / 2.0};
  std::vector<double> values = {-1.0, 10.0, -1.0, 10.0};
  CHECK_THROWS_AS(halfplane_intersection(thetas, values), geometry_error);

  using V = std::vector<double>;
  CHECK_THROWS_AS(halfplane_intersection(V{0.0, 1.0}, V{1.0, 1.0}), contract_error);
  CHECK_THROWS_AS(halfplane_intersection(V{0.0, 1.0, 2.0}, V{1.0, 1.0}), contract_error);
  CHECK_THROWS_AS(halfplane_intersection(
                      V{0.0, 1.0, 2.0},
                      V{1.0, std::numeric_limits<double>::quiet_NaN(), 1.0}),
                  contract_error);
  // All normals inside a narrow fan: unbounded region.
  CHECK_THROWS_AS(halfplane_intersection(V{0.0, 0.1, 0.2}, V{1.0, 1.0, 1.0}),
                  contract_error);
}

TEST_CASE("constant support gives a tight polygon around the disc") {
  auto region = support_polygon(720, [](double) { return 1.0; });
  REQUIRE(region.shape == RegionShape::polygon);
  CHECK(region.vertices.size() == 720);
  for (const auto& v : region.vertices) {
    CHECK(v.norm() >= 1.0);
    CHECK(v.norm() <= 1.00002);
  }
  CHECK(region.area() == doctest::Approx(M_PI).epsilon(1e-4));
}

TEST_CASE("degenerate intersections are flagged") {
  auto segment = support_polygon(720, [](double t) { return std::abs(std::cos(t)); });
  REQUIRE(segment.shape == RegionShape::segment);
  REQUIRE(segment.vertices.size() == 2);
  CHECK(vertex_distance(segment, -1.0, 0.0) < 1e-6);
  CHECK(vertex_distance(segment, 1.0, 0.0) < 1e-6);

  auto point = support_polygon(720, [](double) { return 0.0; });
  REQUIRE(point.shape == RegionShape::point);
  REQUIRE(point.vertices.size() == 1);
  CHECK(point.vertices[0].norm() < 1e-6);
}

TEST_CASE("hull round-trips through its own support function") {
  RngStream rng(0xfeed, 0);
  std::vector<Vec2<double>> points;
  for (int k = 0; k < 40; ++k)
    points.emplace_back(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  auto hull = convex_hull(points);
  REQUIRE(hull.shape == RegionShape::polygon);

  auto thetas = uniform_angles(720);
  std::vector<double> values(thetas.size());
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    double c = std::cos(thetas[k]), s = std::sin(thetas[k]);
    double best = -1e300;
    for (const auto& v : hull.vertices) best = std::max(best, c * v.x() - s * v.y());
    values[k] = best;
  }
  auto rebuilt = halfplane_intersection(thetas, values);
  // The rebuilt region circumscribes the hull; along an edge of length L the
  // overshoot of two supporting lines one angle step apart is at most
  // L * tan(step/2) / 2.
  double diam = 0.0;
  for (const auto& a : hull.vertices)
    for (const auto& b : hull.vertices) diam = std::max(diam, (a - b).norm());
  double step = 2.0 * M_PI / double(thetas.size());
  CHECK(hausdorff(hull, rebuilt) <= diam * std::tan(step / 2.0) / 2.0 + 1e-9);
  for (const auto& p : points) CHECK(region_contains(rebuilt, p, 1e-8));
}

TEST_CASE("convex hull basics") {
  std::vector<Vec2<double>> points = {{0, 0}, {2, 0}, {2, 1}, {0, 1},
                                      {1, 0.5}, {0.3, 0.7}, {2, 0}};
  auto hull = convex_hull(points);
  REQUIRE(hull.shape == RegionShape::polygon);
  CHECK(hull.vertices.size() == 4);
  CHECK(hull.area() == doctest::Approx(2.0).epsilon(1e-12));  // positive: CCW order
  for (const auto& p : points) CHECK(region_contains(hull, p, 1e-12));

  auto collinear = convex_hull<double>({{0, 0}, {1, 1}, {2, 2}, {0.5, 0.5}});
  CHECK(collinear.shape == RegionShape::segment);
  CHECK(vertex_distance(collinear, 0.0, 0.0) < 1e-12);
  CHECK(vertex_distance(collinear, 2.0, 2.0) < 1e-12);

  auto single = convex_hull<double>({{3, 4}, {3, 4}});
  CHECK(single.shape == RegionShape::point);
  REQUIRE(single.vertices.size() == 1);

  CHECK_THROWS_AS(convex_hull<double>({}), contract_error);
}

TEST_CASE("hausdorff distances of reference shapes") {
  auto disc = support_polygon(720, [](double) { return 1.0; });
  auto half = support_polygon(720, [](double) { return 0.5; });
  CHECK(hausdorff(disc, half) == doctest::Approx(0.5).epsilon(1e-3));

  auto shifted = support_polygon(720, [](double t) { return 1.0 + 0.3 * std::cos(t); });
  CHECK(hausdorff(disc, shifted) == doctest::Approx(0.3).epsilon(1e-3));

  CHECK(hausdorff(disc, disc) == 0.0);
}

TEST_CASE("droplet boundary sampling lands on the zero level set") {
  SUBCASE("ellipse") {
    auto droplet = make_droplet<double>(DropletKind::ellipse, 0.3);
    auto points = sample_droplet_boundary(droplet, 64);
    REQUIRE(points.size() == 64);
    for (const auto& p : points)
      CHECK(std::abs(droplet.evaluate(p.x(), p.y())) < 1e-8);
  }
  SUBCASE("two-lobe quartic") {
    auto droplet = make_droplet<double>(DropletKind::chiral_quartic, 0.85, 1.0);
    auto points = sample_droplet_boundary(droplet, 65);
    REQUIRE(points.size() == 65);
    bool left = false, right = false;
    for (const auto& p : points) {
      CHECK(std::abs(droplet.evaluate(p.x(), p.y())) < 1e-6);
      left = left || p.x() < 0.0;
      right = right || p.x() > 0.0;
    }
    CHECK(left);
    CHECK(right);
  }
  SUBCASE("at the pinch threshold") {
    auto droplet =
        make_droplet<double>(DropletKind::chiral_quartic, 1.0 / std::sqrt(2.0), 1.0);
    auto points = sample_droplet_boundary(droplet, 48);
    REQUIRE(points.size() == 48);
    for (const auto& p : points)
      CHECK(std::abs(droplet.evaluate(p.x(), p.y())) < 1e-6);
  }
  SUBCASE("shifted ellipse") {
    auto droplet = make_droplet<double>(DropletKind::shifted_ellipse, 0.5, 1.0);
    auto points = sample_droplet_boundary(droplet, 32);
    for (const auto& p : points)
      CHECK(std::abs(droplet.evaluate(p.x(), p.y())) < 1e-8);
  }
  SUBCASE("count validation") {
    auto droplet = make_droplet<double>(DropletKind::ellipse, 0.3);
    CHECK_THROWS_AS(sample_droplet_boundary(droplet, 7), parameter_error);
  }
}

TEST_CASE("support-polygon discretization error scales as the angle count squared") {
  auto support = [](double t) {
    double c = std::cos(t), s = std::sin(t);
    return std::sqrt(4.0 * c * c + s * s);
  };
  std::vector<Vec2<double>> dense;
  for (int k = 0; k < 10000; ++k) {
    double t = 2.0 * M_PI * double(k) / 10000.0;
    dense.emplace_back(2.0 * std::cos(t), std::sin(t));
  }
  auto reference = convex_hull(dense);
  for (std::size_t n : {std::size_t(180), std::size_t(360), std::size_t(720)}) {
    auto polygon = support_polygon(n, support);
    double err = hausdorff(polygon, reference);
    CHECK(err * double(n) * double(n) <= 30.0);
    if (n == 720) CHECK(err <= 1e-3);
  }
}

TEST_CASE("real-axis diameter") {
  auto region = support_polygon(720, [](double t) {
    double c = std::cos(t), s = std::sin(t);
    return std::sqrt(4.0 * c * c + s * s);
  });
  CHECK(real_diameter(region) == doctest::Approx(4.0).epsilon(1e-3));
  CHECK_THROWS_AS(real_diameter(ConvexRegion<double>{}), contract_error);
}
