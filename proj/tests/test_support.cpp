#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <vector>

#include "numrange_lab/ensembles.hpp"
#include "numrange_lab/geometry.hpp"
#include "numrange_lab/support.hpp"
#include "numrange_lab/theory.hpp"

using namespace numrange_lab;

TEST_CASE("nilpotent shift: the half-radius disc in closed form") {
  CMat<double> a = CMat<double>::Zero(2, 2);
  a(0, 1) = 1.0;
  auto thetas = uniform_theta_grid<double>(360);
  auto curve = support_sweep(a, thetas);
  REQUIRE(curve.values.size() == 360);
  for (std::size_t k = 0; k < 360; ++k) {
    CHECK(curve.values[k] == doctest::Approx(0.5).epsilon(1e-9));
    std::complex<double> expected = 0.5 * std::exp(std::complex<double>(0, -thetas[k]));
    CHECK(std::abs(curve.points[k] - expected) < 1e-8);
  }
  CHECK(numerical_radius(curve) == doctest::Approx(0.5).epsilon(1e-9));

  // Brute-force Rayleigh sampling stays inside and nearly attains the radius.
  RngStream rng(0x5a5a, 0);
  double best = 0.0;
  for (int k = 0; k < 20000; ++k) {
    CVec<double> y = gaussian_complex<double>(rng, 2, 1, 1.0);
    y.normalize();
    best = std::max(best, std::abs(std::complex<double>(y.dot(a * y))));
  }
  CHECK(best <= 0.5 + 1e-12);
  CHECK(best >= 0.49);
}

TEST_CASE("the spectrum lies inside the swept region") {
  CMat<double> a = sample_ginibre<double>(60, 41);
  auto curve = support_sweep(a, uniform_theta_grid<double>(360));
  auto region = halfplane_intersection(curve.thetas, curve.values);
  CVec<double> ev = eigenvalues(a);
  double scale = ev.cwiseAbs().maxCoeff();
  for (Index i = 0; i < ev.size(); ++i)
    CHECK(region_contains(region, Vec2<double>(ev(i).real(), ev(i).imag()),
                          1e-6 * (1.0 + scale)));
}

TEST_CASE("Hermitian input collapses the region to a real segment") {
  CMat<double> a = sample_elliptic<double>(60, 1.0, 43);
  auto curve = support_sweep(a, uniform_theta_grid<double>(360));
  for (const auto& z : curve.points) CHECK(std::abs(z.imag()) < 1e-10);
  auto region = halfplane_intersection(curve.thetas, curve.values);
  REQUIRE(region.shape == RegionShape::segment);
  auto [lo, hi] = hermitian_extremal_eigenvalues(a);
  CHECK(curve.values[0] == doctest::Approx(hi).epsilon(1e-9));
  CHECK(curve.values[180] == doctest::Approx(-lo).epsilon(1e-9));
}

TEST_CASE("support values obey the rotation Lipschitz bound") {
  CMat<double> a = sample_ginibre<double>(150, 47);
  auto thetas = uniform_theta_grid<double>(360);
  auto curve = support_sweep(a, thetas);
  auto [re_lo, re_hi] = hermitian_extremal_eigenvalues(hermitian_part(a));
  auto [im_lo, im_hi] = hermitian_extremal_eigenvalues(antihermitian_part(a));
  double c = std::max(std::abs(re_lo), std::abs(re_hi)) +
             std::max(std::abs(im_lo), std::abs(im_hi));
  for (std::size_t k = 0; k < 360; ++k) {
    std::size_t j = (k + 1) % 360;
    double dtheta = 2.0 * M_PI / 360.0;
    CHECK(std::abs(curve.values[k] - curve.values[j]) <= c * dtheta + 1e-9);
  }
}

TEST_CASE("swept curve tracks the limiting ellipse at moderate size") {
  auto axes = elliptic_axes(0.5);
  std::function<double(double)> support = [axes](double t) {
    return ellipse_support(axes, t);
  };
  auto thetas = uniform_theta_grid<double>(360);
  auto theory = theoretical_curve(thetas, support);
  for (std::uint64_t seed : {1, 2}) {
    auto curve = support_sweep(sample_elliptic<double>(300, 0.5, seed), thetas);
    CHECK(uniform_gap(curve, theory) <= 0.25);
  }
}

TEST_CASE("boundary points are in convex position") {
  auto curve = support_sweep(sample_ginibre<double>(200, 53),
                             uniform_theta_grid<double>(360));
  std::vector<Vec2<double>> pts;
  for (const auto& z : curve.points) pts.emplace_back(z.real(), z.imag());
  auto hull = convex_hull(pts);
  CHECK(hull.shape == RegionShape::polygon);
  CHECK(hull.vertices.size() >= 350);
  for (const auto& p : pts) CHECK(region_contains(hull, p, 1e-9 * hull.scale()));
}

TEST_CASE("closed-form curve with derivative lands on the ellipse") {
  auto axes = elliptic_axes(0.5);
  std::function<double(double)> support = [axes](double t) {
    return ellipse_support(axes, t);
  };
  std::function<double(double)> dsupport = [axes](double t) {
    double c = std::cos(t), s = std::sin(t);
    double lambda = ellipse_support(axes, t);
    return (axes.b * axes.b - axes.a * axes.a) * s * c / lambda;
  };
  auto thetas = uniform_theta_grid<double>(97);
  auto curve = theoretical_curve(thetas, support, &dsupport);
  REQUIRE(curve.points.size() == 97);
  CHECK(curve.provenance == Provenance::theoretical);
  for (std::size_t k = 0; k < 97; ++k) {
    std::complex<double> z = curve.points[k];
    double ex = z.real() / axes.a, ey = z.imag() / axes.b;
    CHECK(ex * ex + ey * ey == doctest::Approx(1.0).epsilon(1e-9));
    double c = std::cos(thetas[k]), s = std::sin(thetas[k]);
    CHECK(c * z.real() - s * z.imag() ==
          doctest::Approx(curve.values[k]).epsilon(1e-12));
    CHECK(std::abs(z - ellipse_boundary_point(axes, thetas[k])) < 1e-9);
  }

  auto bare = theoretical_curve(thetas, support);
  CHECK(bare.points.empty());
  CHECK_THROWS_AS(numerical_radius(bare), contract_error);
}

TEST_CASE("grid and input validation") {
  CMat<double> a = CMat<double>::Zero(2, 2);
  CHECK_THROWS_AS(support_sweep(a, std::vector<double>{}), contract_error);
  CHECK_THROWS_AS(support_sweep(a, std::vector<double>{0.0, 7.0}), contract_error);
  CHECK_THROWS_AS(support_sweep(a, std::vector<double>{0.5, 0.2}), contract_error);
  CHECK_THROWS_AS(support_sweep(a, std::vector<double>{-0.1, 0.2, 0.4}), contract_error);
  CMat<double> rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(support_sweep(rect, uniform_theta_grid<double>(8)), contract_error);
  CHECK_THROWS_AS(uniform_theta_grid<double>(0), parameter_error);

  auto grid = uniform_theta_grid<double>(8);
  CHECK(grid.front() == 0.0);
  CHECK(grid[4] == doctest::Approx(M_PI).epsilon(1e-15));

  auto a_curve = support_sweep(sample_ginibre<double>(20, 1), grid);
  auto b_curve = support_sweep(sample_ginibre<double>(20, 1), uniform_theta_grid<double>(16));
  CHECK_THROWS_AS(uniform_gap(a_curve, b_curve), contract_error);
}

TEST_CASE("worker count never changes the sweep output") {
  CMat<double> a = sample_ginibre<double>(150, 59);
  auto thetas = uniform_theta_grid<double>(90);

  setenv("NUMRANGE_LAB_THREADS", "1", 1);
  auto serial = support_sweep(a, thetas);
  setenv("NUMRANGE_LAB_THREADS", "4", 1);
  auto parallel = support_sweep(a, thetas);
  unsetenv("NUMRANGE_LAB_THREADS");

  REQUIRE(serial.values.size() == parallel.values.size());
  for (std::size_t k = 0; k < serial.values.size(); ++k) {
    CHECK(serial.values[k] == parallel.values[k]);
    CHECK(serial.points[k] == parallel.points[k]);
  }
}
