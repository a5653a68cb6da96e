#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "numrange_lab/ensembles.hpp"
#include "numrange_lab/geometry.hpp"
#include "numrange_lab/support.hpp"
#include "numrange_lab/theory.hpp"
#include "numrange_lab/types.hpp"

namespace numrange_lab {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0;
  double threshold = 0;
  std::string details;
  double seconds = 0;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool overall_pass() const {
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
  }

  nlohmann::json to_json() const {
    nlohmann::json items = nlohmann::json::array();
    double total = 0;
    for (const auto& c : checks) {
      items.push_back({{"name", c.name},
                       {"pass", c.pass},
                       {"measured", c.measured},
                       {"threshold", c.threshold},
                       {"details", c.details},
                       {"seconds", c.seconds}});
      total += c.seconds;
    }
    return {{"checks", items},
            {"overall_pass", overall_pass()},
            {"total_seconds", total}};
  }
};

struct ValidationOptions {
  std::vector<std::string> only;  // empty runs everything
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::size_t theta_count = 720;
  double quartic_tamper = 0.0;  // fault injection for the identity check
};

namespace detail {

inline double median(std::vector<double> v) {
  if (v.empty()) throw contract_error("median: empty sample");
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline ConvexRegion<double> curve_polygon(const SupportCurve<double>& curve) {
  return halfplane_intersection(curve.thetas, curve.values);
}

inline ConvexRegion<double> function_polygon(
    const std::vector<double>& thetas, const std::function<double(double)>& support) {
  std::vector<double> values;
  values.reserve(thetas.size());
  for (double t : thetas) values.push_back(support(t));
  return halfplane_intersection(thetas, values);
}

struct SweepStats {
  double median_radius = 0;
  double median_hausdorff = 0;
};

// Median numerical radius and median Hausdorff distance to a reference
// polygon over the configured seeds.
inline SweepStats sweep_vs_reference(const ValidationOptions& opts,
                                     const EnsembleSpec<double>& base,
                                     const ConvexRegion<double>& reference) {
  auto thetas = uniform_theta_grid<double>(opts.theta_count);
  std::vector<double> radii, distances;
  for (std::uint64_t seed : opts.seeds) {
    EnsembleSpec<double> spec = base;
    spec.seed = seed;
    CMat<double> a = sample(spec);
    SupportCurve<double> curve = support_sweep<double>(a, thetas);
    radii.push_back(numerical_radius(curve));
    distances.push_back(hausdorff(curve_polygon(curve), reference));
  }
  return {median(radii), median(distances)};
}

struct IdentityDraw {
  double alpha, tau, theta, x;
};

inline std::vector<IdentityDraw> identity_draws(std::size_t count) {
  RngStream rng(0x1dea, 7);
  std::vector<IdentityDraw> draws;
  draws.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    IdentityDraw d;
    d.alpha = 5.0 * rng.uniform();
    d.tau = 0.01 + 0.98 * rng.uniform();
    d.theta = 2.0 * pi_v<double> * rng.uniform();
    d.x = -10.0 + 20.0 * rng.uniform();
    draws.push_back(d);
  }
  return draws;
}

using CheckFn = std::function<CheckResult(const ValidationOptions&)>;

inline CheckResult check_ginibre_radius(const ValidationOptions& opts) {
  CheckResult r{"ginibre-radius"};
  const double target = std::sqrt(2.0);
  EnsembleSpec<double> spec;
  spec.kind = EnsembleKind::ginibre;
  spec.N = 500;
  auto thetas = uniform_theta_grid<double>(opts.theta_count);
  auto disc = function_polygon(thetas, [&](double) { return target; });
  auto stats = sweep_vs_reference(opts, spec, disc);
  bool radius_ok =
      stats.median_radius >= 0.95 * target && stats.median_radius <= 1.05 * target;
  r.measured = stats.median_hausdorff;
  r.threshold = 0.12;
  r.pass = radius_ok && stats.median_hausdorff <= r.threshold;
  r.details = "median radius " + fmt(stats.median_radius) + " (band " +
              fmt(0.95 * target) + ".." + fmt(1.05 * target) + "), median d_H " +
              fmt(stats.median_hausdorff) + " vs disc radius " + fmt(target);
  return r;
}

inline CheckResult check_elliptic_ellipse(const ValidationOptions& opts) {
  CheckResult r{"elliptic-ellipse"};
  EnsembleSpec<double> spec;
  spec.kind = EnsembleKind::elliptic;
  spec.N = 500;
  spec.tau = 0.5;
  auto axes = elliptic_axes(spec.tau);
  auto thetas = uniform_theta_grid<double>(opts.theta_count);
  auto target = function_polygon(thetas, [&](double t) { return ellipse_support(axes, t); });
  auto stats = sweep_vs_reference(opts, spec, target);
  r.measured = stats.median_hausdorff;
  r.threshold = 0.12;
  r.pass = r.measured <= r.threshold;
  r.details = "median d_H to ellipse a=" + fmt(axes.a) + " b=" + fmt(axes.b);
  return r;
}

inline CheckResult check_chiral_ellipse(const ValidationOptions& opts) {
  CheckResult r{"chiral-ellipse"};
  EnsembleSpec<double> spec;
  spec.kind = EnsembleKind::chiral_elliptic;
  spec.N = 250;
  spec.nu = 250;
  spec.tau = 0.5;
  auto axes = chiral_axes(spec.tau, 1.0);
  auto thetas = uniform_theta_grid<double>(opts.theta_count);
  auto target = function_polygon(thetas, [&](double t) { return ellipse_support(axes, t); });
  auto stats = sweep_vs_reference(opts, spec, target);
  r.measured = stats.median_hausdorff;
  r.threshold = 0.15;
  r.pass = r.measured <= r.threshold;
  r.details = "median d_H to ellipse a=" + fmt(axes.a) + " b=" + fmt(axes.b);
  return r;
}

inline CheckResult check_wishart_envelope(const ValidationOptions& opts) {
  CheckResult r{"wishart-envelope"};
  EnsembleSpec<double> spec;
  spec.kind = EnsembleKind::wishart;
  spec.N = 500;
  spec.nu = 500;
  spec.tau = 0.5;
  auto thetas = uniform_theta_grid<double>(opts.theta_count);
  auto target = function_polygon(
      thetas, [&](double t) { return wishart_support(spec.tau, 1.0, t); });
  r.threshold = 0.05 * real_diameter(target);
  auto stats = sweep_vs_reference(opts, spec, target);
  r.measured = stats.median_hausdorff;
  r.pass = r.measured <= r.threshold;
  r.details = "median d_H to limit envelope; tolerance is 5% of its real diameter " +
              fmt(real_diameter(target));
  return r;
}

inline CheckResult check_discriminant_identity(const ValidationOptions& opts) {
  CheckResult r{"discriminant-identity"};
  testing::quartic_tamper = opts.quartic_tamper;
  double worst = 0;
  for (const auto& d : identity_draws(1000)) {
    double quartic_value = wishart_quartic(d.tau, d.alpha, d.theta)(d.x);
    double mismatch = discriminant_matches_quartic(d.tau, d.alpha, d.theta, d.x) /
                      (1.0 + std::abs(quartic_value));
    worst = std::max(worst, mismatch);
  }
  testing::quartic_tamper = 0.0;
  r.measured = worst;
  r.threshold = 1e-8;
  r.pass = worst <= r.threshold;
  r.details = "max normalized |cubic discriminant/16 - quartic| over 1000 draws";
  return r;
}

inline CheckResult check_root_count_law(const ValidationOptions&) {
  CheckResult r{"root-count-law"};
  std::size_t bad_count = 0, bad_sign = 0;
  double min_separation = std::numeric_limits<double>::infinity();
  for (const auto& d : identity_draws(1000)) {
    auto quartic = wishart_quartic(d.tau, d.alpha, d.theta);
    auto roots = real_roots(quartic);
    double scale = 1.0;
    for (double root : roots) scale = std::max(scale, std::abs(root));
    bool two_distinct =
        roots.size() == 2 && std::abs(roots[1] - roots[0]) > 1e-6 * scale;
    if (!two_distinct) ++bad_count;
    if (two_distinct)
      min_separation =
          std::min(min_separation, std::abs(roots[1] - roots[0]) / scale);
    if (!(quartic(d.alpha * d.tau * std::cos(d.theta)) < 0.0)) ++bad_sign;
  }
  r.measured = double(bad_count + bad_sign);
  r.threshold = 0;
  r.pass = bad_count == 0 && bad_sign == 0;
  r.details = "draws violating the two-distinct-real-roots law: " +
              std::to_string(bad_count) + ", draws with nonnegative value between: " +
              std::to_string(bad_sign) + ", min relative root separation " +
              fmt(min_separation);
  return r;
}

inline CheckResult check_tau0_closed_form(const ValidationOptions&) {
  CheckResult r{"tau0-closed-form"};
  double worst = 0;
  for (double alpha : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    double target = wishart_disc_radius(alpha);
    for (double theta : {0.0, 1.234, 3.9}) {
      worst = std::max(worst, std::abs(wishart_support(0.0, alpha, theta) - target));
    }
  }
  double b0 = power_ginibre_radius();
  worst = std::max(worst, std::abs(wishart_support(0.0, 0.0, 0.0) - b0));
  r.measured = worst;
  r.threshold = 1e-10;
  r.pass = worst <= r.threshold;
  r.details = "max |support - disc radius| over alpha grid; alpha=0 radius " + fmt(b0);
  return r;
}

inline CheckResult check_hermitian_limit(const ValidationOptions&) {
  CheckResult r{"hermitian-limit"};
  auto [lo, hi] = hermitian_limit_endpoints(1.0);
  double right = std::abs(wishart_support(0.9999, 1.0, 0.0) - hi);
  double left = std::abs(wishart_support(0.9999, 1.0, pi_v<double>) + lo);
  r.measured = std::max(right, left);
  r.threshold = 2e-2;
  r.pass = r.measured <= r.threshold;
  r.details = "right endpoint off by " + fmt(right) + ", left endpoint off by " +
              fmt(left) + " (targets " + fmt(hi) + ", " + fmt(lo) + ")";
  return r;
}

inline CheckResult check_products_vs_powers(const ValidationOptions& opts) {
  CheckResult r{"products-vs-powers"};
  const double target = power_ginibre_radius();
  auto thetas = uniform_theta_grid<double>(opts.theta_count);
  auto word_radius = [&](const std::vector<std::string>& word) {
    EnsembleSpec<double> spec;
    spec.kind = EnsembleKind::ginibre_word;
    spec.N = 500;
    spec.word = parse_word(word);
    std::vector<double> radii;
    for (std::uint64_t seed : opts.seeds) {
      spec.seed = seed;
      radii.push_back(numerical_radius(support_sweep<double>(sample(spec), thetas)));
    }
    return median(radii);
  };
  double product = word_radius({"Y1", "Y2"});
  double square = word_radius({"Y1", "Y1"});
  double off_product = std::abs(product / target - 1.0);
  double off_square = std::abs(square / target - 1.0);
  double mutual = std::max(product, square) / std::min(product, square) - 1.0;
  r.measured = std::max({off_product, off_square, mutual});
  r.threshold = 0.05;
  r.pass = off_product <= 0.05 && off_square <= 0.05 && mutual <= 0.03;
  r.details = "median radii: two-factor product " + fmt(product) + ", square " +
              fmt(square) + "; shared limit " + fmt(target) +
              "; mutual gap " + fmt(mutual) + " (limit 0.03)";
  return r;
}

inline CheckResult check_non_ellipse(const ValidationOptions& opts) {
  CheckResult r{"non-ellipse"};
  auto thetas = uniform_theta_grid<double>(opts.theta_count);
  auto max_gap = [&](double tau, double alpha, double* argmax) {
    auto axes = ellipse_ansatz(tau, alpha);
    double worst = 0, at = 0;
    for (double t : thetas) {
      double gap = std::abs(wishart_support(tau, alpha, t) - ellipse_support(axes, t));
      if (gap > worst) {
        worst = gap;
        at = t;
      }
    }
    if (argmax) *argmax = at;
    return worst;
  };
  double theta_star = 0;
  double gap = max_gap(0.8, 2.0, &theta_star);
  double gap_disc = max_gap(0.0, 2.0, nullptr);
  // Direction of the worst boundary point, measured from the shape's center:
  // the shape sits entirely in the right half-plane, so angles about the
  // origin cannot locate its leftmost region.
  std::complex<double> z = wishart_boundary_point(0.8, 2.0, theta_star);
  std::complex<double> centered = z - ellipse_ansatz(0.8, 2.0).center;
  double off_axis = pi_v<double> - std::abs(std::arg(centered));
  bool near_left = std::abs(off_axis) <= pi_v<double> / 6.0;
  r.measured = gap;
  r.threshold = std::max(1e-2, 10.0 * gap_disc);
  r.pass = gap > 1e-2 && gap > 10.0 * gap_disc && near_left;
  r.details = "max |support - fitted ellipse support| " + fmt(gap) +
              " (disc control " + fmt(gap_disc) + "); maximizer's boundary point " +
              fmt(off_axis) + " rad off the leftmost direction";
  return r;
}

inline CheckResult check_convergence_trend(const ValidationOptions& opts) {
  CheckResult r{"convergence-trend"};
  auto thetas = uniform_theta_grid<double>(opts.theta_count);
  auto theory = theoretical_curve<double>(
      thetas, [](double t) { return wishart_support(0.5, 1.0, t); });
  std::vector<double> medians;
  for (Index n : {Index(100), Index(200), Index(400)}) {
    EnsembleSpec<double> spec;
    spec.kind = EnsembleKind::wishart;
    spec.N = n;
    spec.nu = n;
    spec.tau = 0.5;
    std::vector<double> gaps;
    for (std::uint64_t seed : opts.seeds) {
      spec.seed = seed;
      gaps.push_back(uniform_gap(support_sweep<double>(sample(spec), thetas), theory));
    }
    medians.push_back(detail::median(gaps));
  }
  r.pass = medians[0] > medians[1] && medians[1] > medians[2];
  r.measured = medians.back();
  r.threshold = medians.front();
  r.details = "median sup-norm gaps at sizes 100/200/400: " + fmt(medians[0]) + ", " +
              fmt(medians[1]) + ", " + fmt(medians[2]);
  return r;
}

inline CheckResult check_geometry_oracle(const ValidationOptions&) {
  CheckResult r{"geometry-oracle"};
  EllipseAxes<double> axes{2.0, 1.0};
  auto thetas = uniform_theta_grid<double>(720);
  auto polygon =
      function_polygon(thetas, [&](double t) { return ellipse_support(axes, t); });
  std::vector<Vec2<double>> sampled;
  sampled.reserve(10000);
  for (std::size_t k = 0; k < 10000; ++k) {
    double phi = 2.0 * pi_v<double> * double(k) / 10000.0;
    sampled.emplace_back(axes.a * std::cos(phi), axes.b * std::sin(phi));
  }
  r.measured = hausdorff(polygon, convex_hull(sampled));
  r.threshold = 1e-3;
  r.pass = r.measured <= r.threshold;
  r.details = "d_H between 720-direction support polygon and densely sampled ellipse";
  return r;
}

inline const std::vector<std::pair<std::string, CheckFn>>& check_registry() {
  static const std::vector<std::pair<std::string, CheckFn>> registry = {
      {"ginibre-radius", check_ginibre_radius},
      {"elliptic-ellipse", check_elliptic_ellipse},
      {"chiral-ellipse", check_chiral_ellipse},
      {"wishart-envelope", check_wishart_envelope},
      {"discriminant-identity", check_discriminant_identity},
      {"root-count-law", check_root_count_law},
      {"tau0-closed-form", check_tau0_closed_form},
      {"hermitian-limit", check_hermitian_limit},
      {"products-vs-powers", check_products_vs_powers},
      {"non-ellipse", check_non_ellipse},
      {"convergence-trend", check_convergence_trend},
      {"geometry-oracle", check_geometry_oracle},
  };
  return registry;
}

}  // namespace detail

inline std::vector<std::string> validation_check_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : detail::check_registry()) names.push_back(name);
  return names;
}

// Runs the validation suite (or the named subset). Check failures are
// recorded in the report; exceptions inside a check are caught and reported
// as failures so one broken check cannot mask the others.
inline ValidationReport run_validation(
    const ValidationOptions& opts = {},
    const std::function<void(const CheckResult&)>& on_result = nullptr) {
  if (!opts.only.empty()) {
    auto names = validation_check_names();
    for (const auto& want : opts.only)
      if (std::find(names.begin(), names.end(), want) == names.end())
        throw parameter_error("unknown validation check: " + want);
  }
  ValidationReport report;
  for (const auto& [name, fn] : detail::check_registry()) {
    if (!opts.only.empty() &&
        std::find(opts.only.begin(), opts.only.end(), name) == opts.only.end())
      continue;
    auto start = std::chrono::steady_clock::now();
    CheckResult result;
    try {
      result = fn(opts);
    } catch (const std::exception& e) {
      result.name = name;
      result.pass = false;
      result.details = std::string("exception: ") + e.what();
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(result);
    report.checks.push_back(std::move(result));
  }
  return report;
}

}  // namespace numrange_lab
