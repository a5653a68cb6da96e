#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "numrange_lab/poly.hpp"
#include "numrange_lab/types.hpp"

namespace numrange_lab {

namespace testing {
// Fault-injection hook for validation tests: added to the quadratic
// coefficient of every wishart quartic. Leave at zero outside tests.
inline double quartic_tamper = 0.0;
}  // namespace testing

template <typename Real = double>
struct EllipseAxes {
  Real a = 0;  // semi-axis along the real direction
  Real b = 0;  // semi-axis along the imaginary direction
  std::complex<Real> center{0, 0};
};

namespace detail {

template <typename Real>
void require_tau_closed(Real tau, const char* who) {
  if (!(tau >= Real(0) && tau <= Real(1)))
    throw parameter_error(std::string(who) + ": tau must lie in [0, 1]");
}

template <typename Real>
void require_tau_open_top(Real tau, const char* who) {
  if (!(tau >= Real(0) && tau < Real(1)))
    throw parameter_error(std::string(who) + ": tau must lie in [0, 1)");
}

template <typename Real>
void require_alpha(Real alpha, const char* who) {
  if (!(alpha >= Real(0)))
    throw parameter_error(std::string(who) + ": alpha must be non-negative");
}

}  // namespace detail

// Semi-axes of the elliptic limit shape: a = sqrt(2(1+tau)), b = sqrt(2(1-tau)).
template <typename Real = double>
EllipseAxes<Real> elliptic_axes(Real tau) {
  detail::require_tau_closed(tau, "elliptic_axes");
  return {std::sqrt(Real(2) * (Real(1) + tau)), std::sqrt(Real(2) * (Real(1) - tau)), {0, 0}};
}

// Semi-axes of the chiral limit shape:
// a = sqrt(1+tau)(sqrt(1+alpha)+1)/sqrt(2), b likewise with 1-tau.
// At alpha = 0 this equals elliptic_axes algebraically; delegating makes the
// coincidence exact in floating point as well.
template <typename Real = double>
EllipseAxes<Real> chiral_axes(Real tau, Real alpha) {
  detail::require_tau_closed(tau, "chiral_axes");
  detail::require_alpha(alpha, "chiral_axes");
  if (alpha == Real(0)) return elliptic_axes(tau);
  Real scale = (std::sqrt(Real(1) + alpha) + Real(1)) / std::sqrt(Real(2));
  return {std::sqrt(Real(1) + tau) * scale, std::sqrt(Real(1) - tau) * scale, {0, 0}};
}

// Support function of an ellipse with the given axes and center:
// Re(e^{i theta} center) + sqrt(a^2 cos^2 + b^2 sin^2).
template <typename Real>
Real ellipse_support(const EllipseAxes<Real>& axes, Real theta) {
  Real c = std::cos(theta), s = std::sin(theta);
  Real centered = std::sqrt(axes.a * axes.a * c * c + axes.b * axes.b * s * s);
  return c * axes.center.real() - s * axes.center.imag() + centered;
}

// Boundary point attaining ellipse_support: center + (a^2 cos, -b^2 sin)/norm.
// For a degenerate (b = 0) ellipse this is the supported segment endpoint.
template <typename Real>
std::complex<Real> ellipse_boundary_point(const EllipseAxes<Real>& axes, Real theta) {
  Real c = std::cos(theta), s = std::sin(theta);
  Real norm = std::sqrt(axes.a * axes.a * c * c + axes.b * axes.b * s * s);
  if (norm == Real(0)) return axes.center;
  return axes.center + std::complex<Real>(axes.a * axes.a * c / norm,
                                          -axes.b * axes.b * s / norm);
}

// Closed form for the tau = 0 support radius,
// B(alpha) = sqrt((-alpha^2+8 alpha+11+(alpha+5) sqrt(alpha^2+6 alpha+5))/8).
template <typename Real = double>
Real wishart_disc_radius(Real alpha) {
  detail::require_alpha(alpha, "wishart_disc_radius");
  Real s = std::sqrt(alpha * alpha + Real(6) * alpha + Real(5));
  return std::sqrt((-alpha * alpha + Real(8) * alpha + Real(11) + (alpha + Real(5)) * s) /
                   Real(8));
}

// The quartic D_theta(x) whose larger real root is the Wishart support
// function; coefficients ascending.
template <typename Real = double>
PolyReal<Real> wishart_quartic(Real tau, Real alpha, Real theta) {
  detail::require_tau_open_top(tau, "wishart_quartic");
  detail::require_alpha(alpha, "wishart_quartic");
  Real c = std::cos(theta);
  Real t2 = tau * tau, c2 = c * c, omt = Real(1) - t2;
  Real a4 = Real(16) * (omt + c2 * t2);
  Real a3 = Real(-32) * c * tau * (alpha + Real(2)) * (omt + c2 * t2);
  Real a2 = Real(16) * alpha * alpha * c2 * c2 * t2 * t2 +
            Real(4) * (alpha * alpha - Real(8) * alpha - Real(11)) * omt * omt +
            Real(8) * c2 * t2 * (Real(2) * alpha * alpha - Real(5) * alpha - Real(6)) * omt;
  Real a1 = Real(4) * c * tau * omt *
            (Real(2) * alpha * alpha * c2 * t2 -
             omt * (Real(2) * alpha * alpha * alpha + Real(5) * alpha * alpha +
                    Real(8) * alpha + Real(3)));
  Real a0 = (Real(2) * alpha + Real(1)) * (Real(2) * alpha + Real(1)) * omt * omt *
            (alpha * alpha * c2 * t2 - (Real(2) * alpha + Real(1)) * omt);
  a2 += static_cast<Real>(testing::quartic_tamper);
  return PolyReal<Real>({a0, a1, a2, a3, a4});
}

// d/d(cos theta) of the five coefficients above; used for the boundary
// parametrization via implicit differentiation.
template <typename Real = double>
PolyReal<Real> wishart_quartic_dcos(Real tau, Real alpha, Real theta) {
  detail::require_tau_open_top(tau, "wishart_quartic_dcos");
  detail::require_alpha(alpha, "wishart_quartic_dcos");
  Real c = std::cos(theta);
  Real t2 = tau * tau, c2 = c * c, omt = Real(1) - t2;
  Real d4 = Real(32) * c * t2;
  Real d3 = Real(-32) * tau * (alpha + Real(2)) * (omt + Real(3) * c2 * t2);
  Real d2 = Real(64) * alpha * alpha * c2 * c * t2 * t2 +
            Real(16) * c * t2 * (Real(2) * alpha * alpha - Real(5) * alpha - Real(6)) * omt;
  Real d1 = Real(4) * tau * omt *
            (Real(6) * alpha * alpha * c2 * t2 -
             omt * (Real(2) * alpha * alpha * alpha + Real(5) * alpha * alpha +
                    Real(8) * alpha + Real(3)));
  Real d0 = (Real(2) * alpha + Real(1)) * (Real(2) * alpha + Real(1)) * omt * omt *
            Real(2) * alpha * alpha * c * t2;
  return PolyReal<Real>({d0, d1, d2, d3, d4});
}

// Support function of the Wishart limit shape: the larger of the exactly two
// real roots of D_theta. A different real-root count means the two-real-roots
// law failed numerically and is reported, never papered over.
template <typename Real = double>
Real wishart_support(Real tau, Real alpha, Real theta) {
  PolyReal<Real> quartic = wishart_quartic(tau, alpha, theta);
  std::vector<Real> roots = real_roots(quartic, Real(1e-8));
  if (roots.size() != 2)
    throw consistency_error("wishart quartic: expected exactly two distinct real roots, got " +
                            std::to_string(roots.size()));
  return roots[1];
}

// d lambda / d theta at the support root, from D_theta(lambda) = 0.
template <typename Real = double>
Real wishart_support_derivative(Real tau, Real alpha, Real theta, Real lambda) {
  PolyReal<Real> quartic = wishart_quartic(tau, alpha, theta);
  PolyReal<Real> dcos = wishart_quartic_dcos(tau, alpha, theta);
  Real denom = quartic.derivative()(lambda);
  if (denom == Real(0))
    throw consistency_error("wishart support derivative: multiple root encountered");
  return std::sin(theta) * dcos(lambda) / denom;
}

// Boundary point of the Wishart limit shape with outward normal angle theta:
// z = e^{-i theta} (lambda - i lambda').
template <typename Real = double>
std::complex<Real> wishart_boundary_point(Real tau, Real alpha, Real theta) {
  Real lambda = wishart_support(tau, alpha, theta);
  Real dlambda = wishart_support_derivative(tau, alpha, theta, lambda);
  std::complex<Real> w(std::cos(theta), -std::sin(theta));
  return w * std::complex<Real>(lambda, -dlambda);
}

// Coefficients (descending) of the cubic satisfied by the Cauchy transform:
// z(1-tau^2) G^3 + ((2 alpha+1)(1-tau^2) + 4 tau z cos) G^2
//   + (4 tau alpha cos - 4z) G + 4 = 0.
template <typename Real = double>
std::array<std::complex<Real>, 4> cauchy_cubic(Real tau, Real alpha, Real theta,
                                               std::complex<Real> z) {
  detail::require_tau_open_top(tau, "cauchy_cubic");
  detail::require_alpha(alpha, "cauchy_cubic");
  Real c = std::cos(theta), omt = Real(1) - tau * tau;
  return {z * omt,
          std::complex<Real>((Real(2) * alpha + Real(1)) * omt, 0) + Real(4) * tau * c * z,
          std::complex<Real>(Real(4) * tau * alpha * c, 0) - Real(4) * z,
          std::complex<Real>(4, 0)};
}

// |Disc(cauchy cubic at z = x)/16 - D_theta(x)|: the algebraic bridge between
// the free-probability route and the printed quartic.
template <typename Real = double>
Real discriminant_matches_quartic(Real tau, Real alpha, Real theta, Real x) {
  auto cubic = cauchy_cubic(tau, alpha, theta, std::complex<Real>(x, 0));
  Real disc = cubic_discriminant(cubic[0].real(), cubic[1].real(),
                                 cubic[2].real(), cubic[3].real());
  Real quartic_value = wishart_quartic(tau, alpha, theta)(x);
  return std::abs(disc / Real(16) - quartic_value);
}

// The certificate polynomial F(alpha, tau, u) from the two-real-roots proof;
// positive on u in [0, 1].
template <typename Real = double>
Real f_certificate(Real alpha, Real tau, Real u) {
  detail::require_alpha(alpha, "f_certificate");
  detail::require_tau_closed(tau, "f_certificate");
  if (!(u >= Real(0) && u <= Real(1)))
    throw parameter_error("f_certificate: u must lie in [0, 1]");
  Real a = alpha, t2 = tau * tau;
  Real t4 = t2 * t2, t6 = t4 * t2;
  Real cu = Real(-16) * a * a * a * t6;
  Real qu = Real(24) * a * a * t4 * (a * t2 + a + t2 - Real(1));
  Real li = Real(-3) * t2 *
            (Real(4) * a * a * a * (t2 + Real(1)) * (t2 + Real(1)) +
             a * a * (t2 - Real(1)) * (Real(17) * t2 - Real(1)) +
             (Real(22) * a + Real(9)) * (t2 - Real(1)) * (t2 - Real(1)));
  Real co = Real(2) * (a + Real(1)) * (a + Real(1)) * (a + Real(1)) * t6 +
            Real(3) * (a + Real(1)) * (a + Real(1)) * (Real(2) * a + Real(7)) * t4 +
            Real(6) * (a + Real(1)) * (a * a - Real(11) * a - Real(8)) * t2 +
            (Real(2) * a + Real(1)) * (a + Real(5)) * (a + Real(5));
  return ((cu * u + qu) * u + li) * u + co;
}

enum class DropletKind { ellipse, chiral_quartic, shifted_ellipse };

// Limiting eigenvalue supports. evaluate(x, y) <= 0 is the defining
// membership inequality, written as LHS - RHS.
template <typename Real = double>
struct Droplet {
  DropletKind kind = DropletKind::ellipse;
  Real tau = 0;
  Real alpha = 0;

  Real evaluate(Real x, Real y) const {
    switch (kind) {
      case DropletKind::ellipse: {
        auto term = [](Real v, Real s) {
          if (s == Real(0))
            return v == Real(0) ? Real(0) : std::numeric_limits<Real>::infinity();
          return (v / s) * (v / s);
        };
        return term(x, Real(1) + tau) + term(y, Real(1) - tau) - Real(1);
      }
      case DropletKind::chiral_quartic: {
        Real omt = Real(1) - tau * tau;
        Real r2 = x * x + y * y;
        Real lhs = r2 * r2 + Real(16) * tau * tau / (omt * omt) * x * x * y * y -
                   Real(2) * tau * (Real(2) + alpha) * (x * x - y * y);
        Real rhs = (Real(1) + alpha - tau * tau) *
                   (Real(1) - (Real(1) + alpha) * tau * tau);
        return lhs - rhs;
      }
      case DropletKind::shifted_ellipse: {
        Real sa = std::sqrt(Real(1) + alpha);
        Real ex = (x - tau * (Real(2) + alpha)) / ((Real(1) + tau * tau) * sa);
        Real ey = y / ((Real(1) - tau * tau) * sa);
        return ex * ex + ey * ey - Real(1);
      }
    }
    return std::numeric_limits<Real>::quiet_NaN();
  }

  bool contains(Real x, Real y) const { return evaluate(x, y) <= Real(0); }
};

template <typename Real = double>
Droplet<Real> make_droplet(DropletKind kind, Real tau, Real alpha = Real(0)) {
  detail::require_alpha(alpha, "make_droplet");
  if (kind == DropletKind::ellipse)
    detail::require_tau_closed(tau, "make_droplet");
  else
    detail::require_tau_open_top(tau, "make_droplet");
  return Droplet<Real>{kind, tau, alpha};
}

template <typename Real>
bool droplet_contains(const Droplet<Real>& droplet, std::complex<Real> point) {
  return droplet.contains(point.real(), point.imag());
}

// 2 exactly when tau > 1/sqrt(1+alpha); the threshold itself counts as
// connected.
template <typename Real = double>
int chiral_component_count(Real tau, Real alpha) {
  detail::require_tau_closed(tau, "chiral_component_count");
  detail::require_alpha(alpha, "chiral_component_count");
  return tau > Real(1) / std::sqrt(Real(1) + alpha) ? 2 : 1;
}

// Positive real-axis crossings (inner, outer) of the chiral droplet
// boundary; in the connected regime only the outer crossing exists and the
// inner slot is zero.
template <typename Real = double>
std::pair<Real, Real> chiral_real_crossings(Real tau, Real alpha) {
  detail::require_tau_open_top(tau, "chiral_real_crossings");
  detail::require_alpha(alpha, "chiral_real_crossings");
  Real rhs = (Real(1) + alpha - tau * tau) * (Real(1) - (Real(1) + alpha) * tau * tau);
  Real mid = tau * (Real(2) + alpha);
  Real disc = mid * mid + rhs;
  if (disc < Real(0))
    throw geometry_error("chiral droplet has no real-axis crossing");
  Real hi = mid + std::sqrt(disc);
  Real lo = mid - std::sqrt(disc);
  return {lo > Real(0) ? std::sqrt(lo) : Real(0), std::sqrt(hi)};
}

// Spectral endpoints in the Hermitian limit: lambda_pm = (sqrt(alpha+1) +- 1)^2.
template <typename Real = double>
std::pair<Real, Real> hermitian_limit_endpoints(Real alpha) {
  detail::require_alpha(alpha, "hermitian_limit_endpoints");
  Real s = std::sqrt(alpha + Real(1));
  return {(s - Real(1)) * (s - Real(1)), (s + Real(1)) * (s + Real(1))};
}

// Eigenvalues of the 2x2 correlation block:
// lambda_pm(theta) = tau cos(theta) +- sqrt(1 - tau^2 sin^2(theta)),
// returned as (lambda_plus, lambda_minus).
template <typename Real = double>
std::pair<Real, Real> lambda_pm(Real tau, Real theta) {
  detail::require_tau_closed(tau, "lambda_pm");
  Real c = std::cos(theta), s = std::sin(theta);
  Real root = std::sqrt(Real(1) - tau * tau * s * s);
  return {tau * c + root, tau * c - root};
}

// Largest real root of 16 z^4 - 44 z^2 - 1, cross-checked against the closed
// form sqrt((11 + 5 sqrt(5))/8).
template <typename Real = double>
Real power_ginibre_radius() {
  PolyReal<Real> p({Real(-1), Real(0), Real(-44), Real(0), Real(16)});
  std::vector<Real> roots = real_roots(p, Real(1e-10));
  Real largest = roots.back();
  Real closed = std::sqrt((Real(11) + Real(5) * std::sqrt(Real(5))) / Real(8));
  if (std::abs(largest - closed) > Real(1e-12))
    throw consistency_error("power-radius root disagrees with its closed form");
  return largest;
}

// Ellipse fitted to the Wishart limit shape: center and real semi-axis from
// the real roots of D at theta = 0, minor semi-axis sqrt(1-tau^2) B(alpha).
template <typename Real = double>
EllipseAxes<Real> ellipse_ansatz(Real tau, Real alpha) {
  PolyReal<Real> quartic = wishart_quartic(tau, alpha, Real(0));
  std::vector<Real> roots = real_roots(quartic, Real(1e-8));
  if (roots.size() != 2)
    throw consistency_error("wishart quartic: expected exactly two distinct real roots, got " +
                            std::to_string(roots.size()));
  Real lo = roots[0], hi = roots[1];
  EllipseAxes<Real> axes;
  axes.center = std::complex<Real>((hi + lo) / Real(2), 0);
  axes.a = (hi - lo) / Real(2);
  axes.b = std::sqrt(Real(1) - tau * tau) * wishart_disc_radius(alpha);
  return axes;
}

}  // namespace numrange_lab
