#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "numrange_lab/types.hpp"

namespace numrange_lab {

// Real-coefficient polynomial, coefficients in ascending degree order.
// Leading coefficients with |c| <= 1e-14 * max|coeffs| are trimmed away.
template <typename Real = double>
struct PolyReal {
  std::vector<Real> coeffs;

  explicit PolyReal(std::vector<Real> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) throw contract_error("polynomial needs coefficients");
    Real scale = 0;
    for (Real v : coeffs) scale = std::max(scale, std::abs(v));
    while (coeffs.size() > 1 && std::abs(coeffs.back()) <= Real(1e-14) * scale)
      coeffs.pop_back();
    if (degree() > 8) throw contract_error("degree above 8 is unsupported");
  }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  Real operator()(Real x) const {
    Real acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  PolyReal derivative() const {
    if (degree() < 1) return PolyReal(std::vector<Real>{Real(0)});
    std::vector<Real> d(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k)
      d[k - 1] = Real(k) * coeffs[k];
    return PolyReal(std::move(d));
  }
};

// All real roots, ascending. Roots come from the companion-matrix
// eigenvalues; a root is accepted as real if |Im| <= tol*(1+|root|)
// and duplicates are merged at the same scale. Each accepted root gets a
// few Newton steps, kept only while they reduce |p|.
template <typename Real>
std::vector<Real> real_roots(const PolyReal<Real>& p, Real tol = Real(1e-8)) {
  int n = p.degree();
  if (n < 1) throw contract_error("real_roots needs degree >= 1");

  RMat<Real> companion = RMat<Real>::Zero(n, n);
  Real lead = p.coeffs.back();
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeffs[i] / lead;
  for (int i = 1; i < n; ++i) companion(i, i - 1) = Real(1);

  Eigen::EigenSolver<RMat<Real>> solver(companion);
  if (solver.info() != Eigen::Success)
    throw consistency_error("companion-matrix eigensolver failed");

  PolyReal<Real> dp = p.derivative();
  std::vector<Real> roots;
  for (Index k = 0; k < n; ++k) {
    std::complex<Real> z = solver.eigenvalues()(k);
    if (std::abs(z.imag()) > tol * (Real(1) + std::abs(z))) continue;
    Real x = z.real();
    for (int it = 0; it < 20; ++it) {
      Real fx = p(x);
      Real dfx = dp(x);
      if (dfx == Real(0)) break;
      Real next = x - fx / dfx;
      if (!(std::abs(p(next)) < std::abs(fx))) break;
      x = next;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<Real> unique;
  for (Real r : roots) {
    if (!unique.empty() && std::abs(r - unique.back()) <= tol * (Real(1) + std::abs(r)))
      continue;
    unique.push_back(r);
  }
  return unique;
}

// Determinant of the (deg p + deg q) Sylvester matrix; zero exactly when
// p and q share a root.
template <typename Real>
Real sylvester_resultant(const PolyReal<Real>& p, const PolyReal<Real>& q) {
  int n = p.degree();
  int m = q.degree();
  if (n < 1 || m < 1)
    throw contract_error("resultant needs both degrees >= 1");
  RMat<Real> s = RMat<Real>::Zero(n + m, n + m);
  // Rows of p-coefficients (descending), shifted; then rows of q.
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(r, r + k) = p.coeffs[n - k];
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(m + r, r + k) = q.coeffs[m - k];
  return s.fullPivLu().determinant();
}

// Discriminant of a*x^3 + b*x^2 + c*x + d.
template <typename Real>
Real cubic_discriminant(Real a, Real b, Real c, Real d) {
  return b * b * c * c - Real(4) * a * c * c * c - Real(4) * b * b * b * d -
         Real(27) * a * a * d * d + Real(18) * a * b * c * d;
}

}  // namespace numrange_lab
