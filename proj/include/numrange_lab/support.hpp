#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "numrange_lab/eig.hpp"
#include "numrange_lab/parallel.hpp"
#include "numrange_lab/types.hpp"

namespace numrange_lab {

enum class Provenance { empirical, theoretical };

// Support function samples of a convex region: values[k] is the largest
// Re(e^{i theta_k} z) over the region, points[k] (when present) a boundary
// point attaining it.
template <typename Real = double>
struct SupportCurve {
  std::vector<Real> thetas;  // strictly increasing, in [0, 2*pi)
  std::vector<Real> values;
  std::vector<std::complex<Real>> points;  // may be empty
  Provenance provenance = Provenance::empirical;
};

template <typename Real = double>
std::vector<Real> uniform_theta_grid(std::size_t count) {
  if (count == 0) throw parameter_error("theta grid needs at least one angle");
  std::vector<Real> thetas(count);
  for (std::size_t k = 0; k < count; ++k)
    thetas[k] = Real(2) * pi_v<Real> * Real(k) / Real(count);
  return thetas;
}

namespace detail {

template <typename Real>
void require_theta_grid(const std::vector<Real>& thetas, const char* who) {
  if (thetas.empty()) throw contract_error(std::string(who) + ": empty theta grid");
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    if (thetas[k] < Real(0) || thetas[k] >= Real(2) * pi_v<Real>)
      throw contract_error(std::string(who) + ": angles must lie in [0, 2*pi)");
    if (k > 0 && !(thetas[k] > thetas[k - 1]))
      throw contract_error(std::string(who) + ": angles must be strictly increasing");
  }
}

// Angles per warm-start run; a power of the default grid size so chunk
// boundaries land identically for any worker count.
constexpr std::size_t kSweepChunk = 45;

}  // namespace detail

// Empirical support curve of W(A): values[k] = lambda_max(Re(e^{i theta} A)),
// points[k] = y* A y for the top unit eigenvector y. Angles are processed in
// fixed chunks; within a chunk each eigenproblem is warm-started from its
// neighbour, and chunks are independent, so the output is bit-identical for
// any worker count. Every sweep is checked against the Lipschitz bound
// |lambda(s) - lambda(t)| <= C |s - t| with C = ||Re A|| + ||Im-part||;
// a violating angle is recomputed densely before the bound is enforced.
template <typename Real>
SupportCurve<Real> support_sweep(const CMat<Real>& a,
                                 const std::vector<Real>& thetas) {
  require_square(a, "support_sweep");
  detail::require_theta_grid(thetas, "support_sweep");
  const Index n = a.rows();
  const std::size_t count = thetas.size();

  const CMat<Real> re_part = hermitian_part(a);
  const CMat<Real> im_part = antihermitian_part(a);

  auto rotated = [&](Real theta) -> CMat<Real> {
    // cos(t)*Re - sin(t)*Im keeps bitwise Hermitian symmetry.
    return std::cos(theta) * re_part - std::sin(theta) * im_part;
  };

  SupportCurve<Real> curve;
  curve.thetas = thetas;
  curve.values.resize(count);
  curve.points.resize(count);
  curve.provenance = Provenance::empirical;

  for_chunks(count, detail::kSweepChunk, [&](std::size_t begin, std::size_t end) {
    CVec<Real> warm;
    for (std::size_t k = begin; k < end; ++k) {
      CMat<Real> m = rotated(thetas[k]);
      EigenPair<Real> pair =
          hermitian_top_eigenpair(m, warm.size() == n ? &warm : nullptr);
      warm = pair.vector;
      curve.values[k] = pair.value;
      std::complex<Real> z = pair.vector.dot(a * pair.vector);
      curve.points[k] = z;
      // Boundary-point consistency: Re(e^{i theta} z) is the Rayleigh
      // quotient of m, so it must reproduce the eigenvalue.
      Real projected = std::cos(thetas[k]) * z.real() - std::sin(thetas[k]) * z.imag();
      if (!(std::abs(projected - pair.value) <=
            Real(1e-8) * (Real(1) + std::abs(pair.value))))
        throw consistency_error("support_sweep: boundary point off its half-plane");
    }
  });

  // Lipschitz tripwire over adjacent angles (wrapping around).
  auto [re_lo, re_hi] = hermitian_extremal_eigenvalues(re_part);
  auto [im_lo, im_hi] = hermitian_extremal_eigenvalues(im_part);
  const Real lipschitz = std::max(std::abs(re_lo), std::abs(re_hi)) +
                         std::max(std::abs(im_lo), std::abs(im_hi));
  const Real slack = Real(1e-6) * (Real(1) + lipschitz);
  auto gap_ok = [&](std::size_t j, std::size_t k, Real dtheta) {
    return std::abs(curve.values[j] - curve.values[k]) <= lipschitz * dtheta + slack;
  };
  auto recompute_dense = [&](std::size_t k) {
    EigenPair<Real> pair = detail::dense_top_eigenpair(rotated(thetas[k]));
    curve.values[k] = pair.value;
    curve.points[k] = pair.vector.dot(a * pair.vector);
  };
  for (std::size_t k = 0; k < count && count > 1; ++k) {
    std::size_t j = (k + 1) % count;
    Real dtheta = (j == 0) ? Real(2) * pi_v<Real> - thetas[k] + thetas[0]
                           : thetas[j] - thetas[k];
    if (gap_ok(k, j, dtheta)) continue;
    recompute_dense(k);
    recompute_dense(j);
    if (!gap_ok(k, j, dtheta))
      throw consistency_error("support_sweep: Lipschitz bound violated");
  }
  return curve;
}

// Theoretical curve from a closed-form support function; boundary points
// z = e^{-i theta}(lambda - i lambda') are filled in when a derivative is
// supplied.
template <typename Real>
SupportCurve<Real> theoretical_curve(
    const std::vector<Real>& thetas, const std::function<Real(Real)>& support,
    const std::function<Real(Real)>* support_derivative = nullptr) {
  detail::require_theta_grid(thetas, "theoretical_curve");
  SupportCurve<Real> curve;
  curve.thetas = thetas;
  curve.values.reserve(thetas.size());
  curve.provenance = Provenance::theoretical;
  for (Real t : thetas) curve.values.push_back(support(t));
  if (support_derivative) {
    curve.points.reserve(thetas.size());
    for (std::size_t k = 0; k < thetas.size(); ++k) {
      Real lambda = curve.values[k];
      Real dlambda = (*support_derivative)(thetas[k]);
      std::complex<Real> w(std::cos(thetas[k]), -std::sin(thetas[k]));
      curve.points.push_back(w * std::complex<Real>(lambda, -dlambda));
    }
  }
  return curve;
}

// Largest modulus over the curve's boundary points.
template <typename Real>
Real numerical_radius(const SupportCurve<Real>& curve) {
  if (curve.points.empty())
    throw contract_error("numerical_radius: curve has no boundary points");
  Real r = 0;
  for (const auto& z : curve.points) r = std::max(r, std::abs(z));
  return r;
}

// sup over the shared grid of |difference of support values|.
template <typename Real>
Real uniform_gap(const SupportCurve<Real>& a, const SupportCurve<Real>& b) {
  if (a.thetas.size() != b.thetas.size())
    throw contract_error("uniform_gap: grids differ in size");
  for (std::size_t k = 0; k < a.thetas.size(); ++k)
    if (std::abs(a.thetas[k] - b.thetas[k]) > Real(1e-12))
      throw contract_error("uniform_gap: grids differ");
  Real gap = 0;
  for (std::size_t k = 0; k < a.values.size(); ++k)
    gap = std::max(gap, std::abs(a.values[k] - b.values[k]));
  return gap;
}

}  // namespace numrange_lab
