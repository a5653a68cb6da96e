#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "numrange_lab/rng.hpp"
#include "numrange_lab/types.hpp"

namespace numrange_lab {

template <typename Real>
struct EigenPair {
  Real value;
  CVec<Real> vector;  // unit norm
};

template <typename Real>
void require_square(const CMat<Real>& a, const char* who) {
  if (a.rows() != a.cols())
    throw contract_error(std::string(who) + ": matrix must be square");
}

template <typename Real>
Real max_abs(const CMat<Real>& a) {
  return a.size() == 0 ? Real(0) : a.cwiseAbs().maxCoeff();
}

// Structural Hermitian test: max |A_ij - conj(A_ji)| <= 1e-12 * (1 + max|A|).
template <typename Real>
bool is_hermitian(const CMat<Real>& a) {
  if (a.rows() != a.cols()) return false;
  Real worst = 0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i <= j; ++i)
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst <= Real(1e-12) * (Real(1) + max_abs(a));
}

template <typename Real>
void require_hermitian(const CMat<Real>& a, const char* who) {
  require_square(a, who);
  if (!is_hermitian(a))
    throw contract_error(std::string(who) + ": matrix must be Hermitian");
}

// (A + A*)/2 with mirrored storage, so the result is Hermitian bitwise.
template <typename Real>
CMat<Real> hermitian_part(const CMat<Real>& a) {
  require_square(a, "hermitian_part");
  Index n = a.rows();
  CMat<Real> h(n, n);
  for (Index j = 0; j < n; ++j) {
    h(j, j) = std::complex<Real>((a(j, j).real() + a(j, j).real()) / Real(2), 0);
    for (Index i = 0; i < j; ++i) {
      std::complex<Real> z = (a(i, j) + std::conj(a(j, i))) / Real(2);
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

// Hermitian K with A = hermitian_part(A) + i*K, i.e. K = (A - A*)/(2i).
template <typename Real>
CMat<Real> antihermitian_part(const CMat<Real>& a) {
  require_square(a, "antihermitian_part");
  Index n = a.rows();
  CMat<Real> k(n, n);
  for (Index j = 0; j < n; ++j) {
    k(j, j) = std::complex<Real>(a(j, j).imag(), 0);
    for (Index i = 0; i < j; ++i) {
      std::complex<Real> d = a(i, j) - std::conj(a(j, i));  // d / (2i)
      std::complex<Real> z(d.imag() / Real(2), -d.real() / Real(2));
      k(i, j) = z;
      k(j, i) = std::conj(z);
    }
  }
  return k;
}

// Re(e^{i theta} A) = (e^{i theta} A + e^{-i theta} A*)/2, Hermitian bitwise.
template <typename Real>
CMat<Real> rotated_hermitian_part(const CMat<Real>& a, Real theta) {
  require_square(a, "rotated_hermitian_part");
  std::complex<Real> w(std::cos(theta), std::sin(theta));
  Index n = a.rows();
  CMat<Real> m(n, n);
  for (Index j = 0; j < n; ++j) {
    m(j, j) = std::complex<Real>((w * a(j, j)).real(), 0);
    for (Index i = 0; i < j; ++i) {
      std::complex<Real> z = (w * a(i, j) + std::conj(w * a(j, i))) / Real(2);
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

namespace detail {

constexpr Index kDenseEigThreshold = 128;
constexpr Index kLanczosMaxBasis = 250;
constexpr int kLanczosRestarts = 3;

template <typename Real>
EigenPair<Real> dense_top_eigenpair(const CMat<Real>& h) {
  Eigen::SelfAdjointEigenSolver<CMat<Real>> solver(h);
  if (solver.info() != Eigen::Success)
    throw consistency_error("dense Hermitian eigensolver failed");
  Index n = h.rows();
  EigenPair<Real> pair{solver.eigenvalues()(n - 1), solver.eigenvectors().col(n - 1)};
  pair.vector.normalize();
  return pair;
}

template <typename Real>
CVec<Real> lanczos_start_vector(Index n) {
  RngStream rng(0x4c414e43ULL, static_cast<std::uint64_t>(n));
  CVec<Real> v(n);
  for (Index i = 0; i < n; ++i) {
    std::complex<double> z = rng.gaussian_complex(1.0);
    v(i) = std::complex<Real>(static_cast<Real>(z.real()), static_cast<Real>(z.imag()));
  }
  v.normalize();
  return v;
}

// Largest Ritz pair of the tridiagonal (alpha, beta) truncated to size k.
template <typename Real>
void tridiag_top(const RVec<Real>& alpha, const RVec<Real>& beta, Index k,
                 bool vectors, Real* value, RVec<Real>* s) {
  Eigen::SelfAdjointEigenSolver<RMat<Real>> solver;
  solver.computeFromTridiagonal(alpha.head(k), beta.head(k - 1),
                                vectors ? Eigen::ComputeEigenvectors
                                        : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw consistency_error("tridiagonal eigensolver failed");
  *value = solver.eigenvalues()(k - 1);
  if (vectors) *s = solver.eigenvectors().col(k - 1);
}

// Lanczos with full reorthogonalization for the algebraically largest
// eigenpair of Hermitian h. Returns nothing if the requested residual was
// not reached; the caller then falls back to a dense solve. Deterministic
// for a fixed start vector.
template <typename Real>
std::optional<EigenPair<Real>> lanczos_top_eigenpair(const CMat<Real>& h,
                                                     CVec<Real> v,
                                                     Real residual_factor) {
  const Index n = h.rows();
  const Index basis_cap = std::min<Index>(n, kLanczosMaxBasis);
  v.normalize();

  CMat<Real> basis(n, basis_cap);
  RVec<Real> alpha(basis_cap), beta(basis_cap);
  CVec<Real> w(n), candidate(n);

  for (int restart = 0; restart < kLanczosRestarts; ++restart) {
    basis.col(0) = v;
    w.noalias() = h * v;
    alpha(0) = v.dot(w).real();
    w -= alpha(0) * v;
    Index k = 1;  // current basis size
    Real last_ritz = std::numeric_limits<Real>::lowest();

    while (true) {
      // Full reorthogonalization, twice, keeps the basis numerically
      // orthogonal so no spurious eigenvalue copies appear.
      for (int pass = 0; pass < 2; ++pass) {
        CVec<Real> proj = basis.leftCols(k).adjoint() * w;
        w.noalias() -= basis.leftCols(k) * proj;
      }
      beta(k - 1) = w.norm();

      bool basis_full = (k == basis_cap);
      bool breakdown = beta(k - 1) <= Real(1e-14) * (Real(1) + std::abs(alpha(0)));
      bool check_now = basis_full || breakdown || (k >= 8 && k % 3 == 0);

      if (check_now) {
        Real ritz;
        RVec<Real> s;
        tridiag_top(alpha, beta, k, false, &ritz, &s);
        bool value_stable =
            std::abs(ritz - last_ritz) <= Real(1e-11) * (Real(1) + std::abs(ritz));
        last_ritz = ritz;
        if (value_stable || basis_full || breakdown) {
          tridiag_top(alpha, beta, k, true, &ritz, &s);
          candidate.noalias() =
              basis.leftCols(k) * s.template cast<std::complex<Real>>();
          candidate.normalize();
          Real residual = (h * candidate - ritz * candidate).norm();
          if (residual <= residual_factor * (Real(1) + std::abs(ritz)))
            return EigenPair<Real>{ritz, candidate};
          if (breakdown) return std::nullopt;
        }
      }
      if (basis_full || breakdown) break;

      basis.col(k) = w / beta(k - 1);
      w.noalias() = h * basis.col(k);
      w -= beta(k - 1) * basis.col(k - 1);
      alpha(k) = basis.col(k).dot(w).real();
      w -= alpha(k) * basis.col(k);
      ++k;
    }
    v = candidate;  // restart from the best Ritz vector so far
  }
  return std::nullopt;
}

}  // namespace detail

// Algebraically largest eigenpair of a Hermitian matrix. warm_start, when
// given, seeds the iterative path (useful for sweeps over nearby matrices);
// it never changes what is computed, only how fast. The returned pair always
// satisfies ||A v - lambda v|| <= 1e-8 * (1 + |lambda|).
template <typename Real>
EigenPair<Real> hermitian_top_eigenpair(const CMat<Real>& a,
                                        const CVec<Real>* warm_start = nullptr) {
  require_hermitian(a, "hermitian_top_eigenpair");
  const Real residual_factor = Real(1e-9);
  EigenPair<Real> pair;
  if (a.rows() <= detail::kDenseEigThreshold) {
    pair = detail::dense_top_eigenpair(a);
  } else {
    CVec<Real> v0 = (warm_start && warm_start->size() == a.rows())
                        ? *warm_start
                        : detail::lanczos_start_vector<Real>(a.rows());
    auto result = detail::lanczos_top_eigenpair(a, std::move(v0), residual_factor);
    pair = result ? *result : detail::dense_top_eigenpair(a);
  }
  Real residual = (a * pair.vector - pair.value * pair.vector).norm();
  if (!(residual <= Real(1e-8) * (Real(1) + std::abs(pair.value))))
    throw consistency_error("eigenpair residual bound violated");
  return pair;
}

// (lambda_min, lambda_max), each within 1e-8 * (1 + spectral radius).
template <typename Real>
std::pair<Real, Real> hermitian_extremal_eigenvalues(const CMat<Real>& a) {
  require_hermitian(a, "hermitian_extremal_eigenvalues");
  if (a.rows() <= detail::kDenseEigThreshold) {
    Eigen::SelfAdjointEigenSolver<CMat<Real>> solver(a);
    if (solver.info() != Eigen::Success)
      throw consistency_error("dense Hermitian eigensolver failed");
    return {solver.eigenvalues()(0), solver.eigenvalues()(a.rows() - 1)};
  }
  Real top = hermitian_top_eigenpair(a).value;
  CMat<Real> neg = -a;
  Real bottom = -hermitian_top_eigenpair(neg).value;
  return {bottom, top};
}

}  // namespace numrange_lab
