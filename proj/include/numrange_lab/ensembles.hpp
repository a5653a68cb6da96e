#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "numrange_lab/eig.hpp"
#include "numrange_lab/rng.hpp"
#include "numrange_lab/types.hpp"

namespace numrange_lab {

enum class EnsembleKind { ginibre, elliptic, chiral_elliptic, wishart, ginibre_word };

inline EnsembleKind parse_ensemble_kind(const std::string& name) {
  if (name == "ginibre") return EnsembleKind::ginibre;
  if (name == "elliptic") return EnsembleKind::elliptic;
  if (name == "chiral" || name == "chiral-elliptic") return EnsembleKind::chiral_elliptic;
  if (name == "wishart") return EnsembleKind::wishart;
  if (name == "ginibre-word" || name == "word") return EnsembleKind::ginibre_word;
  throw parameter_error("unknown ensemble kind: " + name);
}

inline std::string ensemble_kind_name(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::ginibre: return "ginibre";
    case EnsembleKind::elliptic: return "elliptic";
    case EnsembleKind::chiral_elliptic: return "chiral-elliptic";
    case EnsembleKind::wishart: return "wishart";
    case EnsembleKind::ginibre_word: return "ginibre-word";
  }
  return "unknown";
}

// One factor in a Ginibre word: Y1, Y2, Y3 or their adjoints Y1*, Y2*, Y3*.
struct WordLetter {
  int index = 1;  // 1..3
  bool adjoint = false;
};

inline std::vector<WordLetter> parse_word(const std::vector<std::string>& letters) {
  std::vector<WordLetter> word;
  word.reserve(letters.size());
  for (const std::string& s : letters) {
    if (s.size() < 2 || s.size() > 3 || (s[0] != 'Y' && s[0] != 'y') ||
        s[1] < '1' || s[1] > '3' || (s.size() == 3 && s[2] != '*'))
      throw parameter_error("bad word letter '" + s + "' (expected Y1..Y3, optional *)");
    word.push_back({s[1] - '0', s.size() == 3});
  }
  return word;
}

template <typename Real = double>
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::ginibre;
  Index N = 0;
  Real tau = 0;
  Index nu = 0;
  std::vector<WordLetter> word;
  std::uint64_t seed = 1;
};

namespace detail {

template <typename Real>
void require_tau(Real tau) {
  if (!(tau >= Real(0) && tau <= Real(1)))
    throw parameter_error("tau must lie in [0, 1]");
}

inline void require_size(Index n) {
  if (n < 1) throw parameter_error("N must be at least 1");
}

inline void require_nu(Index nu) {
  if (nu < 0) throw parameter_error("nu must be non-negative");
}

}  // namespace detail

// N x N i.i.d. complex Gaussian entries with E|entry|^2 = 1/N.
template <typename Real = double>
CMat<Real> sample_ginibre(Index n, std::uint64_t seed) {
  detail::require_size(n);
  RngStream rng(seed, 0);
  return gaussian_complex<Real>(rng, n, n, Real(1) / Real(n));
}

// Interpolation between Ginibre (tau=0) and GUE (tau=1):
// sqrt(1+tau)/2 (G+G*) + sqrt(1-tau)/2 (G-G*). Evaluated entrywise as
// cp*G_ij + cm*conj(G_ji), which makes the tau=0 case reproduce G exactly
// and the tau=1 case exactly Hermitian.
template <typename Real = double>
CMat<Real> sample_elliptic(Index n, Real tau, std::uint64_t seed) {
  detail::require_size(n);
  detail::require_tau(tau);
  CMat<Real> g = sample_ginibre<Real>(n, seed);
  Real cp = (std::sqrt(Real(1) + tau) + std::sqrt(Real(1) - tau)) / Real(2);
  Real cm = (std::sqrt(Real(1) + tau) - std::sqrt(Real(1) - tau)) / Real(2);
  CMat<Real> x(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      x(i, j) = cp * g(i, j) + cm * std::conj(g(j, i));
  return x;
}

// Two independent N x (N+nu) matrices with E|entry|^2 = 1/(2N).
template <typename Real = double>
std::pair<CMat<Real>, CMat<Real>> sample_pq_pair(Index n, Index nu,
                                                 std::uint64_t seed) {
  detail::require_size(n);
  detail::require_nu(nu);
  Real variance = Real(1) / Real(2 * n);
  RngStream rng_p(seed, 0);
  RngStream rng_q(seed, 1);
  return {gaussian_complex<Real>(rng_p, n, n + nu, variance),
          gaussian_complex<Real>(rng_q, n, n + nu, variance)};
}

// The correlated pair X1 = sqrt(1+tau) P + sqrt(1-tau) Q,
// X2 = sqrt(1+tau) P - sqrt(1-tau) Q.
template <typename Real = double>
std::pair<CMat<Real>, CMat<Real>> sample_x1x2(Index n, Index nu, Real tau,
                                              std::uint64_t seed) {
  detail::require_tau(tau);
  auto [p, q] = sample_pq_pair<Real>(n, nu, seed);
  Real sp = std::sqrt(Real(1) + tau);
  Real sm = std::sqrt(Real(1) - tau);
  return {sp * p + sm * q, sp * p - sm * q};
}

// Block anti-diagonal Dirac matrix [[0, X1], [X2*, 0]] of size (2N+nu).
template <typename Real = double>
CMat<Real> sample_chiral(Index n, Index nu, Real tau, std::uint64_t seed) {
  auto [x1, x2] = sample_x1x2<Real>(n, nu, tau, seed);
  Index m = n + nu;
  CMat<Real> d = CMat<Real>::Zero(n + m, n + m);
  d.topRightCorner(n, m) = x1;
  d.bottomLeftCorner(m, n) = x2.adjoint();
  return d;
}

// X1 X2*, an N x N product of the correlated rectangular factors.
template <typename Real = double>
CMat<Real> sample_wishart(Index n, Index nu, Real tau, std::uint64_t seed) {
  auto [x1, x2] = sample_x1x2<Real>(n, nu, tau, seed);
  return x1 * x2.adjoint();
}

// Product of Ginibre factors in word order. Y1, Y2, Y3 are instantiated
// once per call (streams 0..2 of the seed) and reused for repeated letters,
// so Y1^2 really squares a single realization.
template <typename Real = double>
CMat<Real> sample_ginibre_word(Index n, const std::vector<WordLetter>& word,
                               std::uint64_t seed) {
  detail::require_size(n);
  if (word.empty()) throw parameter_error("word must be non-empty");
  std::array<CMat<Real>, 3> factors;
  for (const WordLetter& letter : word) {
    CMat<Real>& y = factors[letter.index - 1];
    if (y.size() == 0) {
      RngStream rng(seed, static_cast<std::uint64_t>(letter.index - 1));
      y = gaussian_complex<Real>(rng, n, n, Real(1) / Real(n));
    }
  }
  CMat<Real> product;
  for (const WordLetter& letter : word) {
    const CMat<Real>& y = factors[letter.index - 1];
    CMat<Real> factor;
    if (letter.adjoint)
      factor = y.adjoint();
    else
      factor = y;
    product = product.size() == 0 ? factor : CMat<Real>(product * factor);
  }
  return product;
}

template <typename Real = double>
CMat<Real> sample(const EnsembleSpec<Real>& spec) {
  switch (spec.kind) {
    case EnsembleKind::ginibre:
      return sample_ginibre<Real>(spec.N, spec.seed);
    case EnsembleKind::elliptic:
      return sample_elliptic<Real>(spec.N, spec.tau, spec.seed);
    case EnsembleKind::chiral_elliptic:
      return sample_chiral<Real>(spec.N, spec.nu, spec.tau, spec.seed);
    case EnsembleKind::wishart:
      return sample_wishart<Real>(spec.N, spec.nu, spec.tau, spec.seed);
    case EnsembleKind::ginibre_word:
      return sample_ginibre_word<Real>(spec.N, spec.word, spec.seed);
  }
  throw parameter_error("unknown ensemble kind");
}

// Full spectrum of a general square matrix.
template <typename Real = double>
CVec<Real> eigenvalues(const CMat<Real>& a) {
  require_square(a, "eigenvalues");
  Eigen::ComplexEigenSolver<CMat<Real>> solver(a, false);
  if (solver.info() != Eigen::Success)
    throw consistency_error("general eigensolver failed");
  return solver.eigenvalues();
}

}  // namespace numrange_lab
