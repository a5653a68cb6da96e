#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace numrange_lab {

using Index = Eigen::Index;

template <typename Real>
using CMat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVec = Eigen::Vector<std::complex<Real>, Eigen::Dynamic>;

template <typename Real>
using RMat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RVec = Eigen::Vector<Real, Eigen::Dynamic>;

template <typename Real>
using Vec2 = Eigen::Matrix<Real, 2, 1>;

template <typename Real>
inline constexpr Real pi_v = Real(3.14159265358979323846L);

// Bad argument values (out-of-range tau, empty word, zero sizes, ...).
// CLI exit code 1.
struct parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Caller broke an API precondition (non-square matrix, non-Hermitian input,
// mismatched grids). CLI exit code 1.
struct contract_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A geometric construction failed (empty half-plane intersection,
// bisection could not bracket a boundary). CLI exit code 3.
struct geometry_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical guarantee the implementation relies on was violated
// numerically (root-count law, eigenpair residual, Lipschitz bound).
// CLI exit code 3.
struct consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace numrange_lab
