#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "numrange_lab/types.hpp"

namespace numrange_lab {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Seeded, splittable Gaussian source. Distinct stream ids on the same seed
// give independent streams, so parallel workers never share state. The
// sequence for a given (seed, stream_id) is bit-identical across runs:
// mt19937_64 and seed_seq are fully specified by the standard, and the
// Box-Muller transform below avoids std::normal_distribution, whose output
// is implementation-defined.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) {
    std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1));
    std::array<std::uint32_t, 8> words;
    for (std::size_t i = 0; i < words.size(); i += 2) {
      std::uint64_t v = detail::splitmix64(state);
      words[i] = static_cast<std::uint32_t>(v);
      words[i + 1] = static_cast<std::uint32_t>(v >> 32);
    }
    std::seed_seq seq(words.begin(), words.end());
    gen_ = std::mt19937_64(seq);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // One Box-Muller pair of independent N(0,1) variates.
  std::pair<double, double> gaussian_pair() {
    double u1 = 1.0 - uniform();  // (0, 1]: keeps log() finite
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double phi = 2.0 * pi_v<double> * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    auto [z0, z1] = gaussian_pair();
    spare_ = z1;
    have_spare_ = true;
    return z0;
  }

  // Complex Gaussian with E|z|^2 = variance; one Box-Muller pair per entry.
  std::complex<double> gaussian_complex(double variance) {
    auto [z0, z1] = gaussian_pair();
    double s = std::sqrt(variance / 2.0);
    return {s * z0, s * z1};
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// rows x cols matrix of i.i.d. complex Gaussians with E|entry|^2 = variance,
// filled row by row.
template <typename Real = double>
CMat<Real> gaussian_complex(RngStream& rng, Index rows, Index cols,
                            Real variance) {
  if (rows < 1 || cols < 1) throw parameter_error("matrix shape must be positive");
  if (!(variance > Real(0))) throw parameter_error("variance must be positive");
  CMat<Real> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      std::complex<double> z = rng.gaussian_complex(static_cast<double>(variance));
      m(i, j) = std::complex<Real>(static_cast<Real>(z.real()),
                                   static_cast<Real>(z.imag()));
    }
  return m;
}

}  // namespace numrange_lab
