#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

// Deterministic randomness helpers. Everything downstream (state sampling,
// verification trials, optimizer restarts) derives its engine seed through
// derive_seed, so a run is a pure function of the user-supplied master seed.
namespace fentropy::rng {

inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer; good avalanche, cheap, stable across platforms.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += golden_gamma;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Stream s of a master seed. Chain calls for multi-index streams.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t s) {
  return splitmix64(seed + golden_gamma * s);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                    std::uint64_t b) {
  return derive_seed(derive_seed(seed, a), b);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                    std::uint64_t b, std::uint64_t c) {
  return derive_seed(derive_seed(seed, a, b), c);
}

// Uniform draw in (0, 1], safe as a Box-Muller radius argument.
inline double uniform_open01(std::mt19937_64& engine) {
  return (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53;
}

// One complex standard normal (independent N(0,1) real and imaginary parts)
// from a single Box-Muller pair.
inline std::complex<double> standard_normal_complex(std::mt19937_64& engine) {
  const double u = uniform_open01(engine);
  const double v = uniform_open01(engine);
  const double radius = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * M_PI * v;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

inline Eigen::VectorXcd gaussian_vector(Eigen::Index n,
                                        std::mt19937_64& engine) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = standard_normal_complex(engine);
  return v;
}

inline Eigen::MatrixXcd gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                                        std::mt19937_64& engine) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      m(i, j) = standard_normal_complex(engine);
  return m;
}

// Haar-like unitary: QR of a complex Gaussian matrix with the phases of the
// R diagonal absorbed into Q so the factorization is unique.
inline Eigen::MatrixXcd random_unitary(Eigen::Index dim,
                                       std::mt19937_64& engine) {
  const Eigen::MatrixXcd g = gaussian_matrix(dim, dim, engine);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const std::complex<double> rjj = r(j, j);
    const double a = std::abs(rjj);
    q.col(j) *= (a > 0.0) ? rjj / a : 1.0;
  }
  return q;
}

// Full-rank random density matrix G G^dagger / tr(G G^dagger).
inline Eigen::MatrixXcd random_density(Eigen::Index dim,
                                       std::mt19937_64& engine) {
  const Eigen::MatrixXcd g = gaussian_matrix(dim, dim, engine);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace fentropy::rng
