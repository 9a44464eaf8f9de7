#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "fentropy/combinadics.hpp"
#include "fentropy/tolerances.hpp"

// Pure states of N fermions in d one-particle modes, stored in the wedge
// basis: coefficient r multiplies the basis vector e_I where I is the r-th
// N-subset of {0, ..., d-1} in lexicographic order.
namespace fentropy {

struct WedgeState {
  int d = 0;
  int n_particles = 0;
  Eigen::VectorXcd coeffs;  // length binomial(d, N), unit norm

  std::uint64_t dim() const { return static_cast<std::uint64_t>(coeffs.size()); }
};

// Validating constructors. make_state requires the norm to already be 1 to
// tol::state_norm; make_state_normalized rescales (and rejects near-zero
// input).
WedgeState make_state(int d, int n_particles, Eigen::VectorXcd coeffs);
WedgeState make_state_normalized(int d, int n_particles,
                                 Eigen::VectorXcd coeffs);

// Slater determinant occupying the given modes (0-based, strictly
// increasing).
WedgeState slater(int d, const Subset& occupied);

// Coefficients drawn i.i.d. complex standard normal from a mt19937_64 engine
// seeded with splitmix64(seed), then normalized. Deterministic in seed.
WedgeState random_state(int d, int n_particles, std::uint64_t seed);

struct ReducedDensityMatrix {
  int d = 0;
  int n_particles = 0;
  int k = 0;
  Eigen::MatrixXcd matrix;  // binomial(d, k) square, Hermitian, PSD, trace 1
};

// k-body reduced density matrix of a pure wedge state,
//   gamma_k[A, B] = C(N, k)^-1 sum_C sign(A, C) sign(B, C) conj(c_{A u C}) c_{B u C},
// equivalently gamma_k = M M^dagger for the coefficient matrix
//   M[A, C] = C(N, k)^-1/2 sign(A, C) c_{A u C}
// over k-subsets A and (N-k)-subsets C. Trace-one normalization.
ReducedDensityMatrix rdm(const WedgeState& psi, int k);

// Same contraction on a raw coefficient vector without the unit-norm gate;
// the trace equals the squared norm. This is the objective extension the
// optimizer and finite-difference checks differentiate.
Eigen::MatrixXcd rdm_matrix(int d, int n_particles,
                            const Eigen::VectorXcd& coeffs, int k);

namespace detail {
// The split-coefficient matrix M[A, C] = C(N, k)^-1/2 sign(A, C) c_{A u C}
// over k-subsets A (rows) and (N-k)-subsets C (columns); gamma_k = M M*.
// Shared by the RDM contraction and the entropy gradient.
Eigen::MatrixXcd coefficient_matrix(int d, int n_particles,
                                    const Eigen::VectorXcd& coeffs, int k);
}  // namespace detail

// Isometric embedding of the wedge basis into (C^d)^(tensor N):
//   e_I -> (N!)^-1/2 sum_sigma sgn(sigma) e_{i_sigma(1)} x ... x e_{i_sigma(N)}
// with the first tensor factor most significant in the row-major index.
// Guarded by cap on d^N.
Eigen::VectorXcd embed_full(const WedgeState& psi,
                            std::size_t cap = tol::default_oracle_cap);

// Orthogonal projector onto the antisymmetric subspace of (C^d)^(tensor m),
// assembled from the embedded wedge basis. Rank binomial(d, m).
Eigen::MatrixXcd antisymmetric_projector_full(
    int d, int m, std::size_t cap = tol::default_oracle_cap);

// Action of a one-body basis change u on the wedge coefficients: the N-th
// compound matrix, c'[J] = sum_I det(u[J, I]) c[I]. u must be unitary to
// tol::unitarity.
WedgeState apply_one_body_unitary(const WedgeState& psi,
                                  const Eigen::MatrixXcd& u);

struct MaximallyMixed {
  int d = 0;
  int k = 0;
  std::uint64_t dim = 0;  // binomial(d, k)

  Eigen::MatrixXcd as_matrix() const;
};

// The maximally mixed state on the k-fermion wedge space.
MaximallyMixed maximally_mixed(int d, int k);

// Number of eigenvalues of a one-body RDM above eigenvalue_tol; the number
// of modes the state actually uses.
int support_dimension(const ReducedDensityMatrix& gamma1,
                      double eigenvalue_tol = 1e-10);

// State JSON: {"d": int, "N": int, "coeffs": [[re, im], ...]}. The reader
// rejects wrong lengths and norms off by more than 1e-6, then renormalizes.
WedgeState read_state_json(std::istream& in);
WedgeState read_state_file(const std::string& path);
nlohmann::ordered_json state_json(const WedgeState& psi);
void write_state_json(const WedgeState& psi, std::ostream& out);
void write_state_file(const WedgeState& psi, const std::string& path);

}  // namespace fentropy
