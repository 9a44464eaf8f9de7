#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fentropy/fermion.hpp"

// Von Neumann and relative entropy in nats. The eigenvalue floor
// tol::eigenvalue_floor implements the 0 ln 0 = 0 convention and decides
// kernel membership; both functions share it so S(rho) = ln(dim) -
// D(rho || maximally mixed) holds to working precision.
namespace fentropy {

// -tr(rho ln rho) of a Hermitian, PSD, trace-one matrix. Eigenvalues at or
// below the floor contribute zero. Throws std::invalid_argument on
// non-Hermitian input, eigenvalues below -tol::psd, or trace off by more
// than tol::density_trace.
double von_neumann(const Eigen::MatrixXcd& rho);
double von_neumann(const ReducedDensityMatrix& gamma);

// -sum lambda ln lambda over an already diagonalized spectrum, with the same
// floor and PSD gate. No trace requirement; this is the raw objective the
// optimizer extends off the unit sphere.
double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues);

// Umegaki relative entropy D(rho || sigma) = tr(rho ln rho) - tr(rho ln sigma).
// Returns +infinity when rho leaks outside the support of sigma (overlap of
// any near-kernel eigenvector of sigma with rho above tol::kernel_leak).
// Finite results below -tol::inequality_check indicate broken inputs and
// throw.
double relative_entropy(const Eigen::MatrixXcd& rho,
                        const Eigen::MatrixXcd& sigma);

struct EntropyProfile {
  int d = 0;
  int n_particles = 0;
  std::vector<double> values;  // values[k - 1] = S(gamma_k), k = 1..N

  double s(int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
};

// Entropies of every reduced density matrix of a pure wedge state.
EntropyProfile entropy_profile(const WedgeState& psi);

}  // namespace fentropy
