#include "fentropy/entropy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fentropy/linalg.hpp"
#include "fentropy/tolerances.hpp"

namespace fentropy {

double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues) {
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double lambda = eigenvalues(i);
    if (lambda < -tol::psd)
      throw std::invalid_argument("entropy: eigenvalue " +
                                  std::to_string(lambda) + " is negative");
    if (lambda > tol::eigenvalue_floor) entropy -= lambda * std::log(lambda);
  }
  return entropy;
}

double von_neumann(const Eigen::MatrixXcd& rho) {
  require_hermitian(rho, "von_neumann");
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > tol::density_trace)
    throw std::invalid_argument("von_neumann: trace deviates from 1 by " +
                                std::to_string(std::abs(trace - 1.0)));
  return entropy_of_spectrum(eigh(rho).eigenvalues);
}

double von_neumann(const ReducedDensityMatrix& gamma) {
  return von_neumann(gamma.matrix);
}

double relative_entropy(const Eigen::MatrixXcd& rho,
                        const Eigen::MatrixXcd& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  require_hermitian(rho, "relative_entropy");
  require_hermitian(sigma, "relative_entropy");
  for (const auto* m : {&rho, &sigma}) {
    const double trace = m->trace().real();
    if (std::abs(trace - 1.0) > tol::density_trace)
      throw std::invalid_argument(
          "relative_entropy: trace deviates from 1 by " +
          std::to_string(std::abs(trace - 1.0)));
  }

  const EighResult es_sigma = eigh(sigma);
  // Kernel test first: any appreciable weight of rho on the kernel of sigma
  // makes the divergence infinite.
  double log_term = 0.0;  // tr(rho ln sigma) over the support of sigma
  for (Eigen::Index i = 0; i < es_sigma.eigenvalues.size(); ++i) {
    const double s = es_sigma.eigenvalues(i);
    if (s < -tol::psd)
      throw std::invalid_argument("relative_entropy: sigma has eigenvalue " +
                                  std::to_string(s));
    const Eigen::VectorXcd v = es_sigma.eigenvectors.col(i);
    const double overlap = (v.adjoint() * rho * v).value().real();
    if (s <= tol::eigenvalue_floor) {
      if (overlap > tol::kernel_leak)
        return std::numeric_limits<double>::infinity();
    } else {
      log_term += overlap * std::log(s);
    }
  }

  const double entropy_rho = -entropy_of_spectrum(eigh(rho).eigenvalues);
  const double divergence = entropy_rho - log_term;
  if (divergence < -tol::inequality_check)
    throw std::runtime_error("relative_entropy: result " +
                             std::to_string(divergence) +
                             " violates nonnegativity");
  return divergence;
}

EntropyProfile entropy_profile(const WedgeState& psi) {
  EntropyProfile profile;
  profile.d = psi.d;
  profile.n_particles = psi.n_particles;
  profile.values.reserve(static_cast<std::size_t>(psi.n_particles));
  for (int k = 1; k <= psi.n_particles; ++k)
    profile.values.push_back(von_neumann(rdm(psi, k)));
  return profile;
}

}  // namespace fentropy
