#include "fentropy/linalg.hpp"

#include <stdexcept>
#include <string>

namespace fentropy {

void require_hermitian(const Eigen::MatrixXcd& m, const char* what) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  const double scale = m.cwiseAbs().maxCoeff();
  const double deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (deviation > tol::hermiticity * scale)
    throw std::invalid_argument(std::string(what) +
                                ": matrix is not Hermitian (deviation " +
                                std::to_string(deviation) + ")");
}

EighResult eigh(const Eigen::MatrixXcd& m) {
  require_hermitian(m, "eigh");
  // Symmetrize so the result is independent of which triangle the solver
  // reads; the correction is below the Hermiticity tolerance.
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                      std::size_t entry_cap) {
  const unsigned __int128 entries =
      static_cast<unsigned __int128>(a.rows()) * a.cols() * b.rows() *
      b.cols();
  if (entries > entry_cap)
    throw std::invalid_argument("kron: result would have more than " +
                                std::to_string(entry_cap) + " entries");
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::Index tensor_dimension(int d, int n, std::size_t cap,
                              const char* what) {
  unsigned __int128 dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= static_cast<unsigned __int128>(d);
    if (dim > cap)
      throw std::invalid_argument(std::string(what) + ": dimension " +
                                  std::to_string(d) + "^" + std::to_string(n) +
                                  " exceeds cap " + std::to_string(cap));
  }
  return static_cast<Eigen::Index>(dim);
}

Eigen::MatrixXcd partial_trace_full(const Eigen::MatrixXcd& m, int d, int n,
                                    int keep, std::size_t cap) {
  if (d < 1 || n < 1)
    throw std::invalid_argument("partial_trace_full: need d >= 1 and n >= 1");
  if (keep < 1 || keep > n)
    throw std::invalid_argument("partial_trace_full: keep must lie in [1, n]");
  const Eigen::Index dim = tensor_dimension(d, n, cap, "partial_trace_full");
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument(
        "partial_trace_full: matrix dimension does not match d^n");
  require_hermitian(m, "partial_trace_full");

  const Eigen::Index kept_dim =
      tensor_dimension(d, keep, cap, "partial_trace_full");
  const Eigen::Index traced_dim = dim / kept_dim;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kept_dim, kept_dim);
  for (Eigen::Index i = 0; i < kept_dim; ++i)
    for (Eigen::Index j = 0; j < kept_dim; ++j) {
      std::complex<double> sum = 0.0;
      for (Eigen::Index t = 0; t < traced_dim; ++t)
        sum += m(i * traced_dim + t, j * traced_dim + t);
      out(i, j) = sum;
    }
  return out;
}

}  // namespace fentropy
