#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "fentropy/tolerances.hpp"

namespace fentropy {

struct EighResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXcd eigenvectors; // columns, orthonormal, matching order
};

// Throws std::invalid_argument unless m is square and entrywise Hermitian to
// tol::hermiticity relative to its largest entry.
void require_hermitian(const Eigen::MatrixXcd& m, const char* what);

// Hermitian eigendecomposition with ascending eigenvalues. Rejects
// non-Hermitian input; throws std::runtime_error if the solver fails to
// converge.
EighResult eigh(const Eigen::MatrixXcd& m);

// Kronecker product. Refuses to allocate more than entry_cap entries.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                      std::size_t entry_cap = tol::kron_entry_cap);

// d^n as a matrix dimension, throwing std::invalid_argument when it exceeds
// cap. Shared guard of the full-tensor-space oracle paths.
Eigen::Index tensor_dimension(int d, int n, std::size_t cap, const char* what);

// Partial trace over the last (n - keep) factors of a Hermitian matrix on
// (C^d)^(tensor n), laid out row-major with the first factor most
// significant. Guarded by cap on the full dimension d^n.
Eigen::MatrixXcd partial_trace_full(const Eigen::MatrixXcd& m, int d, int n,
                                    int keep,
                                    std::size_t cap = tol::default_oracle_cap);

}  // namespace fentropy
