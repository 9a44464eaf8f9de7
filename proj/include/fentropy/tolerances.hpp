#pragma once

#include <cstddef>

// Numerical tolerances shared across the library. Every tolerance that a
// public contract depends on lives here so that the kernel semantics of the
// entropy functions and the acceptance thresholds of the verification suite
// stay in sync.
namespace fentropy::tol {

// Eigenvalues at or below this floor are treated as exact zeros, both for the
// 0*ln(0) = 0 convention in the von Neumann entropy and for the kernel test
// in the relative entropy.
inline constexpr double eigenvalue_floor = 1e-12;

// Maximum admissible overlap <v|rho|v> of rho with a kernel eigenvector of
// sigma before D(rho||sigma) is declared infinite.
inline constexpr double kernel_leak = 1e-10;

// Density matrices may dip this far below zero before we call them
// non-positive.
inline constexpr double psd = 1e-10;

// Trace-one checks: tight for freshly contracted RDMs, looser for matrices
// that went through entropy arithmetic.
inline constexpr double rdm_trace = 1e-10;
inline constexpr double density_trace = 1e-8;

// Wedge-state normalization.
inline constexpr double state_norm = 1e-12;

// Entrywise Hermiticity check, relative to the largest entry magnitude.
inline constexpr double hermiticity = 1e-10;

// ||u^dagger u - I||_max bound for one-body unitaries.
inline constexpr double unitarity = 1e-9;

// Verification defaults: identities are two-sided, inequalities one-sided.
inline constexpr double identity_check = 1e-8;
inline constexpr double inequality_check = 1e-8;

// Largest full-tensor-space dimension (d^n) the oracle code paths accept.
inline constexpr std::size_t default_oracle_cap = 4096;

// Kronecker products refuse to allocate results larger than this.
inline constexpr std::size_t kron_entry_cap = 100000000;

}  // namespace fentropy::tol
