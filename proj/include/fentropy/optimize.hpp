#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "fentropy/fermion.hpp"
#include "json.hpp"

// Projected gradient descent for the smallest k-body entropy over unit-norm
// states of the wedge space. Slater determinants give ln C(N,k) and are
// conjectured to be the minimizers; the optimizer reports best-found values,
// never minima.
namespace fentropy {

struct OptimizationConfig {
  int d = 0;
  int n_particles = 0;
  int k = 0;
  int restarts = 32;
  int max_iters = 2000;     // iteration budget per restart
  double initial_step = 0.1;
  double shrink = 0.5;      // backtracking factor, strictly between 0 and 1
  double grad_tol = 1e-7;   // stop once the projected gradient norm drops below
  std::uint64_t seed = 0;   // master seed; restart i draws from derive_seed(seed, i)
  bool keep_traces = false; // record (iteration, value, gradient norm) per restart
};

// One line-search epoch as seen at the start of an iteration: the objective
// value at the current iterate and the projected gradient norm there.
struct TracePoint {
  int iteration = 0;
  double value = 0.0;
  double grad_norm = 0.0;
};

struct OptimizationResult {
  OptimizationConfig config;
  WedgeState best_state;
  double best_value = 0.0;        // S(gamma_k) at best_state, in nats
  double conjectured_floor = 0.0; // ln C(N, k)
  double gap = 0.0;               // best_value - conjectured_floor, any sign
  double slater_proximity = 0.0;  // of best_state
  bool converged = false;         // the best restart hit the gradient threshold
  // True when k >= 2 and best_value sits more than 1e-8 below the floor. Such
  // a run contradicts the conjecture and must be preserved verbatim;
  // best_state always carries the offending coefficients.
  bool counterexample_candidate = false;
  int best_restart = 0;           // ties within 1e-10 go to the lowest index
  std::vector<std::vector<TracePoint>> traces; // one per restart, if requested

  nlohmann::ordered_json to_json() const;
};

// Euclidean gradient of S(gamma_k) in the 2*C(d,N) real coefficient
// parameters (entry 2r is d/dRe c_r, entry 2r+1 is d/dIm c_r), before any
// sphere projection. The objective is extended off the sphere by the raw
// contraction gamma_k(c) = M(c) M(c)*, so central finite differences of
// rdm_matrix-based entropies reproduce this vector. Eigenvalues of gamma_k
// at or below 1e-12 lie outside the support and contribute nothing.
Eigen::VectorXd entropy_gradient(const WedgeState& psi, int k);

// Euclidean distance between the descending spectrum of gamma_1 and the
// Slater spectrum (1/N, ..., 1/N, 0, ..., 0). Zero exactly on states that
// are Slater determinants up to a one-body rotation.
double slater_proximity(const WedgeState& psi);

// Projected gradient descent on the unit sphere (step, renormalize) with an
// Armijo backtracking line search and deterministic random restarts. A
// restart ends when the projected gradient norm reaches grad_tol (converged),
// when the iteration budget runs out, or early once steps stop yielding more
// than machine-scale decreases; only the first counts as converged. Throws
// std::invalid_argument on malformed configs (needs 1 <= k <= N <= d,
// C(d,N) <= 1e5) and std::runtime_error if a k=1 run ends below the ln N
// floor: that floor is a theorem, so falling under it means the
// implementation is broken.
OptimizationResult minimize_entropy(const OptimizationConfig& config);

}  // namespace fentropy
