#include "fentropy/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "fentropy/combinadics.hpp"
#include "fentropy/entropy.hpp"
#include "fentropy/linalg.hpp"
#include "fentropy/rng.hpp"
#include "fentropy/tolerances.hpp"

namespace fentropy {
namespace {

// Armijo sufficient-decrease constant for the backtracking line search.
constexpr double kArmijo = 1e-4;
// Candidates whose significant gamma_k eigenvalues fall at or below this are
// rejected: the entropy is continuous but not smooth at the spectrum
// boundary, and rejection keeps descent well-defined.
constexpr double kSpectrumGuard = 1e-14;
// The line search gives up once the trial step underflows this.
constexpr double kMinStep = 1e-16;
// A restart ends early after this many consecutive accepted steps whose
// decrease is below machine scale; monotone descent cannot recover
// meaningful progress from there and the full budget would be wasted
// crawling along the spectrum boundary.
constexpr int kStallLimit = 10;
constexpr double kStallScale = 1e-14;

double log_binomial(int n, int k) {
  return std::log(static_cast<double>(binomial(
      static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k))));
}

// Objective without the unit-norm gate, so that finite differences and
// line-search candidates slightly off the sphere stay well-defined.
double objective(int d, int n, const Eigen::VectorXcd& coeffs, int k) {
  return entropy_of_spectrum(eigh(rdm_matrix(d, n, coeffs, k)).eigenvalues);
}

Eigen::VectorXd gradient_raw(int d, int n, const Eigen::VectorXcd& coeffs,
                             int k) {
  const Eigen::MatrixXcd m = detail::coefficient_matrix(d, n, coeffs, k);
  Eigen::MatrixXcd gamma = m * m.adjoint();
  gamma = 0.5 * (gamma + gamma.adjoint()).eval();
  const EighResult es = eigh(gamma);

  // dS = tr[G dgamma] with G = sum_{lambda > floor} (-ln lambda - 1) v v*;
  // eigenvalues under the floor sit outside the support and are dropped.
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(es.eigenvalues.size());
  for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
    const double lambda = es.eigenvalues(i);
    if (lambda > tol::eigenvalue_floor) weights(i) = -std::log(lambda) - 1.0;
  }
  const Eigen::MatrixXcd g = es.eigenvectors * weights.asDiagonal() *
                             es.eigenvectors.adjoint();

  // dgamma = dM M* + M dM* turns dS into 2 Re sum_{A,C} W[C,A] dM[A,C] with
  // W = M* G, and dM[A,C] = scale * sign(A,C) dc_{A u C}. Collapsing the
  // splits of each I gives dS = 2 Re sum_I T_I dc_I.
  const Eigen::MatrixXcd w = m.adjoint() * g;
  const double scale =
      1.0 / std::sqrt(static_cast<double>(binomial(
                static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k))));

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 * coeffs.size());
  Subset a(static_cast<std::size_t>(k));
  Subset c(static_cast<std::size_t>(n - k));
  std::vector<int> pos(static_cast<std::size_t>(k));
  for (Eigen::Index r = 0; r < coeffs.size(); ++r) {
    const Subset full = subset_unrank(static_cast<std::uint64_t>(r), d, n);
    std::complex<double> t = 0.0;
    for (int i = 0; i < k; ++i) pos[static_cast<std::size_t>(i)] = i;
    for (;;) {
      int inversions = 0;
      std::size_t ai = 0, ci = 0;
      for (int i = 0, p = 0; i < n; ++i) {
        if (p < k && pos[static_cast<std::size_t>(p)] == i) {
          a[ai++] = full[static_cast<std::size_t>(i)];
          inversions += i - p;
          ++p;
        } else {
          c[ci++] = full[static_cast<std::size_t>(i)];
        }
      }
      const double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
      t += sign * w(static_cast<Eigen::Index>(subset_rank(c, d)),
                    static_cast<Eigen::Index>(subset_rank(a, d)));

      int i = k - 1;
      while (i >= 0 && pos[static_cast<std::size_t>(i)] == i + n - k) --i;
      if (i < 0) break;
      ++pos[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        pos[static_cast<std::size_t>(j)] =
            pos[static_cast<std::size_t>(j - 1)] + 1;
    }
    t *= scale;
    grad(2 * r) = 2.0 * t.real();
    grad(2 * r + 1) = -2.0 * t.imag();
  }
  return grad;
}

}  // namespace

Eigen::VectorXd entropy_gradient(const WedgeState& psi, int k) {
  return gradient_raw(psi.d, psi.n_particles, psi.coeffs, k);
}

double slater_proximity(const WedgeState& psi) {
  const EighResult es = eigh(rdm(psi, 1).matrix);
  const Eigen::Index d = es.eigenvalues.size();
  const double occupied = 1.0 / static_cast<double>(psi.n_particles);
  // eigh sorts ascending, so the top N entries are the last N.
  double sq = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double target = (d - i <= psi.n_particles) ? occupied : 0.0;
    const double diff = es.eigenvalues(i) - target;
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

OptimizationResult minimize_entropy(const OptimizationConfig& config) {
  const int d = config.d;
  const int n = config.n_particles;
  const int k = config.k;
  if (d < 1 || n < 1 || k < 1 || k > n || n > d)
    throw std::invalid_argument("minimize_entropy: need 1 <= k <= N <= d");
  const std::uint64_t dim_u = binomial(static_cast<std::uint64_t>(d),
                                       static_cast<std::uint64_t>(n));
  if (dim_u > 100000)
    throw std::invalid_argument(
        "minimize_entropy: C(d,N) exceeds the 1e5 search-space cap");
  if (config.restarts < 1)
    throw std::invalid_argument("minimize_entropy: restarts must be >= 1");
  if (config.max_iters < 1)
    throw std::invalid_argument("minimize_entropy: max_iters must be >= 1");
  if (!(config.initial_step > 0.0))
    throw std::invalid_argument("minimize_entropy: initial_step must be > 0");
  if (!(config.shrink > 0.0 && config.shrink < 1.0))
    throw std::invalid_argument(
        "minimize_entropy: shrink must lie strictly between 0 and 1");
  if (!(config.grad_tol > 0.0))
    throw std::invalid_argument("minimize_entropy: grad_tol must be > 0");

  const Eigen::Index dim = static_cast<Eigen::Index>(dim_u);
  // gamma_k = M M* with M of shape C(d,k) x C(d,N-k), so eigenvalues past
  // rank min(C(d,k), C(d,N-k)) vanish identically; the spectrum-boundary
  // guard only watches the significant ones.
  const Eigen::Index structural_rank = static_cast<Eigen::Index>(
      std::min(binomial(static_cast<std::uint64_t>(d),
                        static_cast<std::uint64_t>(k)),
               binomial(static_cast<std::uint64_t>(d),
                        static_cast<std::uint64_t>(n - k))));

  OptimizationResult result;
  result.config = config;
  result.conjectured_floor = log_binomial(n, k);

  double best_value = std::numeric_limits<double>::infinity();
  Eigen::VectorXcd best_coeffs;
  bool best_converged = false;
  int best_restart = -1;

  for (int restart = 0; restart < config.restarts; ++restart) {
    // Restart seeds are a pure function of (master seed, index), so serial
    // and parallel schedules would produce identical result sets.
    Eigen::VectorXcd x =
        random_state(d, n, rng::derive_seed(config.seed,
                                            static_cast<std::uint64_t>(restart)))
            .coeffs;
    double value = objective(d, n, x, k);
    bool converged = false;
    int stalled = 0;
    std::vector<TracePoint> trace;

    for (int iter = 0; iter < config.max_iters; ++iter) {
      Eigen::VectorXd grad = gradient_raw(d, n, x, k);
      // Project out the radial component; iterates live on the unit sphere
      // and the redundant global-phase direction already has zero gradient.
      Eigen::Map<const Eigen::VectorXd> xr(
          reinterpret_cast<const double*>(x.data()), 2 * dim);
      grad -= grad.dot(xr) * xr;
      const double grad_norm = grad.norm();
      if (config.keep_traces) trace.push_back({iter, value, grad_norm});
      if (grad_norm <= config.grad_tol) {
        converged = true;
        break;
      }

      double step = config.initial_step;
      bool accepted = false;
      while (step > kMinStep) {
        Eigen::VectorXcd cand = x;
        Eigen::Map<Eigen::VectorXd> cr(reinterpret_cast<double*>(cand.data()),
                                       2 * dim);
        cr -= step * grad;
        cand /= cand.norm();
        const EighResult es = eigh(rdm_matrix(d, n, cand, k));
        const double boundary =
            es.eigenvalues(es.eigenvalues.size() - structural_rank);
        if (boundary > kSpectrumGuard) {
          const double cand_value = entropy_of_spectrum(es.eigenvalues);
          if (cand_value <= value - kArmijo * step * grad_norm * grad_norm) {
            const double decrease = value - cand_value;
            stalled = (decrease <= kStallScale * std::max(1.0, std::abs(value)))
                          ? stalled + 1
                          : 0;
            x = std::move(cand);
            value = cand_value;
            accepted = true;
            break;
          }
        }
        step *= config.shrink;
      }
      // Wedged against the spectrum boundary, out of usable steps, or making
      // only sub-machine-scale progress; the restart keeps its current
      // iterate and counts as non-converged.
      if (!accepted || stalled >= kStallLimit) break;
    }

    if (config.keep_traces) result.traces.push_back(std::move(trace));
    // Strict improvement beyond the tie window; earlier restarts keep ties.
    if (value < best_value - 1e-10) {
      best_value = value;
      best_coeffs = x;
      best_converged = converged;
      best_restart = restart;
    }
  }

  result.best_state = make_state(d, n, std::move(best_coeffs));
  // Recompute through the gated path so the reported value is exactly the
  // entropy of the reported state.
  result.best_value = von_neumann(rdm(result.best_state, k));
  result.gap = result.best_value - result.conjectured_floor;
  result.slater_proximity = slater_proximity(result.best_state);
  result.converged = best_converged;
  result.best_restart = best_restart;

  if (k == 1 && result.best_value < std::log(static_cast<double>(n)) - 1e-8)
    throw std::runtime_error(
        "minimize_entropy: k=1 value fell below the ln N floor; the "
        "implementation is broken");
  result.counterexample_candidate =
      k >= 2 && result.best_value < result.conjectured_floor - 1e-8;
  return result;
}

nlohmann::ordered_json OptimizationResult::to_json() const {
  nlohmann::ordered_json cfg;
  cfg["d"] = config.d;
  cfg["N"] = config.n_particles;
  cfg["k"] = config.k;
  cfg["restarts"] = config.restarts;
  cfg["max_iters"] = config.max_iters;
  cfg["initial_step"] = config.initial_step;
  cfg["shrink"] = config.shrink;
  cfg["grad_tol"] = config.grad_tol;
  cfg["seed"] = config.seed;
  cfg["keep_traces"] = config.keep_traces;

  nlohmann::ordered_json doc;
  doc["config"] = std::move(cfg);
  doc["best_value"] = best_value;
  doc["conjectured_floor"] = conjectured_floor;
  doc["gap"] = gap;
  doc["slater_proximity"] = slater_proximity;
  doc["converged"] = converged;
  doc["counterexample_candidate"] = counterexample_candidate;
  doc["best_restart"] = best_restart;
  doc["best_state"] = state_json(best_state);
  if (config.keep_traces) {
    nlohmann::ordered_json all = nlohmann::ordered_json::array();
    for (const auto& restart_trace : traces) {
      nlohmann::ordered_json one = nlohmann::ordered_json::array();
      for (const TracePoint& p : restart_trace)
        one.push_back({p.iteration, p.value, p.grad_norm});
      all.push_back(std::move(one));
    }
    doc["traces"] = std::move(all);
  }
  return doc;
}

}  // namespace fentropy
