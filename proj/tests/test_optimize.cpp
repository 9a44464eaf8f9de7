#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fentropy/combinadics.hpp"
#include "fentropy/entropy.hpp"
#include "fentropy/fermion.hpp"
#include "fentropy/linalg.hpp"
#include "fentropy/optimize.hpp"
#include "fentropy/rng.hpp"

using namespace fentropy;

namespace {

// Independent objective for the finite-difference oracle: the entropy of the
// raw (ungated) contraction, exactly what the gradient claims to
// differentiate.
double raw_entropy(int d, int n, const Eigen::VectorXcd& coeffs, int k) {
  return entropy_of_spectrum(eigh(rdm_matrix(d, n, coeffs, k)).eigenvalues);
}

Eigen::VectorXd finite_difference_gradient(int d, int n,
                                           const Eigen::VectorXcd& coeffs,
                                           int k, double h) {
  Eigen::VectorXd grad(2 * coeffs.size());
  for (Eigen::Index r = 0; r < coeffs.size(); ++r) {
    for (int part = 0; part < 2; ++part) {
      const std::complex<double> delta =
          (part == 0) ? std::complex<double>(h, 0.0)
                      : std::complex<double>(0.0, h);
      Eigen::VectorXcd plus = coeffs;
      Eigen::VectorXcd minus = coeffs;
      plus(r) += delta;
      minus(r) -= delta;
      grad(2 * r + part) =
          (raw_entropy(d, n, plus, k) - raw_entropy(d, n, minus, k)) /
          (2.0 * h);
    }
  }
  return grad;
}

Eigen::VectorXd real_view(const Eigen::VectorXcd& v) {
  return Eigen::Map<const Eigen::VectorXd>(
      reinterpret_cast<const double*>(v.data()), 2 * v.size());
}

Eigen::VectorXd tangent_part(const Eigen::VectorXd& grad,
                             const Eigen::VectorXcd& x) {
  const Eigen::VectorXd xr = real_view(x);
  return grad - grad.dot(xr) * xr;
}

}  // namespace

TEST_CASE("gradient matches central finite differences on random states") {
  struct Sample {
    int d, n, k;
    std::uint64_t seed;
  };
  const std::vector<Sample> samples = {
      {5, 3, 2, 29}, {5, 3, 1, 30}, {4, 2, 2, 31}, {6, 4, 2, 32}, {6, 3, 3, 33},
  };
  for (const auto& s : samples) {
    CAPTURE(s.d);
    CAPTURE(s.n);
    CAPTURE(s.k);
    const WedgeState psi = random_state(s.d, s.n, s.seed);
    const Eigen::VectorXd grad = entropy_gradient(psi, s.k);
    const Eigen::VectorXd fd =
        finite_difference_gradient(s.d, s.n, psi.coeffs, s.k, 1e-5);
    REQUIRE(grad.norm() > 1e-3);  // away from critical points
    CHECK((grad - fd).norm() / grad.norm() <= 1e-5);
  }
}

TEST_CASE("gradient along the global phase direction vanishes") {
  const WedgeState psi = random_state(6, 3, 7);
  const Eigen::VectorXd grad = entropy_gradient(psi, 2);
  // d/de of e^{ie} c at e=0 is i c, i.e. (-Im c, Re c) in the real layout.
  Eigen::VectorXd phase(2 * psi.coeffs.size());
  for (Eigen::Index r = 0; r < psi.coeffs.size(); ++r) {
    phase(2 * r) = -psi.coeffs(r).imag();
    phase(2 * r + 1) = psi.coeffs(r).real();
  }
  CHECK(std::abs(grad.dot(phase)) <= 1e-9);
}

TEST_CASE("gradient for k=N is exactly radial with slope -2") {
  // gamma_N = c c*, so the raw objective is -|c|^2 ln |c|^2 and its gradient
  // at unit norm is -2 c in real coordinates. This pins the sign and layout
  // conventions independently of the contraction machinery.
  const WedgeState psi = random_state(5, 3, 17);
  const Eigen::VectorXd grad = entropy_gradient(psi, 3);
  const Eigen::VectorXd expected = -2.0 * real_view(psi.coeffs);
  CHECK((grad - expected).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("projected gradient vanishes at critical points") {
  SUBCASE("maximally entangled profile, d=4 N=2 k=1") {
    // (e_{01} + e_{23})/sqrt(2) has gamma_1 = I/4, the entropy maximum.
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(6);
    coeffs(0) = 1.0 / std::sqrt(2.0);
    coeffs(5) = 1.0 / std::sqrt(2.0);
    const WedgeState psi = make_state(4, 2, coeffs);
    const Eigen::VectorXd grad = entropy_gradient(psi, 1);
    CHECK(tangent_part(grad, psi.coeffs).norm() <= 1e-6);
  }
  SUBCASE("Slater determinant, d=5 N=3 k=2") {
    const WedgeState psi = slater(5, {0, 1, 2});
    const Eigen::VectorXd grad = entropy_gradient(psi, 2);
    CHECK(tangent_part(grad, psi.coeffs).norm() <= 1e-8);
  }
}

TEST_CASE("slater_proximity") {
  SUBCASE("Slater determinants sit at zero") {
    CHECK(slater_proximity(slater(6, {0, 2, 4})) <= 1e-10);
    CHECK(slater_proximity(slater(4, {0, 1, 2, 3})) <= 1e-12);
  }
  SUBCASE("one-body rotations preserve it") {
    std::mt19937_64 engine(99);
    const Eigen::MatrixXcd u = rng::random_unitary(6, engine);
    const WedgeState rotated =
        apply_one_body_unitary(slater(6, {0, 1, 2}), u);
    CHECK(slater_proximity(rotated) <= 1e-8);
  }
  SUBCASE("generic states are strictly positive") {
    CHECK(slater_proximity(random_state(6, 3, 31)) > 1e-6);
  }
}

TEST_CASE("minimize_entropy on the one-dimensional space d=N") {
  OptimizationConfig config;
  config.d = 4;
  config.n_particles = 4;
  config.k = 2;
  config.restarts = 2;
  config.max_iters = 50;
  config.seed = 5;
  const OptimizationResult result = minimize_entropy(config);
  CHECK(result.conjectured_floor == doctest::Approx(std::log(6.0)).epsilon(1e-15));
  CHECK(std::abs(result.best_value - std::log(6.0)) <= 1e-12);
  CHECK(std::abs(result.gap) <= 1e-12);
  CHECK(result.converged);
  CHECK_FALSE(result.counterexample_candidate);
  CHECK(result.slater_proximity <= 1e-12);
}

TEST_CASE("minimize_entropy k=1 reaches the ln N floor") {
  OptimizationConfig config;
  config.d = 5;
  config.n_particles = 3;
  config.k = 1;
  config.restarts = 8;
  config.seed = 11;
  const OptimizationResult result = minimize_entropy(config);
  CHECK(std::abs(result.best_value - std::log(3.0)) <= 1e-6);
  CHECK(result.gap >= -1e-8);
  CHECK_FALSE(result.counterexample_candidate);
  CHECK(std::abs(result.best_state.coeffs.norm() - 1.0) <= 1e-10);
  // The reported value is the entropy of the reported state.
  CHECK(std::abs(result.best_value - von_neumann(rdm(result.best_state, 1))) <=
        1e-9);
}

TEST_CASE("minimize_entropy d=5 N=4 k=2 lands on a rotated Slater") {
  OptimizationConfig config;
  config.d = 5;
  config.n_particles = 4;
  config.k = 2;
  config.restarts = 32;
  config.seed = 7;
  const OptimizationResult result = minimize_entropy(config);
  CHECK(std::abs(result.gap) <= 1e-3);
  CHECK(result.slater_proximity <= 1e-3);
  CHECK(result.converged);
  CHECK_FALSE(result.counterexample_candidate);
}

TEST_CASE("traces record non-increasing objective values") {
  OptimizationConfig config;
  config.d = 5;
  config.n_particles = 3;
  config.k = 2;
  config.restarts = 3;
  config.max_iters = 200;
  config.seed = 23;
  config.keep_traces = true;
  const OptimizationResult result = minimize_entropy(config);
  REQUIRE(result.traces.size() == 3);
  for (const auto& trace : result.traces) {
    REQUIRE(!trace.empty());
    CHECK(trace.front().iteration == 0);
    for (std::size_t i = 1; i < trace.size(); ++i) {
      CHECK(trace[i].iteration == trace[i - 1].iteration + 1);
      // Accepted steps satisfy a sufficient-decrease condition.
      CHECK(trace[i].value <= trace[i - 1].value + 1e-12);
    }
  }
  CHECK(result.best_restart >= 0);
  CHECK(result.best_restart < 3);
}

TEST_CASE("minimize_entropy is deterministic") {
  OptimizationConfig config;
  config.d = 5;
  config.n_particles = 3;
  config.k = 2;
  config.restarts = 4;
  config.max_iters = 300;
  config.seed = 41;
  config.keep_traces = true;
  const std::string first = minimize_entropy(config).to_json().dump();
  const std::string second = minimize_entropy(config).to_json().dump();
  CHECK(first == second);
}

TEST_CASE("result JSON carries the documented fields") {
  OptimizationConfig config;
  config.d = 4;
  config.n_particles = 2;
  config.k = 2;
  config.restarts = 2;
  config.max_iters = 100;
  config.seed = 3;
  const nlohmann::ordered_json doc = minimize_entropy(config).to_json();
  for (const char* key :
       {"config", "best_value", "conjectured_floor", "gap", "slater_proximity",
        "converged", "counterexample_candidate", "best_restart", "best_state"})
    CHECK_MESSAGE(doc.contains(key), key);
  CHECK(!doc.contains("traces"));  // only on request
  CHECK(doc["config"]["N"] == 2);
  CHECK(doc["best_state"]["d"] == 4);
  CHECK(doc["best_state"]["coeffs"].size() == 6);
}

TEST_CASE("minimize_entropy validates its configuration") {
  OptimizationConfig good;
  good.d = 4;
  good.n_particles = 2;
  good.k = 1;
  good.restarts = 1;
  good.max_iters = 5;

  auto broken = [&](auto mutate) {
    OptimizationConfig c = good;
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(
      minimize_entropy(broken([](auto& c) { c.k = 3; })),
      std::invalid_argument);
  CHECK_THROWS_AS(
      minimize_entropy(broken([](auto& c) { c.n_particles = 5; })),
      std::invalid_argument);
  CHECK_THROWS_AS(
      minimize_entropy(broken([](auto& c) { c.k = 0; })),
      std::invalid_argument);
  CHECK_THROWS_AS(
      minimize_entropy(broken([](auto& c) { c.restarts = 0; })),
      std::invalid_argument);
  CHECK_THROWS_AS(
      minimize_entropy(broken([](auto& c) { c.max_iters = 0; })),
      std::invalid_argument);
  CHECK_THROWS_AS(
      minimize_entropy(broken([](auto& c) { c.initial_step = 0.0; })),
      std::invalid_argument);
  CHECK_THROWS_AS(
      minimize_entropy(broken([](auto& c) { c.shrink = 1.0; })),
      std::invalid_argument);
  CHECK_THROWS_AS(
      minimize_entropy(broken([](auto& c) { c.shrink = 0.0; })),
      std::invalid_argument);
  CHECK_THROWS_AS(
      minimize_entropy(broken([](auto& c) { c.grad_tol = 0.0; })),
      std::invalid_argument);
  CHECK_THROWS_AS(minimize_entropy(broken([](auto& c) {
                    c.d = 30;
                    c.n_particles = 15;
                    c.k = 2;
                  })),
                  std::invalid_argument);
}
