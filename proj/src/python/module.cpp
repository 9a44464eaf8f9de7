#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>

#include "fentropy/combinadics.hpp"
#include "fentropy/entropy.hpp"
#include "fentropy/fermion.hpp"
#include "fentropy/optimize.hpp"
#include "fentropy/verify.hpp"
#include "json.hpp"

namespace py = pybind11;

namespace {

// Reports are built as JSON documents on the C++ side; hand them to Python
// as plain dicts/lists so callers never touch a foreign JSON type.
py::object json_to_py(const nlohmann::ordered_json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "k-body reduced density matrices and entropies of fermionic pure "
      "states in the wedge basis";

  py::class_<fentropy::WedgeState>(m, "WedgeState")
      .def(py::init([](int d, int n_particles, const Eigen::VectorXcd& coeffs) {
             return fentropy::make_state(d, n_particles, coeffs);
           }),
           py::arg("d"), py::arg("n_particles"), py::arg("coeffs"),
           "Build a state from unit-norm wedge coefficients; coefficient r "
           "multiplies the r-th lexicographic N-subset of modes.")
      .def_readonly("d", &fentropy::WedgeState::d)
      .def_readonly("n_particles", &fentropy::WedgeState::n_particles)
      .def_readonly("coeffs", &fentropy::WedgeState::coeffs)
      .def("__repr__", [](const fentropy::WedgeState& psi) {
        return "WedgeState(d=" + std::to_string(psi.d) +
               ", n_particles=" + std::to_string(psi.n_particles) +
               ", dim=" + std::to_string(psi.dim()) + ")";
      });

  m.def("binomial", &fentropy::binomial, py::arg("n"), py::arg("k"),
        "Exact C(n, k); raises OverflowError past 64 bits.");
  m.def("subset_rank", &fentropy::subset_rank, py::arg("subset"),
        py::arg("d"), "Lexicographic rank of an increasing subset.");
  m.def("subset_unrank", &fentropy::subset_unrank, py::arg("rank"),
        py::arg("d"), py::arg("k"), "Inverse of subset_rank.");

  m.def("slater", &fentropy::slater, py::arg("d"), py::arg("occupied"),
        "Slater determinant occupying the given 0-based modes.");
  m.def("random_state", &fentropy::random_state, py::arg("d"),
        py::arg("n_particles"), py::arg("seed"),
        "Seeded Haar-like random state (deterministic per seed).");
  m.def("apply_one_body_unitary", &fentropy::apply_one_body_unitary,
        py::arg("psi"), py::arg("u"),
        "Rotate every mode by the d x d unitary u.");
  m.def(
      "embed_full",
      [](const fentropy::WedgeState& psi) { return fentropy::embed_full(psi); },
      py::arg("psi"),
      "Isometric embedding into the d^N-dimensional tensor-product space.");

  m.def(
      "rdm",
      [](const fentropy::WedgeState& psi, int k) {
        return fentropy::rdm(psi, k).matrix;
      },
      py::arg("psi"), py::arg("k"),
      "k-body reduced density matrix as a C(d,k) x C(d,k) complex array, "
      "normalized to unit trace.");
  m.def(
      "support_dimension",
      [](const fentropy::WedgeState& psi, double eigenvalue_tol) {
        return fentropy::support_dimension(fentropy::rdm(psi, 1),
                                           eigenvalue_tol);
      },
      py::arg("psi"), py::arg("eigenvalue_tol") = 1e-10,
      "Rank of the one-body marginal: how many modes the state lives on.");

  m.def("von_neumann",
        py::overload_cast<const Eigen::MatrixXcd&>(&fentropy::von_neumann),
        py::arg("rho"), "Von Neumann entropy in nats.");
  m.def("relative_entropy", &fentropy::relative_entropy, py::arg("rho"),
        py::arg("sigma"),
        "Quantum relative entropy D(rho || sigma); +inf when the support of "
        "rho leaks outside the support of sigma.");
  m.def(
      "entropy_profile",
      [](const fentropy::WedgeState& psi) {
        return fentropy::entropy_profile(psi).values;
      },
      py::arg("psi"), "List [S_1, ..., S_N] of marginal entropies in nats.");

  m.def("entropy_gradient", &fentropy::entropy_gradient, py::arg("psi"),
        py::arg("k"),
        "Euclidean gradient of S(gamma_k) in the 2*C(d,N) real coefficient "
        "parameters: entry 2r is d/dRe c_r, entry 2r+1 is d/dIm c_r.");
  m.def("slater_proximity", &fentropy::slater_proximity, py::arg("psi"),
        "Distance of the gamma_1 spectrum from the Slater spectrum "
        "(1/N, ..., 1/N, 0, ..., 0).");
  m.def(
      "minimize_entropy",
      [](int d, int n_particles, int k, int restarts, int max_iters,
         double initial_step, double shrink, double grad_tol,
         std::uint64_t seed, bool keep_traces) {
        fentropy::OptimizationConfig config;
        config.d = d;
        config.n_particles = n_particles;
        config.k = k;
        config.restarts = restarts;
        config.max_iters = max_iters;
        config.initial_step = initial_step;
        config.shrink = shrink;
        config.grad_tol = grad_tol;
        config.seed = seed;
        config.keep_traces = keep_traces;
        return json_to_py(fentropy::minimize_entropy(config).to_json());
      },
      py::arg("d"), py::arg("n_particles"), py::arg("k"),
      py::arg("restarts") = 32, py::arg("max_iters") = 2000,
      py::arg("initial_step") = 0.1, py::arg("shrink") = 0.5,
      py::arg("grad_tol") = 1e-7, py::arg("seed") = 0,
      py::arg("keep_traces") = false,
      "Projected gradient descent over the unit sphere; returns the result "
      "document as a dict (best_state included).");

  m.def(
      "run_suite",
      [](int max_d, int max_N, int trials, std::uint64_t seed) {
        fentropy::VerifyConfig config;
        config.max_d = max_d;
        config.max_N = max_N;
        config.trials = trials;
        config.seed = seed;
        return json_to_py(fentropy::run_suite(config).to_json());
      },
      py::arg("max_d") = 8, py::arg("max_N") = 4, py::arg("trials") = 50,
      py::arg("seed") = 42,
      "Run every identity/inequality check over a (d, N) grid and return "
      "the report as a dict.");

  m.def("read_state_file", &fentropy::read_state_file, py::arg("path"));
  m.def("write_state_file", &fentropy::write_state_file, py::arg("psi"),
        py::arg("path"));
}
