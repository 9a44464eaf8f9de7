#include "fentropy/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "fentropy/linalg.hpp"
#include "fentropy/rng.hpp"
#include "json.hpp"

namespace fentropy {

namespace {

std::uint64_t wedge_dim(int d, int n_particles, const char* what) {
  if (n_particles < 1 || d < n_particles)
    throw std::invalid_argument(std::string(what) +
                                ": need 1 <= N <= d, got N = " +
                                std::to_string(n_particles) +
                                ", d = " + std::to_string(d));
  return binomial(static_cast<std::uint64_t>(d),
                  static_cast<std::uint64_t>(n_particles));
}

void check_dim(int d, int n_particles, const Eigen::VectorXcd& coeffs,
               const char* what) {
  const std::uint64_t dim = wedge_dim(d, n_particles, what);
  if (static_cast<std::uint64_t>(coeffs.size()) != dim)
    throw std::invalid_argument(
        std::string(what) + ": coefficient vector has length " +
        std::to_string(coeffs.size()) + ", expected C(" + std::to_string(d) +
        ", " + std::to_string(n_particles) + ") = " + std::to_string(dim));
}

// Parity of the permutation taking the sorted subset to perm.
int permutation_sign(const Subset& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

// target += weight * (embedded wedge basis vector of the subset), using the
// row-major index with the first factor most significant.
void accumulate_embedded_basis(Eigen::VectorXcd& target, int d,
                               const Subset& subset,
                               std::complex<double> weight) {
  const int n = static_cast<int>(subset.size());
  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  const double scale = 1.0 / std::sqrt(factorial);

  Subset perm = subset;
  do {
    std::uint64_t index = 0;
    for (int j = 0; j < n; ++j)
      index = index * static_cast<std::uint64_t>(d) +
              static_cast<std::uint64_t>(perm[j]);
    target(static_cast<Eigen::Index>(index)) +=
        weight * (scale * permutation_sign(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

WedgeState make_state(int d, int n_particles, Eigen::VectorXcd coeffs) {
  check_dim(d, n_particles, coeffs, "make_state");
  const double norm = coeffs.norm();
  if (std::abs(norm - 1.0) > tol::state_norm)
    throw std::invalid_argument("make_state: norm deviates from 1 by " +
                                std::to_string(std::abs(norm - 1.0)));
  return {d, n_particles, std::move(coeffs)};
}

WedgeState make_state_normalized(int d, int n_particles,
                                 Eigen::VectorXcd coeffs) {
  check_dim(d, n_particles, coeffs, "make_state_normalized");
  const double norm = coeffs.norm();
  if (norm < 1e-12)
    throw std::invalid_argument(
        "make_state_normalized: cannot normalize a near-zero vector");
  coeffs /= norm;
  return {d, n_particles, std::move(coeffs)};
}

WedgeState slater(int d, const Subset& occupied) {
  const int n = static_cast<int>(occupied.size());
  const std::uint64_t dim = wedge_dim(d, n, "slater");
  Eigen::VectorXcd coeffs =
      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  coeffs(static_cast<Eigen::Index>(subset_rank(occupied, d))) = 1.0;
  return {d, n, std::move(coeffs)};
}

WedgeState random_state(int d, int n_particles, std::uint64_t seed) {
  const std::uint64_t dim = wedge_dim(d, n_particles, "random_state");
  // A fresh engine stream per attempt; a Gaussian vector has negligible
  // probability of a degenerate norm, but the retry keeps the contract total.
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    std::mt19937_64 engine(rng::derive_seed(seed, attempt));
    Eigen::VectorXcd coeffs =
        rng::gaussian_vector(static_cast<Eigen::Index>(dim), engine);
    if (coeffs.norm() > 1e-6)
      return make_state_normalized(d, n_particles, std::move(coeffs));
  }
  throw std::runtime_error("random_state: degenerate draws for every attempt");
}

namespace detail {

Eigen::MatrixXcd coefficient_matrix(int d, int n_particles,
                                    const Eigen::VectorXcd& coeffs, int k) {
  check_dim(d, n_particles, coeffs, "rdm");
  if (k < 1 || k > n_particles)
    throw std::invalid_argument("rdm: k must lie in [1, N], got " +
                                std::to_string(k));
  const int n = n_particles;
  const Eigen::Index rows = static_cast<Eigen::Index>(binomial(
      static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(k)));
  const Eigen::Index cols = static_cast<Eigen::Index>(binomial(
      static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(n - k)));
  const double scale =
      1.0 / std::sqrt(static_cast<double>(binomial(
                static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k))));

  // Every disjoint pair (A, C) with |A| = k, |C| = N - k arises from exactly
  // one basis subset I = A u C, so M is filled by splitting each I once.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
  Subset a(static_cast<std::size_t>(k));
  Subset c(static_cast<std::size_t>(n - k));
  std::vector<int> pos(static_cast<std::size_t>(k));
  for (Eigen::Index r = 0; r < coeffs.size(); ++r) {
    const std::complex<double> coeff = coeffs(r);
    const Subset full = subset_unrank(static_cast<std::uint64_t>(r), d, n);
    // Walk the position combinations choosing which k elements of I go to A.
    for (int i = 0; i < k; ++i) pos[static_cast<std::size_t>(i)] = i;
    for (;;) {
      int inversions = 0;
      std::size_t ai = 0, ci = 0;
      for (int i = 0, p = 0; i < n; ++i) {
        if (p < k && pos[static_cast<std::size_t>(p)] == i) {
          a[ai++] = full[static_cast<std::size_t>(i)];
          // Elements of I before position i that were not taken into A sit to
          // the right of this element in the split order (A, C).
          inversions += i - p;
          ++p;
        } else {
          c[ci++] = full[static_cast<std::size_t>(i)];
        }
      }
      const double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
      m(static_cast<Eigen::Index>(subset_rank(a, d)),
        static_cast<Eigen::Index>(subset_rank(c, d))) = sign * scale * coeff;

      // Next combination of positions in lexicographic order.
      int i = k - 1;
      while (i >= 0 && pos[static_cast<std::size_t>(i)] == i + n - k) --i;
      if (i < 0) break;
      ++pos[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return m;
}

}  // namespace detail

Eigen::MatrixXcd rdm_matrix(int d, int n_particles,
                            const Eigen::VectorXcd& coeffs, int k) {
  const Eigen::MatrixXcd m =
      detail::coefficient_matrix(d, n_particles, coeffs, k);
  Eigen::MatrixXcd gamma = m * m.adjoint();
  // Exact Hermiticity; the gemm result is symmetric only to rounding.
  gamma = 0.5 * (gamma + gamma.adjoint()).eval();
  return gamma;
}

ReducedDensityMatrix rdm(const WedgeState& psi, int k) {
  Eigen::MatrixXcd gamma = rdm_matrix(psi.d, psi.n_particles, psi.coeffs, k);
  const double trace = gamma.trace().real();
  if (std::abs(trace - 1.0) > tol::rdm_trace)
    throw std::runtime_error("rdm: trace deviates from 1 by " +
                             std::to_string(std::abs(trace - 1.0)));
  return {psi.d, psi.n_particles, k, std::move(gamma)};
}

Eigen::VectorXcd embed_full(const WedgeState& psi, std::size_t cap) {
  const Eigen::Index dim =
      tensor_dimension(psi.d, psi.n_particles, cap, "embed_full");
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(dim);
  for (Eigen::Index r = 0; r < psi.coeffs.size(); ++r) {
    if (psi.coeffs(r) == 0.0) continue;
    const Subset subset =
        subset_unrank(static_cast<std::uint64_t>(r), psi.d, psi.n_particles);
    accumulate_embedded_basis(full, psi.d, subset, psi.coeffs(r));
  }
  return full;
}

Eigen::MatrixXcd antisymmetric_projector_full(int d, int m, std::size_t cap) {
  const std::uint64_t count = wedge_dim(d, m, "antisymmetric_projector_full");
  const Eigen::Index dim =
      tensor_dimension(d, m, cap, "antisymmetric_projector_full");
  Eigen::MatrixXcd projector = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXcd basis(dim);
  for (std::uint64_t r = 0; r < count; ++r) {
    basis.setZero();
    accumulate_embedded_basis(basis, d, subset_unrank(r, d, m), 1.0);
    projector.noalias() += basis * basis.adjoint();
  }
  return projector;
}

WedgeState apply_one_body_unitary(const WedgeState& psi,
                                  const Eigen::MatrixXcd& u) {
  if (u.rows() != psi.d || u.cols() != psi.d)
    throw std::invalid_argument("apply_one_body_unitary: u must be " +
                                std::to_string(psi.d) + " x " +
                                std::to_string(psi.d));
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  const double defect =
      (gram - Eigen::MatrixXcd::Identity(psi.d, psi.d)).cwiseAbs().maxCoeff();
  if (defect > tol::unitarity)
    throw std::invalid_argument(
        "apply_one_body_unitary: matrix is not unitary (defect " +
        std::to_string(defect) + ")");

  const int n = psi.n_particles;
  const Eigen::Index dim = psi.coeffs.size();
  std::vector<Subset> subsets(static_cast<std::size_t>(dim));
  for (Eigen::Index r = 0; r < dim; ++r)
    subsets[static_cast<std::size_t>(r)] =
        subset_unrank(static_cast<std::uint64_t>(r), psi.d, n);

  // c'[J] = sum_I det(u[J, I]) c[I]: the N-th compound matrix of u acting on
  // the coefficient vector.
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  Eigen::MatrixXcd block(n, n);
  for (Eigen::Index jr = 0; jr < dim; ++jr) {
    const Subset& j_rows = subsets[static_cast<std::size_t>(jr)];
    std::complex<double> sum = 0.0;
    for (Eigen::Index ir = 0; ir < dim; ++ir) {
      if (psi.coeffs(ir) == 0.0) continue;
      const Subset& i_cols = subsets[static_cast<std::size_t>(ir)];
      for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col)
          block(row, col) = u(j_rows[static_cast<std::size_t>(row)],
                              i_cols[static_cast<std::size_t>(col)]);
      sum += block.determinant() * psi.coeffs(ir);
    }
    out(jr) = sum;
  }
  const double norm = out.norm();
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::runtime_error(
        "apply_one_body_unitary: norm drifted to " + std::to_string(norm));
  out /= norm;
  return {psi.d, n, std::move(out)};
}

Eigen::MatrixXcd MaximallyMixed::as_matrix() const {
  const Eigen::Index n = static_cast<Eigen::Index>(dim);
  return Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(dim);
}

MaximallyMixed maximally_mixed(int d, int k) {
  return {d, k, wedge_dim(d, k, "maximally_mixed")};
}

int support_dimension(const ReducedDensityMatrix& gamma1,
                      double eigenvalue_tol) {
  if (gamma1.k != 1)
    throw std::invalid_argument(
        "support_dimension: expects a one-body reduced density matrix");
  const EighResult es = eigh(gamma1.matrix);
  int count = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i)
    if (es.eigenvalues(i) > eigenvalue_tol) ++count;
  return count;
}

WedgeState read_state_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("state JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("d") || !doc.contains("N") ||
      !doc.contains("coeffs"))
    throw std::invalid_argument(
        "state JSON: expected an object with keys d, N, coeffs");
  if (!doc["d"].is_number_integer() || !doc["N"].is_number_integer() ||
      !doc["coeffs"].is_array())
    throw std::invalid_argument("state JSON: malformed field types");
  const int d = doc["d"].get<int>();
  const int n = doc["N"].get<int>();
  const std::uint64_t dim = wedge_dim(d, n, "state JSON");
  const auto& entries = doc["coeffs"];
  if (entries.size() != dim)
    throw std::invalid_argument("state JSON: coeffs has " +
                                std::to_string(entries.size()) +
                                " entries, expected " + std::to_string(dim));
  Eigen::VectorXcd coeffs(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& pair = entries[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number())
      throw std::invalid_argument(
          "state JSON: every coefficient must be a [re, im] pair");
    coeffs(static_cast<Eigen::Index>(i)) = {pair[0].get<double>(),
                                            pair[1].get<double>()};
  }
  const double norm = coeffs.norm();
  if (std::abs(norm - 1.0) > 1e-6)
    throw std::invalid_argument("state JSON: norm deviates from 1 by " +
                                std::to_string(std::abs(norm - 1.0)));
  // Only rescale when the norm is actually off; writing and re-reading a
  // state must reproduce its coefficients bit for bit.
  if (std::abs(norm - 1.0) <= tol::state_norm)
    return {d, n, std::move(coeffs)};
  return make_state_normalized(d, n, std::move(coeffs));
}

WedgeState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file: " + path);
  return read_state_json(in);
}

nlohmann::ordered_json state_json(const WedgeState& psi) {
  nlohmann::ordered_json doc;
  doc["d"] = psi.d;
  doc["N"] = psi.n_particles;
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < psi.coeffs.size(); ++i)
    coeffs.push_back({psi.coeffs(i).real(), psi.coeffs(i).imag()});
  doc["coeffs"] = std::move(coeffs);
  return doc;
}

void write_state_json(const WedgeState& psi, std::ostream& out) {
  out << state_json(psi).dump(2) << '\n';
}

void write_state_file(const WedgeState& psi, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  write_state_json(psi, out);
}

}  // namespace fentropy
