#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fentropy/entropy.hpp"
#include "fentropy/fermion.hpp"
#include "fentropy/tolerances.hpp"
#include "json.hpp"

// Executable checks for the entropy identities and inequalities satisfied by
// fermionic reduced density matrices, with measured slacks collected into a
// serializable report.
//
// Claim ids are stable strings:
//   eq:symm     S_k = S_{N-k}
//   eq:main11   S_k <= S_{k+1} on the proven range k <= floor((N-1)/2)
//   eq:main12   S_k >= (S_{k-1} + S_{k+1}) / 2 for 2 <= k <= N-1
//   coleman     S_1 >= ln N
//   eq:main21   S_2 >= S_1 + ln((N-1)/(d-N+2)), plus the variant with d
//               replaced by the support dimension of gamma_1
//   eq:kbound   S_k >= S_1 + sum_{j=2}^{k} ln((N-j+1)/(d-N+j))
//   lem:key     S_k + D(gamma_k || pi_k) = ln C(d,k)
//   lem:pi      partial trace of the uniform antisymmetric state stays uniform
//   oracle:rdm  wedge-basis RDM spectrum equals the full-tensor partial trace
namespace fentropy {

struct CheckResult {
  std::string claim_id;
  bool passed = false;
  // Boundary monotonicity entries outside the proven range are logged but
  // never failed: informational results always carry passed = true and
  // tolerance 0.
  bool informational = false;
  // Identity claims store the absolute residual (passed when slack <=
  // tolerance); inequality claims store the signed LHS - RHS margin (passed
  // when slack >= -tolerance).
  double slack = 0.0;
  double tolerance = 0.0;
  nlohmann::ordered_json context;
};

struct VerifyConfig {
  int max_d = 8;
  int max_N = 4;
  int trials = 50;
  std::uint64_t seed = 42;
  double tol_identity = tol::identity_check;
  double tol_inequality = tol::inequality_check;
  std::size_t oracle_cap = tol::default_oracle_cap;
};

struct VerificationReport {
  VerifyConfig config;
  std::vector<CheckResult> results;

  int total() const { return static_cast<int>(results.size()); }
  int failed() const;
  int passed() const { return total() - failed(); }
  // True when every non-informational result passed.
  bool all_passed() const { return failed() == 0; }

  nlohmann::ordered_json to_json() const;
};

// Reflection symmetry of the profile; one result per k in 1..N-1.
std::vector<CheckResult> check_symmetry(const EntropyProfile& profile,
                                        double tol = tol::identity_check);
std::vector<CheckResult> check_symmetry(const WedgeState& psi,
                                        double tol = tol::identity_check);

// Monotonicity S_k <= S_{k+1}. Pass/fail results cover the proven range
// 1 <= k <= floor((N-1)/2); the boundary pairs up to k = ceil(N/2) are
// appended as informational entries (their slack is negative for generic
// states once k crosses the symmetry point of the profile).
std::vector<CheckResult> check_monotonicity(const EntropyProfile& profile,
                                            double tol = tol::inequality_check);
std::vector<CheckResult> check_monotonicity(const WedgeState& psi,
                                            double tol = tol::inequality_check);

// Concavity of the profile; one result per k in 2..N-1 (empty for N < 3).
std::vector<CheckResult> check_concavity(const EntropyProfile& profile,
                                         double tol = tol::inequality_check);
std::vector<CheckResult> check_concavity(const WedgeState& psi,
                                         double tol = tol::inequality_check);

// S_1 >= ln N. The context records an equality flag (|slack| <= tolerance),
// which marks the states with Slater-like one-body spectra.
CheckResult check_coleman(const EntropyProfile& profile,
                          double tol = tol::inequality_check);
CheckResult check_coleman(const WedgeState& psi,
                          double tol = tol::inequality_check);

// Two results: the bound with the ambient mode count d and the sharper
// variant with d replaced by the number of modes the state occupies.
// Requires N >= 2.
std::vector<CheckResult> check_clr_bound(const WedgeState& psi,
                                         const EntropyProfile& profile,
                                         double tol = tol::inequality_check);
std::vector<CheckResult> check_clr_bound(const WedgeState& psi,
                                         double tol = tol::inequality_check);

// Telescoped lower bound on S_k for 2 <= k <= N-1; k = 2 coincides with the
// first result of check_clr_bound.
CheckResult check_k_bound(const EntropyProfile& profile, int k,
                          double tol = tol::inequality_check);
CheckResult check_k_bound(const WedgeState& psi, int k,
                          double tol = tol::inequality_check);

// S_k + D(gamma_k || pi_k) = ln C(d,k) for 1 <= k <= N, with pi_k the
// maximally mixed state on the k-fermion wedge space.
CheckResult check_lemma_key(const WedgeState& psi, int k,
                            double tol = tol::identity_check);

// Tracing l factors out of the uniform antisymmetric state on m factors
// yields the uniform antisymmetric state on m - l factors, verified entrywise
// in the full tensor space. Requires 1 <= l < m <= d and d^m within cap.
CheckResult check_lemma_pi(int d, int m, int l, double tol = 1e-10,
                           std::size_t cap = tol::default_oracle_cap);

// Entrywise comparison of the descending spectrum of rdm(psi, k) against the
// spectrum of the literal partial trace of the embedded pure state.
CheckResult check_rdm_oracle(const WedgeState& psi, int k, double tol = 1e-9,
                             std::size_t cap = tol::default_oracle_cap);

// Runs every check over Slater states, one-body rotations of them, and
// random states for all (d, N) with 1 <= N <= min(d, max_N), d <= max_d.
// Deterministic: the report body is a pure function of the config.
VerificationReport run_suite(const VerifyConfig& config = {});

}  // namespace fentropy
