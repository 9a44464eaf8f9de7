#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "fentropy/combinadics.hpp"
#include "fentropy/entropy.hpp"
#include "fentropy/fermion.hpp"
#include "fentropy/linalg.hpp"
#include "fentropy/optimize.hpp"
#include "fentropy/rng.hpp"
#include "fentropy/verify.hpp"
#include "json.hpp"

namespace {

// The only exit codes this tool emits: 0 success/convergence, 1 numerical
// violation or failed checks or non-convergence, 2 usage or config error,
// 3 conjecture counterexample candidate.
constexpr int kExitSuccess = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCounterexample = 3;

// Shortest decimal digits that round-trip a double exactly.
std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_output(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path);
  if (!out)
    throw std::invalid_argument("cannot open output file: " + out_path);
  out << body;
}

// The CLI speaks 1-based orbital labels; the library counts modes from 0.
std::vector<int> parse_orbitals(const std::string& csv, int d) {
  std::vector<int> orbitals;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int label = 0;
    try {
      label = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--slater: '" + item + "' is not an integer");
    }
    if (used != item.size())
      throw std::invalid_argument("--slater: '" + item + "' is not an integer");
    if (label < 1 || label > d)
      throw std::invalid_argument("--slater: label " + std::to_string(label) +
                                  " outside [1, " + std::to_string(d) + "]");
    orbitals.push_back(label - 1);
  }
  if (orbitals.empty())
    throw std::invalid_argument("--slater: empty orbital list");
  for (std::size_t i = 1; i < orbitals.size(); ++i)
    if (orbitals[i] <= orbitals[i - 1])
      throw std::invalid_argument(
          "--slater: labels must be strictly increasing");
  return orbitals;
}

struct ComputeArgs {
  int d = 0;
  int n = 0;  // 0 = take from the state source
  std::string slater_csv;
  std::string state_file;
  bool random = false;
  std::uint64_t seed = 0;
  bool spectra = false;
  bool bits = false;
  double support_tol = 1e-10;
  std::string out;
};

int run_compute(const ComputeArgs& args) {
  fentropy::WedgeState psi;
  nlohmann::ordered_json source;
  if (!args.slater_csv.empty()) {
    if (args.d < 1)
      throw std::invalid_argument("--slater requires --d");
    const std::vector<int> orbitals = parse_orbitals(args.slater_csv, args.d);
    if (args.n != 0 && args.n != static_cast<int>(orbitals.size()))
      throw std::invalid_argument(
          "--N disagrees with the --slater list length");
    psi = fentropy::slater(args.d, orbitals);
    source["kind"] = "slater";
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (int orbital : orbitals) labels.push_back(orbital + 1);
    source["orbitals"] = std::move(labels);
  } else if (!args.state_file.empty()) {
    psi = fentropy::read_state_file(args.state_file);
    if (args.d != 0 && args.d != psi.d)
      throw std::invalid_argument("--d disagrees with the state file");
    if (args.n != 0 && args.n != psi.n_particles)
      throw std::invalid_argument("--N disagrees with the state file");
    source["kind"] = "file";
    source["path"] = args.state_file;
  } else {
    if (args.d < 1 || args.n < 1)
      throw std::invalid_argument("--random requires --d and --N");
    psi = fentropy::random_state(args.d, args.n, args.seed);
    source["kind"] = "random";
    source["seed"] = args.seed;
  }

  const fentropy::EntropyProfile profile = fentropy::entropy_profile(psi);
  const int support =
      fentropy::support_dimension(fentropy::rdm(psi, 1), args.support_tol);
  // Entropies are converted for display; spectra stay probabilities.
  const double unit = args.bits ? std::log(2.0) : 1.0;

  nlohmann::ordered_json doc;
  doc["d"] = psi.d;
  doc["N"] = psi.n_particles;
  doc["source"] = std::move(source);
  doc["unit"] = args.bits ? "bits" : "nats";
  nlohmann::ordered_json values = nlohmann::ordered_json::array();
  for (int k = 1; k <= psi.n_particles; ++k)
    values.push_back(profile.s(k) / unit);
  doc["profile"] = std::move(values);
  doc["support_dimension"] = support;
  if (args.spectra) {
    nlohmann::ordered_json spectra;
    for (int k = 1; k <= psi.n_particles; ++k) {
      const fentropy::EighResult es =
          fentropy::eigh(fentropy::rdm(psi, k).matrix);
      nlohmann::ordered_json descending = nlohmann::ordered_json::array();
      for (Eigen::Index i = es.eigenvalues.size() - 1; i >= 0; --i)
        descending.push_back(es.eigenvalues(i));
      spectra[std::to_string(k)] = std::move(descending);
    }
    doc["spectra"] = std::move(spectra);
  }
  write_output(doc.dump(2) + "\n", args.out);
  return kExitSuccess;
}

struct VerifyArgs {
  int max_d = 8;
  int max_n = 4;
  int trials = 50;
  std::uint64_t seed = 42;
  double tol = 0.0;  // 0 = keep the per-kind defaults
  std::string out;
};

int run_verify(const VerifyArgs& args) {
  fentropy::VerifyConfig config;
  config.max_d = args.max_d;
  config.max_N = args.max_n;
  config.trials = args.trials;
  config.seed = args.seed;
  if (args.tol > 0.0) {
    config.tol_identity = args.tol;
    config.tol_inequality = args.tol;
  }
  const fentropy::VerificationReport report = fentropy::run_suite(config);
  write_output(report.to_json().dump(2) + "\n", args.out);
  return report.all_passed() ? kExitSuccess : kExitViolation;
}

struct MinimizeArgs {
  fentropy::OptimizationConfig config;
  std::string out;
};

int run_minimize(const MinimizeArgs& args) {
  const fentropy::OptimizationResult result =
      fentropy::minimize_entropy(args.config);
  write_output(result.to_json().dump(2) + "\n", args.out);
  // A sub-floor value outranks the convergence signal: the state has been
  // serialized above and the run must be flagged loudly.
  if (result.counterexample_candidate) return kExitCounterexample;
  return result.converged ? kExitSuccess : kExitViolation;
}

struct SweepArgs {
  int d_min = 4;
  int d_max = 8;
  int n_min = 3;
  int n_max = 4;
  int k = 2;
  int trials = 5;
  std::uint64_t seed = 0;
  std::uint64_t dim_cap = 100000;
  std::string out;
};

int run_sweep(const SweepArgs& args) {
  // Validate the whole grid first so a sweep never dies mid-file.
  for (int d = args.d_min; d <= args.d_max; ++d) {
    for (int n = args.n_min; n <= args.n_max; ++n) {
      if (n > d || args.k > n) continue;
      std::uint64_t dim = 0;
      try {
        dim = fentropy::binomial(static_cast<std::uint64_t>(d),
                                 static_cast<std::uint64_t>(n));
      } catch (const std::overflow_error&) {
        throw std::invalid_argument("sweep: C(d,N) overflows at d=" +
                                    std::to_string(d) + ", N=" +
                                    std::to_string(n));
      }
      if (dim > args.dim_cap)
        throw std::invalid_argument(
            "sweep: C(d,N) exceeds --dim-cap at d=" + std::to_string(d) +
            ", N=" + std::to_string(n));
    }
  }

  std::ostringstream csv;
  csv << "d,N,k,state,seed,S_1,S_k,coleman_rhs,coleman_slack,"
         "clr_rhs,clr_slack,kbound_rhs,kbound_slack\n";

  auto emit = [&](int d, int n, const char* state_kind,
                  const std::string& seed_cell,
                  const fentropy::EntropyProfile& profile) {
    const double s1 = profile.s(1);
    const double sk = profile.s(args.k);
    const double coleman_rhs = std::log(static_cast<double>(n));
    csv << d << ',' << n << ',' << args.k << ',' << state_kind << ','
        << seed_cell << ',' << format_double(s1) << ',' << format_double(sk)
        << ',' << format_double(coleman_rhs) << ','
        << format_double(s1 - coleman_rhs) << ',';
    if (n >= 2) {
      // Two-body vs one-body entropy gap bound, in terms of (d, N) only.
      const double clr_rhs = std::log(static_cast<double>(n - 1) /
                                      static_cast<double>(d - n + 2));
      csv << format_double(clr_rhs) << ','
          << format_double(profile.s(2) - s1 - clr_rhs) << ',';
    } else {
      csv << ",,";
    }
    if (args.k >= 2 && args.k <= n - 1) {
      // Chained k-body bound: S_1 plus the telescoped gap terms.
      double kbound_rhs = s1;
      for (int j = 2; j <= args.k; ++j)
        kbound_rhs += std::log(static_cast<double>(n - j + 1) /
                               static_cast<double>(d - n + j));
      csv << format_double(kbound_rhs) << ','
          << format_double(sk - kbound_rhs) << '\n';
    } else {
      csv << ",\n";
    }
  };

  for (int d = args.d_min; d <= args.d_max; ++d) {
    for (int n = args.n_min; n <= args.n_max; ++n) {
      if (n > d || args.k > n) continue;
      std::vector<int> occupied(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) occupied[static_cast<std::size_t>(i)] = i;
      emit(d, n, "slater", "",
           fentropy::entropy_profile(fentropy::slater(d, occupied)));
      const std::uint64_t pair_seed = fentropy::rng::derive_seed(
          args.seed, static_cast<std::uint64_t>(d),
          static_cast<std::uint64_t>(n));
      for (int t = 0; t < args.trials; ++t) {
        const std::uint64_t row_seed =
            fentropy::rng::derive_seed(pair_seed, static_cast<std::uint64_t>(t));
        emit(d, n, "random", std::to_string(row_seed),
             fentropy::entropy_profile(fentropy::random_state(d, n, row_seed)));
      }
    }
  }
  write_output(csv.str(), args.out);
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "k-body reduced density matrices and entropies of fermionic pure "
      "states"};
  app.require_subcommand(1);

  ComputeArgs compute_args;
  std::string compute_format = "json";
  CLI::App* compute = app.add_subcommand(
      "compute", "entropy profile, support dimension and optional spectra "
                 "of a single state");
  compute->add_option("--d", compute_args.d, "number of one-particle modes")
      ->check(CLI::PositiveNumber);
  compute->add_option("--N", compute_args.n, "number of particles")
      ->check(CLI::PositiveNumber);
  CLI::Option_group* source = compute->add_option_group(
      "state source", "exactly one of --slater, --state-file, --random");
  source->add_option("--slater", compute_args.slater_csv,
                     "comma-separated 1-based orbital labels");
  source->add_option("--state-file", compute_args.state_file,
                     "path to a state JSON file");
  source->add_flag("--random", compute_args.random,
                   "draw a seeded random state");
  source->require_option(1);
  compute->add_option("--seed", compute_args.seed, "seed for --random");
  compute->add_flag("--spectra", compute_args.spectra,
                    "include the descending spectrum of every gamma_k");
  compute->add_flag("--bits", compute_args.bits,
                    "display entropies in bits instead of nats");
  compute->add_option("--tol", compute_args.support_tol,
                      "eigenvalue threshold for the support dimension")
      ->check(CLI::PositiveNumber);
  compute->add_option("--out", compute_args.out,
                      "write the report here instead of stdout");
  compute->add_option("--format", compute_format, "output format")
      ->check(CLI::IsMember({"json"}));

  VerifyArgs verify_args;
  std::string verify_format = "json";
  CLI::App* verify = app.add_subcommand(
      "verify", "run the full identity/inequality check suite");
  verify->add_option("--max-d", verify_args.max_d, "largest mode count")
      ->check(CLI::PositiveNumber);
  verify->add_option("--max-N", verify_args.max_n, "largest particle count")
      ->check(CLI::PositiveNumber);
  verify->add_option("--trials", verify_args.trials,
                     "random states per (d, N) pair")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", verify_args.seed, "master seed");
  verify->add_option("--tol", verify_args.tol,
                     "override both identity and inequality tolerances")
      ->check(CLI::PositiveNumber);
  verify->add_option("--out", verify_args.out,
                     "write the report here instead of stdout");
  verify->add_option("--format", verify_format, "output format")
      ->check(CLI::IsMember({"json"}));

  MinimizeArgs minimize_args;
  std::string minimize_format = "json";
  CLI::App* minimize = app.add_subcommand(
      "minimize", "search for the smallest k-body entropy on the unit sphere");
  minimize->add_option("--d", minimize_args.config.d,
                       "number of one-particle modes")
      ->required()
      ->check(CLI::PositiveNumber);
  minimize->add_option("--N", minimize_args.config.n_particles,
                       "number of particles")
      ->required()
      ->check(CLI::PositiveNumber);
  minimize->add_option("--k", minimize_args.config.k, "marginal order")
      ->required()
      ->check(CLI::PositiveNumber);
  minimize->add_option("--restarts", minimize_args.config.restarts,
                       "independent random restarts")
      ->check(CLI::PositiveNumber);
  minimize->add_option("--iters", minimize_args.config.max_iters,
                       "iteration budget per restart")
      ->check(CLI::PositiveNumber);
  minimize->add_option("--step", minimize_args.config.initial_step,
                       "initial line-search step")
      ->check(CLI::PositiveNumber);
  minimize->add_option("--shrink", minimize_args.config.shrink,
                       "backtracking shrink factor in (0, 1)");
  minimize->add_option("--grad-tol", minimize_args.config.grad_tol,
                       "projected-gradient stopping threshold")
      ->check(CLI::PositiveNumber);
  minimize->add_option("--seed", minimize_args.config.seed, "master seed");
  minimize->add_flag("--traces", minimize_args.config.keep_traces,
                     "record per-restart (iteration, value, gradient norm)");
  minimize->add_option("--out", minimize_args.out,
                       "write the result here instead of stdout");
  minimize->add_option("--format", minimize_format, "output format")
      ->check(CLI::IsMember({"json"}));

  SweepArgs sweep_args;
  std::string sweep_format = "csv";
  CLI::App* sweep = app.add_subcommand(
      "sweep", "tabulate entropy bounds over a (d, N) grid as CSV");
  sweep->add_option("--d-min", sweep_args.d_min, "smallest mode count")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--d-max", sweep_args.d_max, "largest mode count")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--N-min", sweep_args.n_min, "smallest particle count")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--N-max", sweep_args.n_max, "largest particle count")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--k", sweep_args.k, "marginal order for the S_k columns")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--trials", sweep_args.trials,
                    "random states per (d, N) pair")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--seed", sweep_args.seed, "master seed");
  sweep->add_option("--dim-cap", sweep_args.dim_cap,
                    "largest admissible C(d,N)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_args.out,
                    "write the CSV here instead of stdout");
  sweep->add_option("--format", sweep_format, "output format")
      ->check(CLI::IsMember({"csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Keep the contract of exactly four exit codes: --help stays 0, every
    // other parse problem is a usage error.
    return app.exit(e) == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (compute->parsed()) return run_compute(compute_args);
    if (verify->parsed()) return run_verify(verify_args);
    if (minimize->parsed()) return run_minimize(minimize_args);
    return run_sweep(sweep_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
}
