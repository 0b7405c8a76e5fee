// Command-line surface for state generation, entropy scans, reconstruction
// round-trips and invariant verification. Exit codes: 0 success,
// 1 validation failure, 2 algorithmic error, 3 I/O error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "ctxent/entropy.hpp"
#include "ctxent/errors.hpp"
#include "ctxent/gleason.hpp"
#include "ctxent/quantum.hpp"
#include "ctxent/reconstruct.hpp"
#include "ctxent/rng.hpp"
#include "ctxent/serialization.hpp"

namespace {

using namespace ctxent;

/// Content-level problem in an input file or flag combination; exit 1.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Wraps the input-loading phase: content errors become validation
/// failures (exit 1) while IoError passes through (exit 3).
template <typename F>
auto load_phase(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const IoError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationFailure(e.what());
  } catch (const Error& e) {
    throw ValidationFailure(e.what());
  }
}

struct GenArgs {
  int dim = 0;
  int rank = 0;  // 0 means full rank
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  const int rank = a.rank == 0 ? a.dim : a.rank;
  if (a.dim < 1 || rank < 1 || rank > a.dim)
    throw ValidationFailure("need 1 <= rank <= dim");
  const DensityMatrix rho = random_density_matrix(a.dim, rank, a.seed);
  save_json(a.out, state_to_json(rho));
  return 0;
}

struct EntropyArgs {
  std::string state_path;
  std::string context_path;
};

int cmd_entropy(const EntropyArgs& a) {
  const DensityMatrix rho = load_phase([&] { return load_state(a.state_path); });
  const Context ctx = load_phase([&] { return load_context(a.context_path); });
  if (rho.dim() != ctx.dim())
    throw ValidationFailure("state and context dimensions differ");
  std::cout << fmt17(contextual_entropy(rho, ctx)) << '\n';
  return 0;
}

struct ScanArgs {
  std::string state_path;
  int samples = 100;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_scan(const ScanArgs& a) {
  if (a.samples < 1) throw ValidationFailure("need at least one sample");
  const DensityMatrix rho = load_phase([&] { return load_state(a.state_path); });

  std::ofstream csv(a.out);
  if (!csv) throw IoError("cannot write " + a.out);
  csv << "seed_index,entropy\n";
  double min_entropy = std::numeric_limits<double>::infinity();
  for (int k = 0; k < a.samples; ++k) {
    const Context ctx =
        random_maximal_context(rho.dim(), derive_seed(a.seed, k));
    const double e = contextual_entropy(rho, ctx);
    min_entropy = std::min(min_entropy, e);
    csv << k << ',' << fmt17(e) << '\n';
  }
  csv << "# min=" << fmt17(min_entropy)
      << " von_neumann=" << fmt17(von_neumann(rho)) << '\n';
  if (!csv) throw IoError("write failed on " + a.out);
  return 0;
}

struct ReconstructArgs {
  std::string state_path;
  std::string proposer = "spectral";
  double theta = ReconstructionConfig{}.theta;
  double tol = 0.0;  // 0 keeps defaults
  std::uint64_t seed = 0;
  bool qubit = false;
  std::string out;
};

int cmd_reconstruct(const ReconstructArgs& a) {
  const DensityMatrix rho = load_phase([&] { return load_state(a.state_path); });
  if (a.proposer != "spectral" && a.proposer != "search")
    throw ValidationFailure("proposer must be spectral or search");

  ReconstructionConfig cfg;
  cfg.theta = a.theta;
  cfg.seed = a.seed;
  if (a.tol > 0.0) {
    cfg.value_tol = a.tol;
    cfg.entropy_tol = a.tol;
  }
  const Proposer proposer =
      a.proposer == "spectral" ? Proposer::spectral : Proposer::search;

  const EntropyOracle oracle = oracle_from_state(rho);
  const ReconstructionReport report =
      (rho.dim() == 2 && a.qubit) ? reconstruct_qubit(oracle, cfg, proposer)
                                  : reconstruct(oracle, cfg, proposer);

  save_json(a.out, report_to_json(report));
  std::cout << "branch=" << to_string(report.branch)
            << " queries=" << report.query_count;
  if (report.residual) std::cout << " residual=" << fmt17(*report.residual);
  std::cout << '\n';
  return 0;
}

struct VerifyArgs {
  int dim = 3;
  int trials = 100;
  std::uint64_t seed = 0;
};

double shannon_raw(const std::vector<double>& w) {
  double h = 0.0;
  for (double x : w)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

int cmd_verify(const VerifyArgs& a) {
  if (a.dim < 2 || a.trials < 1)
    throw ValidationFailure("need dim >= 2 and trials >= 1");
  const int n = a.dim;
  bool all_pass = true;

  // Contextual entropy decreases under coarse-graining and satisfies the
  // Shannon recursion identity.
  int mono_pass = 0;
  for (int t = 0; t < a.trials; ++t) {
    const std::uint64_t s = derive_seed(a.seed, 4 * t);
    const DensityMatrix rho = random_density_matrix(n, n, derive_seed(s, 0));
    const Context ctx = random_maximal_context(n, derive_seed(s, 1));
    const auto partition = random_partition(ctx.size(), derive_seed(s, 2));
    const Context coarse = coarsen(ctx, partition);
    const double fine_e = contextual_entropy(rho, ctx);
    const double coarse_e = contextual_entropy(rho, coarse);

    const auto q = born(rho, ctx).weights();
    double conditional = 0.0;
    for (std::size_t b = 0; b < partition.size(); ++b) {
      double p = 0.0;
      for (std::size_t j : partition[b]) p += q[j];
      if (p <= 0.0) continue;
      std::vector<double> cond;
      for (std::size_t j : partition[b]) cond.push_back(q[j] / p);
      conditional += p * shannon_raw(cond);
    }
    const bool ok = coarse_e <= fine_e + 1e-10 &&
                    std::abs(fine_e - coarse_e - conditional) <= 1e-10;
    mono_pass += ok;
  }

  // Von Neumann entropy minorizes sampled maximal-context entropies and is
  // attained on the eigencontext.
  int min_pass = 0;
  for (int t = 0; t < a.trials; ++t) {
    const std::uint64_t s = derive_seed(a.seed, 4 * t + 1);
    const DensityMatrix rho = random_density_matrix(n, n, derive_seed(s, 0));
    const double vn = von_neumann(rho);
    bool ok = std::abs(contextual_entropy(rho, eigencontext(rho)) - vn) <= 1e-10;
    for (int k = 0; ok && k < 100; ++k) {
      const Context ctx = random_maximal_context(n, derive_seed(s, 10 + k));
      ok = contextual_entropy(rho, ctx) >= vn - 1e-9;
    }
    min_pass += ok;
  }

  // Spectrum majorizes the rotated diagonal.
  int schur_pass = 0;
  for (int t = 0; t < a.trials; ++t) {
    const std::uint64_t s = derive_seed(a.seed, 4 * t + 2);
    const DensityMatrix rho = random_density_matrix(n, n, derive_seed(s, 0));
    const ComplexMatrix u = haar_like_unitary(n, derive_seed(s, 1));
    const ComplexMatrix rotated = u * rho.matrix() * u.adjoint();
    const Eigensystem sys = hermitian_eigensystem(rho.matrix());
    std::vector<double> spectrum(sys.eigenvalues.data(),
                                 sys.eigenvalues.data() + n);
    std::vector<double> diagonal;
    for (int i = 0; i < n; ++i) diagonal.push_back(rotated(i, i).real());
    schur_pass += majorizes(spectrum, diagonal);
  }

  // State-backed measures are additive on orthogonal projector pairs.
  int add_pass = 0;
  for (int t = 0; t < a.trials; ++t) {
    const std::uint64_t s = derive_seed(a.seed, 4 * t + 3);
    const DensityMatrix rho = random_density_matrix(n, n, derive_seed(s, 0));
    const auto report = check_measure(measure_from_state(rho), 4, s);
    add_pass += report.passed(1e-10);
  }

  const auto line = [&](const char* name, int passed) {
    std::cout << name << ": " << passed << "/" << a.trials << " passed\n";
    all_pass = all_pass && passed == a.trials;
  };
  line("monotonicity+recursion", mono_pass);
  line("minimality", min_pass);
  line("schur-horn", schur_pass);
  line("measure-additivity", add_pass);
  if (!all_pass) raise(Errc::InvalidState, "invariant suite failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contextual entropy of quantum states: entropy scans and "
               "density-matrix reconstruction from entropy queries"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a seeded random state");
  gen_cmd->add_option("--dim", gen.dim, "Hilbert space dimension")->required();
  gen_cmd->add_option("--rank", gen.rank, "State rank (default: dim)");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("-o,--out", gen.out, "Output state file")->required();

  EntropyArgs ent;
  auto* ent_cmd =
      app.add_subcommand("entropy", "Print the contextual entropy of a "
                                    "state in a context");
  ent_cmd->add_option("--state", ent.state_path, "State file")->required();
  ent_cmd->add_option("--context", ent.context_path, "Context file")->required();

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand(
      "scan", "Sample random maximal contexts and write entropies as CSV");
  scan_cmd->add_option("--state", scan.state_path, "State file")->required();
  scan_cmd->add_option("--samples", scan.samples, "Context count");
  scan_cmd->add_option("--seed", scan.seed, "RNG seed");
  scan_cmd->add_option("-o,--out", scan.out, "Output CSV")->required();

  ReconstructArgs rec;
  auto* rec_cmd = app.add_subcommand(
      "reconstruct", "Recover the state from its entropy oracle");
  rec_cmd->add_option("--state", rec.state_path, "State file")->required();
  rec_cmd->add_option("--proposer", rec.proposer, "spectral|search");
  rec_cmd->add_option("--theta", rec.theta, "Fixing-unitary angle");
  rec_cmd->add_option("--tol", rec.tol, "Override value/entropy tolerance");
  rec_cmd->add_option("--seed", rec.seed, "RNG seed");
  rec_cmd->add_flag("--qubit", rec.qubit, "Allow dim-2 input (two candidates)");
  rec_cmd->add_option("-o,--out", rec.out, "Output report file")->required();

  VerifyArgs ver;
  auto* ver_cmd =
      app.add_subcommand("verify", "Run the invariant suites and print "
                                   "pass/fail counts");
  ver_cmd->add_option("--dim", ver.dim, "Hilbert space dimension");
  ver_cmd->add_option("--trials", ver.trials, "Trials per suite");
  ver_cmd->add_option("--seed", ver.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*ent_cmd) return cmd_entropy(ent);
    if (*scan_cmd) return cmd_scan(scan);
    if (*rec_cmd) return cmd_reconstruct(rec);
    if (*ver_cmd) return cmd_verify(ver);
  } catch (const ValidationFailure& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
