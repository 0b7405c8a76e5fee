#include "ctxent/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ctxent/errors.hpp"
#include "ctxent/rng.hpp"

namespace ctxent {

std::string to_string(Branch b) {
  switch (b) {
    case Branch::pure: return "pure";
    case Branch::mixed_a: return "mixed_a";
    case Branch::mixed_b1: return "mixed_b1";
    case Branch::mixed_b2: return "mixed_b2";
    case Branch::qubit_ambiguous: return "qubit_ambiguous";
  }
  return "unknown";
}

namespace {

void validate_config(const ReconstructionConfig& cfg) {
  if (cfg.value_tol <= 0.0 || cfg.entropy_tol <= 0.0)
    raise(Errc::OutOfRange, "tolerances must be positive");
  if (!(cfg.theta > 0.0 && cfg.theta < 3.141592653589793))
    raise(Errc::OutOfRange, "theta must lie in (0, pi)");
  if (cfg.max_retries < 0 || cfg.search_restarts < 1)
    raise(Errc::OutOfRange, "retry/restart counts");
}

/// Orthonormal basis matrix whose column i spans the range of the i-th
/// rank-1 projector. Column phases are arbitrary.
ComplexMatrix basis_from_context(const Context& c) {
  const int n = c.dim();
  ComplexMatrix basis(n, n);
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix& p = c[static_cast<std::size_t>(i)].matrix();
    Eigen::Index jmax = 0;
    p.colwise().norm().maxCoeff(&jmax);
    basis.col(i) = p.col(jmax).normalized();
  }
  return basis;
}

Context context_from_basis(const ComplexMatrix& basis) {
  std::vector<Projector> ps;
  ps.reserve(static_cast<std::size_t>(basis.cols()));
  for (Eigen::Index i = 0; i < basis.cols(); ++i) {
    const ComplexVector v = basis.col(i);
    ps.emplace_back(ComplexMatrix(v * v.adjoint()));
  }
  return Context(std::move(ps));
}

/// Identity except for a rotation in the (i, j) plane; kind 0 is the real
/// rotation, kind 1 its imaginary counterpart.
ComplexMatrix plane_rotation(int n, int i, int j, int kind, double angle) {
  ComplexMatrix r = ComplexMatrix::Identity(n, n);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  if (kind == 0) {
    r(i, i) = c; r(i, j) = s;
    r(j, i) = -s; r(j, j) = c;
  } else {
    r(i, i) = c; r(i, j) = Complex(0.0, s);
    r(j, i) = Complex(0.0, s); r(j, j) = c;
  }
  return r;
}

/// Golden-section line minimization, returning the best sampled point.
template <typename F>
std::pair<double, double> golden_min(F&& f, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best_x = f1 < f2 ? x1 : x2;
  double best_f = std::min(f1, f2);
  for (int it = 0; it < 40 && b - a > 1e-7; ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
    if (f1 < best_f) { best_f = f1; best_x = x1; }
    if (f2 < best_f) { best_f = f2; best_x = x2; }
  }
  return {best_x, best_f};
}

double perturbed_theta(double theta, int attempt) {
  if (attempt == 0) return theta;
  double t = std::fmod(theta + 0.211 * attempt, 3.0);
  return t < 0.05 ? t + 0.11 : t;
}

template <typename F>
auto run_step(const char* step, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(step) + ": " + e.what());
  }
}

}  // namespace

std::pair<Context, double> minimize_over_maximal_contexts(
    const EntropyOracle& oracle, Proposer proposer,
    const ReconstructionConfig& cfg) {
  validate_config(cfg);
  const int n = oracle.dim();
  if (n < 2) raise(Errc::OutOfRange, "oracle dimension must be at least 2");

  if (proposer == Proposer::spectral) {
    const DensityMatrix* hidden = oracle.hidden_state();
    if (hidden == nullptr)
      raise(Errc::ProposerUnavailable,
            "spectral proposer needs a state-backed oracle");
    Context ctx = eigencontext(*hidden);
    const double value = oracle.query(ctx);
    return {std::move(ctx), value};
  }

  // Oracle-only search: random restarts, then coordinate descent over
  // two-plane rotation angles of the candidate basis.
  double best_value = std::numeric_limits<double>::infinity();
  ComplexMatrix best_basis;
  for (int restart = 0; restart < cfg.search_restarts; ++restart) {
    ComplexMatrix basis = haar_like_unitary(
        n, derive_seed(cfg.seed, 0xc0deull + static_cast<std::uint64_t>(restart)));
    double value = oracle.query(context_from_basis(basis));
    for (int sweep = 0; sweep < 40; ++sweep) {
      const double before = value;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          for (int kind = 0; kind < 2; ++kind) {
            auto line = [&](double angle) {
              return oracle.query(context_from_basis(
                  basis * plane_rotation(n, i, j, kind, angle)));
            };
            const auto [angle, fval] = golden_min(line, -0.85, 0.85);
            if (fval < value - 1e-15) {
              basis = basis * plane_rotation(n, i, j, kind, angle);
              value = fval;
            }
          }
        }
      }
      if (before - value < 1e-13) break;
    }
    if (value < best_value) {
      best_value = value;
      best_basis = basis;
    }
  }
  return {context_from_basis(best_basis), best_value};
}

ComplexMatrix fixing_unitary(const Context& c, std::size_t i,
                             const ReconstructionConfig& cfg) {
  validate_config(cfg);
  const int n = c.dim();
  if (n < 3)
    raise(Errc::DimensionTooSmall,
          "fixing unitaries exist only for dim >= 3");
  if (!c.is_maximal() || i >= c.size())
    raise(Errc::OutOfRange, "fixing_unitary needs a maximal context index");

  const ComplexMatrix basis = basis_from_context(c);
  const int m = n - 1;
  // All-ones off-diagonal generator on the orthogonal complement of P_i.
  ComplexMatrix generator = ComplexMatrix::Ones(m, m);
  generator.diagonal().setZero();

  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    const double theta = perturbed_theta(cfg.theta, attempt);
    const ComplexMatrix w = unitary_exp(generator, theta);
    ComplexMatrix block = ComplexMatrix::Identity(n, n);
    std::vector<int> complement;
    complement.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < n; ++j)
      if (static_cast<std::size_t>(j) != i) complement.push_back(j);
    for (int r = 0; r < m; ++r)
      for (int s = 0; s < m; ++s)
        block(complement[static_cast<std::size_t>(r)],
              complement[static_cast<std::size_t>(s)]) = w(r, s);
    ComplexMatrix u = basis * block * basis.adjoint();

    // Post-hoc genericity check: P_i held fixed, every other projector
    // rotated clear of the whole context.
    if (max_abs(u * c[i].matrix() * u.adjoint() - c[i].matrix()) > 1e-10)
      continue;
    bool generic = true;
    for (std::size_t j = 0; j < c.size() && generic; ++j) {
      if (j == i) continue;
      const ComplexMatrix rotated = u * c[j].matrix() * u.adjoint();
      for (std::size_t k = 0; k < c.size(); ++k) {
        const double overlap = (rotated * c[k].matrix()).trace().real();
        if (overlap > 1.0 - 10.0 * cfg.value_tol) {
          generic = false;
          break;
        }
      }
    }
    if (generic) return u;
  }
  raise(Errc::RetriesExhausted,
        "no generic fixing unitary after " +
            std::to_string(cfg.max_retries + 1) + " theta draws");
}

Projector identify_pure(const EntropyOracle& oracle, const Context& c_rho,
                        const ReconstructionConfig& cfg) {
  validate_config(cfg);
  const std::size_t n = c_rho.size();
  if (oracle.dim() < 3)
    raise(Errc::DimensionTooSmall, "pure identification needs dim >= 3");
  if (!c_rho.is_maximal())
    raise(Errc::OutOfRange, "identify_pure needs a maximal context");

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix u = fixing_unitary(c_rho, i, cfg);
    values[i] = oracle.query(rotate_context(c_rho, u));
  }

  std::size_t imin = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (values[i] < values[imin]) imin = i;
  double runner_up = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    if (i != imin) runner_up = std::min(runner_up, values[i]);

  if (values[imin] > cfg.entropy_tol)
    raise(Errc::NoZeroContext,
          "no rotated context has near-zero entropy (min " +
              std::to_string(values[imin]) + ")");
  if (runner_up <= cfg.entropy_tol)
    raise(Errc::AmbiguousZero,
          "two rotated contexts below the purity threshold");
  return c_rho[imin];
}

SolutionTable eigenvalue_candidates(const EntropyOracle& oracle,
                                    const Context& c_rho) {
  if (!c_rho.is_maximal())
    raise(Errc::OutOfRange, "eigenvalue_candidates needs a maximal context");
  const int n = c_rho.dim();
  const ComplexMatrix identity = ComplexMatrix::Identity(n, n);

  SolutionTable table;
  table.top.reserve(static_cast<std::size_t>(n));
  table.bottom.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < c_rho.size(); ++i) {
    const ComplexMatrix& p = c_rho[i].matrix();
    const Context two_outcome =
        make_context({p, ComplexMatrix(identity - p)});
    const double c = invert_binary_entropy(oracle.query(two_outcome));
    table.top.push_back(c);
    table.bottom.push_back(1.0 - c);
    table.top_row_sum += c;
  }
  return table;
}

Assignment select_assignment(const SolutionTable& table,
                             const ReconstructionConfig& cfg) {
  validate_config(cfg);
  const std::size_t n = table.top.size();
  if (n == 0 || table.bottom.size() != n)
    raise(Errc::InvalidTable, "malformed solution table");
  const double sum_tol = static_cast<double>(n) * cfg.value_tol;

  // Case (a): the top row already sums to 1.
  if (std::abs(table.top_row_sum - 1.0) <= sum_tol)
    return UniqueAssignment{table.top};

  // Case (b): exactly one bottom-row entry gets picked; the flipped column
  // must hold c = S/2.
  const double c_star = 0.5 * table.top_row_sum;
  std::vector<std::size_t> matches;
  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(table.top[j] - c_star) <= cfg.value_tol) matches.push_back(j);

  if (matches.size() == 1) {
    UniqueAssignment unique{table.top};
    unique.lambdas[matches.front()] = table.bottom[matches.front()];
    return unique;
  }
  if (matches.size() == 2) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == matches[0] || j == matches[1]) continue;
      if (std::abs(table.top[j]) > cfg.value_tol)
        raise(Errc::InvalidTable,
              "two S/2 matches but a nonzero entry elsewhere; not the "
              "contextual entropy of any state");
    }
    return AmbiguousPair{matches[0], matches[1], c_star};
  }
  raise(Errc::InvalidTable,
        std::to_string(matches.size()) +
            " columns match S/2; not the contextual entropy of any state");
}

std::vector<double> disambiguate_b2(const EntropyOracle& oracle,
                                    const Context& c_rho,
                                    const AmbiguousPair& pair,
                                    const ReconstructionConfig& cfg) {
  validate_config(cfg);
  const int n = oracle.dim();
  if (n < 3)
    raise(Errc::DimensionTooSmall, "(b2) disambiguation needs dim >= 3");
  const ComplexMatrix identity = ComplexMatrix::Identity(n, n);

  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    ReconstructionConfig attempt_cfg = cfg;
    attempt_cfg.theta = perturbed_theta(cfg.theta, attempt);
    const ComplexMatrix u = fixing_unitary(c_rho, pair.j, attempt_cfg);

    SolutionTable second;
    second.top.reserve(static_cast<std::size_t>(n));
    second.bottom.reserve(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < c_rho.size(); ++i) {
      const ComplexMatrix rotated = u * c_rho[i].matrix() * u.adjoint();
      const Context w = make_context({rotated, ComplexMatrix(identity - rotated)});
      const double d = invert_binary_entropy(oracle.query(w));
      second.top.push_back(d);
      second.bottom.push_back(1.0 - d);
      second.top_row_sum += d;
    }

    Assignment assignment;
    try {
      assignment = select_assignment(second, cfg);
    } catch (const Error& e) {
      if (e.code() == Errc::InvalidTable && attempt < cfg.max_retries)
        continue;  // knife-edge second table; re-draw the rotation
      throw;
    }
    const auto* unique = std::get_if<UniqueAssignment>(&assignment);
    if (unique == nullptr) continue;  // re-entered (b2): rotation not generic

    // The j-th entry of the second solution is the j-th diagonal entry of
    // the rotated state, which the fixing unitary pins to lambda_j.
    const double d_j = unique->lambdas[pair.j];
    std::vector<double> lambdas(static_cast<std::size_t>(n), 0.0);
    if (std::abs(d_j - pair.c) <= cfg.value_tol) {
      lambdas[pair.j] = pair.c;
      lambdas[pair.k] = 1.0 - pair.c;
    } else if (std::abs(d_j - (1.0 - pair.c)) <= cfg.value_tol) {
      lambdas[pair.j] = 1.0 - pair.c;
      lambdas[pair.k] = pair.c;
    } else {
      raise(Errc::MatchFailure,
            "second-table entry " + std::to_string(d_j) +
                " matches neither c nor 1-c");
    }
    return lambdas;
  }
  raise(Errc::SecondTableAmbiguous,
        "second table stayed ambiguous after " +
            std::to_string(cfg.max_retries + 1) + " rotations");
}

namespace {

DensityMatrix assemble_state(const Context& c_rho,
                             const std::vector<double>& lambdas) {
  const int n = c_rho.dim();
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  double sum = 0.0;
  for (double l : lambdas) sum += l;
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    rho += (lambdas[i] / sum) * c_rho[i].matrix();
  return DensityMatrix(std::move(rho));
}

void finalize_report(ReconstructionReport& report, const EntropyOracle& oracle,
                     std::uint64_t base_count) {
  report.query_count = oracle.query_count() - base_count;
  report.contexts_used = report.query_count;
  if (const DensityMatrix* hidden = oracle.hidden_state()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& candidate : report.candidates)
      best = std::min(best, trace_distance(candidate, *hidden));
    report.residual = best;
  }
}

}  // namespace

ReconstructionReport reconstruct(const EntropyOracle& oracle,
                                 const ReconstructionConfig& cfg,
                                 Proposer proposer) {
  validate_config(cfg);
  const int n = oracle.dim();
  if (n < 3)
    raise(Errc::DimensionTooSmall,
          "reconstruction needs dim >= 3; use reconstruct_qubit for dim 2");
  const std::uint64_t base_count = oracle.query_count();

  auto [c_rho, min_value] = run_step("step 1 (minimize)", [&] {
    return minimize_over_maximal_contexts(oracle, proposer, cfg);
  });

  ReconstructionReport report;
  if (min_value <= cfg.entropy_tol) {
    const Projector p = run_step("pure branch", [&] {
      return identify_pure(oracle, c_rho, cfg);
    });
    report.candidates.emplace_back(p.matrix());
    report.branch = Branch::pure;
  } else {
    const SolutionTable table = run_step("step 2 (two-outcome queries)", [&] {
      return eigenvalue_candidates(oracle, c_rho);
    });
    const Assignment assignment = run_step("step 3 (assignment)", [&] {
      return select_assignment(table, cfg);
    });
    std::vector<double> lambdas;
    if (const auto* unique = std::get_if<UniqueAssignment>(&assignment)) {
      lambdas = unique->lambdas;
      const double sum_tol = static_cast<double>(n) * cfg.value_tol;
      report.branch = std::abs(table.top_row_sum - 1.0) <= sum_tol
                          ? Branch::mixed_a
                          : Branch::mixed_b1;
    } else {
      const auto& pair = std::get<AmbiguousPair>(assignment);
      lambdas = run_step("step 3 (b2 disambiguation)", [&] {
        return disambiguate_b2(oracle, c_rho, pair, cfg);
      });
      report.branch = Branch::mixed_b2;
    }
    report.candidates.push_back(assemble_state(c_rho, lambdas));
  }

  finalize_report(report, oracle, base_count);
  return report;
}

ReconstructionReport reconstruct_qubit(const EntropyOracle& oracle,
                                       const ReconstructionConfig& cfg,
                                       Proposer proposer) {
  validate_config(cfg);
  if (oracle.dim() != 2)
    raise(Errc::DimensionMismatch, "reconstruct_qubit needs dim 2");
  const std::uint64_t base_count = oracle.query_count();

  auto [c_rho, min_value] = run_step("step 1 (minimize)", [&] {
    return minimize_over_maximal_contexts(oracle, proposer, cfg);
  });
  (void)min_value;
  const SolutionTable table = run_step("step 2 (two-outcome queries)", [&] {
    return eigenvalue_candidates(oracle, c_rho);
  });
  if (std::abs(table.top[0] - table.top[1]) > cfg.value_tol + 1e-7)
    raise(Errc::InvalidTable, "qubit columns disagree; inconsistent oracle");
  const double c = table.top[0];

  ReconstructionReport report;
  if (1.0 - 2.0 * c <= cfg.qubit_gap_tol) {
    report.candidates.push_back(assemble_state(c_rho, {c, 1.0 - c}));
    report.branch = Branch::mixed_a;
  } else {
    report.candidates.push_back(assemble_state(c_rho, {c, 1.0 - c}));
    report.candidates.push_back(assemble_state(c_rho, {1.0 - c, c}));
    report.branch = Branch::qubit_ambiguous;
  }
  finalize_report(report, oracle, base_count);
  return report;
}

}  // namespace ctxent
