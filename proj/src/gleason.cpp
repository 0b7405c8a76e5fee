#include "ctxent/gleason.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "ctxent/errors.hpp"
#include "ctxent/rng.hpp"

namespace ctxent {

ProjectionMeasure::ProjectionMeasure(int dim, Evaluator evaluator, Kind kind,
                                     std::optional<DensityMatrix> backing)
    : dim_(dim),
      evaluator_(std::move(evaluator)),
      kind_(kind),
      backing_(std::move(backing)) {
  if (dim_ < 1) raise(Errc::OutOfRange, "measure dim must be positive");
}

ProjectionMeasure measure_from_state(const DensityMatrix& rho) {
  auto evaluator = [rho](const Projector& p) {
    if (p.dim() != rho.dim())
      raise(Errc::DimensionMismatch, "measure evaluated on wrong dimension");
    return (rho.matrix() * p.matrix()).trace().real();
  };
  return ProjectionMeasure(rho.dim(), std::move(evaluator),
                           ProjectionMeasure::Kind::state_backed, rho);
}

ProjectionMeasure with_override(const ProjectionMeasure& base,
                                const ComplexMatrix& projector, double value,
                                double match_tol) {
  auto evaluator = [base, projector, value, match_tol](const Projector& p) {
    if ((p.matrix() - projector).norm() <= match_tol) return value;
    return base(p);
  };
  return ProjectionMeasure(base.dim(), std::move(evaluator),
                           ProjectionMeasure::Kind::table_backed);
}

MeasureCheckReport check_measure(const ProjectionMeasure& mu, int samples,
                                 std::uint64_t seed) {
  MeasureCheckReport report;
  report.samples = samples;
  const int n = mu.dim();

  const Projector identity{ComplexMatrix::Identity(n, n)};
  report.normalization_error = std::abs(mu(identity) - 1.0);

  Rng rng(derive_seed(seed, 0x6ea5));
  for (int s = 0; s < samples; ++s) {
    const Context ctx = random_maximal_context(n, derive_seed(seed, 100 + s));

    if (ctx.size() < 2) continue;  // no orthogonal pair to draw
    // Disjoint nonempty index sets A, B drawn from the context outcomes:
    // two anchors keep both sets nonempty, the rest scatter over A/B/skip.
    std::vector<int> labels(ctx.size(), 0);  // 0: skip, 1: A, 2: B
    const std::size_t ia = rng.below(ctx.size());
    std::size_t ib = rng.below(ctx.size() - 1);
    if (ib >= ia) ++ib;
    for (std::size_t i = 0; i < ctx.size(); ++i)
      labels[i] = static_cast<int>(rng.below(3));
    labels[ia] = 1;
    labels[ib] = 2;

    ComplexMatrix pa = ComplexMatrix::Zero(n, n);
    ComplexMatrix pb = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (labels[i] == 1) pa += ctx[i].matrix();
      if (labels[i] == 2) pb += ctx[i].matrix();
    }

    const Projector proj_a{pa};
    const Projector proj_b{pb};
    const Projector proj_sum{ComplexMatrix(pa + pb)};
    const double va = mu(proj_a);
    const double vb = mu(proj_b);
    const double vsum = mu(proj_sum);

    for (double v : {va, vb, vsum}) {
      const double out = std::max({-v, v - 1.0, 0.0});
      report.worst_range_violation = std::max(report.worst_range_violation, out);
    }
    const double violation = std::abs(vsum - va - vb);
    if (violation > report.worst_additivity_violation) {
      report.worst_additivity_violation = violation;
      report.witness = {pa, pb};
    }
  }
  return report;
}

EntropyOracle oracle_from_measure(const ProjectionMeasure& mu) {
  const ProjectionMeasure copy = mu;
  auto evaluator = [copy](const Context& c) {
    std::vector<double> weights;
    weights.reserve(c.size());
    for (const auto& p : c) weights.push_back(copy(p));
    // Strict: a measure defective on this context is rejected, never
    // silently renormalized.
    return shannon(ProbabilityDistribution(std::move(weights)));
  };
  std::optional<DensityMatrix> hidden;
  if (const DensityMatrix* backing = mu.backing_state()) hidden = *backing;
  return EntropyOracle(mu.dim(), std::move(evaluator), std::move(hidden));
}

GleasonRoundTrip gleason_roundtrip(const ProjectionMeasure& mu,
                                   const ReconstructionConfig& cfg,
                                   int sample_projections) {
  const int n = mu.dim();
  if (n < 3)
    raise(Errc::DimensionTooSmall, "gleason_roundtrip needs dim >= 3");

  const EntropyOracle oracle = oracle_from_measure(mu);
  const Proposer proposer = oracle.hidden_state() != nullptr
                                ? Proposer::spectral
                                : Proposer::search;

  GleasonRoundTrip rt;
  rt.reconstruction = reconstruct(oracle, cfg, proposer);
  rt.samples = sample_projections;

  // Sampled projections sweep every rank from 1 to dim-1.
  const DensityMatrix& recovered = rt.reconstruction.state();
  Rng rng(derive_seed(cfg.seed, 0x91ea));
  for (int s = 0; s < sample_projections; ++s) {
    const Context ctx =
        random_maximal_context(n, derive_seed(cfg.seed, 7000 + s));
    const int rank = 1 + static_cast<int>(rng.below(n - 1));
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < rank; ++i) p += ctx[static_cast<std::size_t>(i)].matrix();
    const Projector proj{p};
    const double reproduced = (recovered.matrix() * proj.matrix()).trace().real();
    rt.max_deviation = std::max(rt.max_deviation, std::abs(reproduced - mu(proj)));
  }
  return rt;
}

}  // namespace ctxent
