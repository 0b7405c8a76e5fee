#include "ctxent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ctxent/errors.hpp"

namespace ctxent {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double shannon(const ProbabilityDistribution& p) {
  double h = 0.0;
  for (double w : p.weights()) h -= xlnx(w);
  return std::max(h, 0.0);
}

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0)
    raise(Errc::OutOfRange, "binary_entropy argument " + std::to_string(x));
  return -xlnx(x) - xlnx(1.0 - x);
}

double invert_binary_entropy(double h, double tol) {
  if (h < -tol || h > kLn2 + tol)
    raise(Errc::OutOfRange,
          "entropy " + std::to_string(h) + " outside [0, ln 2]");
  h = std::clamp(h, 0.0, kLn2);
  if (h == 0.0) return 0.0;
  if (h == kLn2) return 0.5;
  // Binary entropy is strictly increasing on [0, 1/2]; bisect.
  double lo = 0.0, hi = 0.5;
  for (int iter = 0; iter < 200 && hi - lo > 1e-14; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < h)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double contextual_entropy(const DensityMatrix& rho, const Context& c) {
  return shannon(born(rho, c));
}

double von_neumann(const DensityMatrix& rho) {
  const Eigensystem sys = hermitian_eigensystem(rho.matrix());
  std::vector<double> spectrum(sys.eigenvalues.data(),
                               sys.eigenvalues.data() + sys.eigenvalues.size());
  // A valid state bounds the spectrum sum by its trace tolerance only.
  return shannon(ProbabilityDistribution(std::move(spectrum),
                                         2 * kStructuralTol));
}

bool majorizes(const std::vector<double>& s, const std::vector<double>& r,
               double tol) {
  if (s.size() != r.size())
    raise(Errc::LengthMismatch, "majorizes: vectors of unequal length");
  std::vector<double> sd = s, rd = r;
  std::sort(sd.begin(), sd.end(), std::greater<>());
  std::sort(rd.begin(), rd.end(), std::greater<>());
  double ps = 0.0, pr = 0.0;
  for (std::size_t i = 0; i + 1 < sd.size(); ++i) {
    ps += sd[i];
    pr += rd[i];
    if (ps < pr - tol) return false;
  }
  if (!sd.empty()) {
    ps += sd.back();
    pr += rd.back();
  }
  return std::abs(ps - pr) <= tol;
}

EntropyOracle::EntropyOracle(int dim, Evaluator evaluator,
                             std::optional<DensityMatrix> hidden)
    : dim_(dim),
      evaluator_(std::move(evaluator)),
      hidden_(std::move(hidden)),
      count_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
  if (dim_ < 1) raise(Errc::OutOfRange, "oracle dim must be positive");
}

double EntropyOracle::query(const Context& c) const {
  if (c.dim() != dim_)
    raise(Errc::DimensionMismatch, "oracle query on wrong dimension");
  count_->fetch_add(1, std::memory_order_relaxed);
  const double value = evaluator_(c);
  const double cap = std::log(static_cast<double>(dim_));
  if (value < -kStructuralTol || value > cap + kStructuralTol)
    raise(Errc::OutOfRange,
          "oracle value " + std::to_string(value) + " outside [0, ln dim]");
  return std::clamp(value, 0.0, cap);
}

EntropyOracle oracle_from_state(const DensityMatrix& rho) {
  DensityMatrix hidden = rho;
  auto evaluator = [rho](const Context& c) {
    return contextual_entropy(rho, c);
  };
  return EntropyOracle(rho.dim(), std::move(evaluator), std::move(hidden));
}

}  // namespace ctxent
