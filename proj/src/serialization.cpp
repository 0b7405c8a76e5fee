#include "ctxent/serialization.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "ctxent/errors.hpp"

namespace ctxent {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    entries.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const auto dim = j.at("dim").get<Eigen::Index>();
  if (dim < 1) raise(Errc::OutOfRange, "matrix dim must be positive");
  const json& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(dim))
    raise(Errc::DimensionMismatch, "entries array is not dim rows");
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const json& row = entries.at(static_cast<std::size_t>(r));
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim))
      raise(Errc::DimensionMismatch, "entries row is not dim cells");
    for (Eigen::Index c = 0; c < dim; ++c) {
      const json& cell = row.at(static_cast<std::size_t>(c));
      if (!cell.is_array() || cell.size() != 2)
        raise(Errc::DimensionMismatch, "cell is not a [re, im] pair");
      m(r, c) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

json state_to_json(const DensityMatrix& rho) {
  return json{{"dim", rho.dim()}, {"matrix", matrix_to_json(rho.matrix())}};
}

DensityMatrix state_from_json(const json& j) {
  const auto dim = j.at("dim").get<int>();
  ComplexMatrix m = matrix_from_json(j.at("matrix"));
  if (m.rows() != dim)
    raise(Errc::DimensionMismatch, "state dim does not match its matrix");
  return DensityMatrix(std::move(m));
}

json context_to_json(const Context& c) {
  json projectors = json::array();
  for (const auto& p : c) projectors.push_back(matrix_to_json(p.matrix()));
  return json{{"dim", c.dim()}, {"projectors", std::move(projectors)}};
}

Context context_from_json(const json& j) {
  const auto dim = j.at("dim").get<int>();
  std::vector<ComplexMatrix> ms;
  for (const json& pj : j.at("projectors")) {
    ms.push_back(matrix_from_json(pj));
    if (ms.back().rows() != dim)
      raise(Errc::DimensionMismatch, "projector dim does not match context");
  }
  return make_context(ms);
}

json report_to_json(const ReconstructionReport& report) {
  json j{{"branch", to_string(report.branch)},
         {"queries", report.query_count},
         {"contexts_used", report.contexts_used}};
  if (report.candidates.size() == 1) {
    j["state"] = matrix_to_json(report.state().matrix());
  } else {
    json candidates = json::array();
    for (const auto& c : report.candidates)
      candidates.push_back(matrix_to_json(c.matrix()));
    j["candidates"] = std::move(candidates);
  }
  if (report.residual) j["residual"] = *report.residual;
  return j;
}

json roundtrip_to_json(const GleasonRoundTrip& rt) {
  json j = report_to_json(rt.reconstruction);
  j["max_deviation"] = rt.max_deviation;
  j["samples"] = rt.samples;
  return j;
}

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return json::parse(in);
}

}  // namespace

DensityMatrix load_state(const std::string& path) {
  return state_from_json(load_json(path));
}

Context load_context(const std::string& path) {
  return context_from_json(load_json(path));
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed on " + path);
}

}  // namespace ctxent
