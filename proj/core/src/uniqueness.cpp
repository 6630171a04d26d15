#include "minext/uniqueness.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "minext/error.hpp"
#include "minext/json_io.hpp"

namespace minext {

namespace {

Eigen::VectorXcd data_column(const ExponentialMatrix& e, const SpectralData& data) {
  Eigen::VectorXcd b(static_cast<Eigen::Index>(e.rows.size()));
  for (std::size_t j = 0; j < e.rows.size(); ++j) b(static_cast<Eigen::Index>(j)) = data.at(e.rows[j]);
  return b;
}

}  // namespace

ExponentialMatrix build_exponential_matrix(const FrequencySet& lambda, const std::vector<TorusPoint>& points) {
  if (points.empty()) throw Error(ErrorCode::kInvalidArgument, "need at least one candidate point");
  for (const auto& x : points) {
    if (x.dim() != lambda.dim()) throw Error(ErrorCode::kDimensionMismatch, "point and lambda dimensions differ");
  }
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(lambda.size()), static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    for (std::size_t k = 0; k < points.size(); ++k) {
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = unit_phase(-lambda[j].dot(points[k]));
    }
  }
  return {lambda, points, std::move(m)};
}

bool has_full_column_rank(const ExponentialMatrix& e, double rank_tol) {
  const Eigen::Index j = e.matrix.rows();
  const Eigen::Index k = e.matrix.cols();
  if (j < k) return false;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e.matrix);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return false;
  return s(k - 1) > rank_tol * s(0);
}

AmplitudeFit recover_amplitudes(const ExponentialMatrix& e, const SpectralData& data, double rank_tol) {
  if (!has_full_column_rank(e, rank_tol)) {
    throw Error(ErrorCode::kRankDeficient, "E lacks full column rank; amplitudes are not determined");
  }
  Eigen::VectorXcd b = data_column(e, data);
  AmplitudeFit fit;
  fit.weights = e.matrix.colPivHouseholderQr().solve(b);
  fit.residual = (e.matrix * fit.weights - b).norm();
  return fit;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kUnique: return "UNIQUE";
    case Verdict::kInconclusive: return "INCONCLUSIVE";
    case Verdict::kNotApplicable: return "NOT_APPLICABLE";
  }
  return "NOT_APPLICABLE";
}

UniquenessResult uniqueness_verdict(const std::vector<TorusPoint>& points, const SpectralData& data,
                                    const UniquenessOptions& opts) {
  UniquenessResult r;
  r.measure = DiscreteMeasure(data.dim());
  if (points.empty()) {
    r.verdict = Verdict::kInconclusive;
    r.reason = "empty candidate set";
    return r;
  }
  ExponentialMatrix e = build_exponential_matrix(data.lambda(), points);
  if (!has_full_column_rank(e, opts.rank_tol)) {
    r.verdict = Verdict::kInconclusive;
    r.reason = "E lacks full column rank";
    return r;
  }
  AmplitudeFit fit = recover_amplitudes(e, data, opts.rank_tol);
  r.residual = fit.residual;
  double scale = 0.0;
  for (const auto& v : data.values()) scale += std::norm(v);
  if (fit.residual > opts.residual_tol * std::max(1.0, std::sqrt(scale))) {
    r.verdict = Verdict::kInconclusive;
    r.reason = "support set inconsistent with data";
    return r;
  }
  std::vector<Complex> w(fit.weights.data(), fit.weights.data() + fit.weights.size());
  r.measure = DiscreteMeasure::from_points(points, w);
  if (opts.epsilon >= 0.0 && std::fabs(tv_norm(r.measure) - opts.epsilon) > opts.norm_tol * std::max(1.0, opts.epsilon)) {
    r.verdict = Verdict::kInconclusive;
    r.reason = "recovered measure has norm " + std::to_string(tv_norm(r.measure)) + ", not epsilon";
    return r;
  }
  r.verdict = Verdict::kUnique;
  return r;
}

UniquenessResult uniqueness_verdict(const SupportStructure& structure, const SpectralData& data,
                                    const UniquenessOptions& opts) {
  auto pts = finite_support(structure);
  if (!pts) {
    UniquenessResult r;
    r.measure = DiscreteMeasure(data.dim());
    r.verdict = Verdict::kNotApplicable;
    r.reason = "support structure is " + kind_name(structure) + ", not a finite point set";
    return r;
  }
  return uniqueness_verdict(*pts, data, opts);
}

nlohmann::json verdict_to_json(const UniquenessResult& r) {
  nlohmann::json j{{"verdict", to_string(r.verdict)}, {"residual", r.residual}, {"reason", r.reason}};
  j["measure"] = r.verdict == Verdict::kUnique ? measure_to_json(r.measure) : nlohmann::json(nullptr);
  return j;
}

}  // namespace minext
