#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "minext/measure.hpp"
#include "minext/structure.hpp"

namespace minext {

// E_{jk} = e^{-2 pi i m_j . x_k}
struct ExponentialMatrix {
  FrequencySet rows;
  std::vector<TorusPoint> points;
  Eigen::MatrixXcd matrix;
};

ExponentialMatrix build_exponential_matrix(const FrequencySet& lambda,
                                           const std::vector<TorusPoint>& points);

// False when J < K, otherwise compares the K-th singular value against
// rank_tol times the largest.
bool has_full_column_rank(const ExponentialMatrix& e, double rank_tol = 1e-8);

struct AmplitudeFit {
  Eigen::VectorXcd weights;
  // ||E a - data||_2
  double residual = 0.0;
};

// Least squares through a column-pivoted QR. Throws Error(kRankDeficient) when
// E lacks full column rank.
AmplitudeFit recover_amplitudes(const ExponentialMatrix& e,
                                const SpectralData& data,
                                double rank_tol = 1e-8);

enum class Verdict { kUnique, kInconclusive, kNotApplicable };

std::string to_string(Verdict v);

struct UniquenessResult {
  Verdict verdict = Verdict::kNotApplicable;
  DiscreteMeasure measure{1};
  double residual = 0.0;
  std::string reason;
};

struct UniquenessOptions {
  double rank_tol = 1e-8;
  // Residual accepted relative to max(1, ||data||_2).
  double residual_tol = 1e-6;
  // When set, the recovered measure must also have norm epsilon within
  // norm_tol * epsilon.
  double epsilon = -1.0;
  double norm_tol = 1e-6;
};

UniquenessResult uniqueness_verdict(const SupportStructure& structure,
                                    const SpectralData& data,
                                    const UniquenessOptions& opts = {});

// Same test on an explicit candidate point set.
UniquenessResult uniqueness_verdict(const std::vector<TorusPoint>& points,
                                    const SpectralData& data,
                                    const UniquenessOptions& opts = {});

nlohmann::json verdict_to_json(const UniquenessResult& r);

}  // namespace minext
