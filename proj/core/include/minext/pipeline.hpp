#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "minext/certificate.hpp"
#include "minext/grid_solver.hpp"
#include "minext/positivity.hpp"
#include "minext/structure.hpp"
#include "minext/uniqueness.hpp"

namespace minext {

struct PipelineOptions {
  // Points per axis; 0 picks 64 for d = 1 and 16 otherwise.
  int grid = 0;
  SolverOptions solver;
  std::optional<double> mu_norm;
  std::optional<int> center;
  std::optional<int> half_width;
  // Relative Gamma tolerance; non-positive uses default_gamma_tolerance.
  double gamma_tol = 0.0;
  // A certificate whose deficit polynomial stays below this is treated as a
  // unimodular character.
  double degeneracy_tol = 1e-4;
};

int default_grid_size(int dim);

struct CertificateSummary {
  bool available = false;
  // Replaced by the interpolating polynomial on the grid support.
  bool polished = false;
  bool degenerate = false;
  std::optional<Certificate> certificate;
  std::string note;
};

struct PipelineReport {
  explicit PipelineReport(SpectralData in) : input(std::move(in)) {}

  SpectralData input;
  GridSpec grid;
  SolveReport solve;
  DiscreteMeasure grid_measure{1};
  AdmissibilityRange range;
  double epsilon = 0.0;
  // "grid", "admissibility-collapse", "degenerate-certificate" or "zero-data".
  std::string route;
  GammaSet gamma;
  SupportStructure structure = WholeTorus{};
  UniquenessResult uniqueness;
  PositivityResult positivity;
  CertificateSummary certificate;
  double seconds = 0.0;
};

// solve -> epsilon -> Gamma -> structure -> uniqueness -> positivity.
PipelineReport analyze(const SpectralData& data, const PipelineOptions& opts = {});

nlohmann::json report_to_json(const PipelineReport& r, bool include_timing = false);

}  // namespace minext
