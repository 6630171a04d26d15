#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "minext/measure.hpp"

namespace minext {

// Uniform grid {k/N : k = 0..N-1}^d on the torus.
struct GridSpec {
  int dim = 1;
  int n_per_axis = 1;

  std::size_t total() const;
  // Grid point with linear index k; the last coordinate varies fastest.
  TorusPoint point(std::size_t k) const;
  std::vector<int> multi_index(std::size_t k) const;
};

// Rows indexed by lambda, columns by grid points; entry e^{-2 pi i m.k/N}.
struct ForwardMatrix {
  FrequencySet rows;
  GridSpec grid;
  Eigen::MatrixXcd matrix;
};

// Throws Error(kAliasing) naming the first pair of frequencies that coincide
// modulo N.
ForwardMatrix build_forward_matrix(const FrequencySet& lambda,
                                   const GridSpec& grid);

struct SolverOptions {
  int max_iterations = 200000;
  // Non-positive steps are derived from the power-iteration estimate of ||A||.
  double primal_step = 0.0;
  double dual_step = 0.0;
  double feasibility_tol = 1e-9;
  double gap_tol = 1e-8;
  std::uint64_t seed = 20160715;
  int power_iterations = 20;
  // Certified bounds are evaluated every this many iterations.
  int check_interval = 50;
};

struct SolveReport {
  // epsilon_N = ||primal||_1
  double epsilon = 0.0;
  // Certified lower bound Re<dual, b> from the rescaled dual iterate.
  double dual_value = 0.0;
  Eigen::VectorXcd primal;
  // phi = sum_m dual_m e^{2 pi i m.x} satisfies |phi| <= 1 on the grid.
  Eigen::VectorXcd dual;
  int iterations = 0;
  double residual = 0.0;
  double gap = 0.0;
  bool converged = false;
  GridSpec grid;
};

// min ||y||_1 subject to A y = b over complex y, by a primal-dual splitting
// with complex soft-thresholding. Non-convergence is reported through
// `converged`, with the best certified iterate.
SolveReport basis_pursuit(const ForwardMatrix& a, const SpectralData& b,
                          const SolverOptions& opts = {});

// Largest singular value of A by power iteration on A^H A.
double estimate_operator_norm(const Eigen::MatrixXcd& a, int iterations,
                              std::uint64_t seed);

DiscreteMeasure solution_to_measure(const SolveReport& report,
                                    const GridSpec& grid, double prune_tol);

// epsilon_N for each grid. Grids must form a divisibility chain, so the
// returned sequence is non-increasing up to solver tolerance.
std::vector<double> refine_epsilon(const SpectralData& data,
                                   const std::vector<GridSpec>& grids,
                                   const SolverOptions& opts = {});

// Convenience: build the forward matrix and solve.
SolveReport solve_on_grid(const SpectralData& data, const GridSpec& grid,
                          const SolverOptions& opts = {});

}  // namespace minext
