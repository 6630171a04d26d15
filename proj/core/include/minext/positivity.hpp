#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "minext/measure.hpp"

namespace minext {

// Moments t_0..t_M of M_{-n} mu on a window around n (d = 1).
struct ToeplitzWindow {
  int center = 0;
  int half_width = 0;
  std::vector<Complex> moments;

  // (M+1)x(M+1) Hermitian Toeplitz matrix with T_{jk} = t_{j-k}.
  Eigen::MatrixXcd matrix() const;
};

// t_k = data(n + k) when n + k is in lambda, else conj(data(n - k)). Throws
// Error(kInvalidArgument) when neither is available, and Error(kInconsistent)
// when both are and disagree beyond tol, or t_0 is not real.
ToeplitzWindow toeplitz_window(const SpectralData& data, int n, int m,
                               double tol = 1e-9);

// Largest M for which toeplitz_window(data, n, M) is well defined.
int max_half_width(const SpectralData& data, int n);

bool is_pd_extendable(const ToeplitzWindow& w, double tol = 1e-9);

// Smallest eigenvalue of the window matrix.
double min_eigenvalue(const ToeplitzWindow& w);

// The disk of values t_{M+1} that keep T_{M+1} positive semidefinite, for a
// nonsingular T_M.
struct CompletionDisk {
  Complex center;
  double radius = 0.0;
};

std::optional<CompletionDisk> completion_disk(const ToeplitzWindow& w,
                                              double singular_tol = 1e-12);

struct CaratheodoryOptions {
  double tol = 1e-9;
  // Overrides the bordering value; must lie on the boundary of the disk.
  std::optional<Complex> border;
  int fallback_grid = 512;
  double fallback_residual = 1e-6;
};

// Positive measure with at most M+1 atoms whose coefficients 0..M equal the
// window moments. Throws Error(kNotApplicable) for a non-PSD window and
// Error(kNumerical) if neither the root route nor the grid fallback works.
DiscreteMeasure caratheodory_atoms(const ToeplitzWindow& w,
                                   const CaratheodoryOptions& opts = {});

// Nonnegative least squares, min ||A x - b|| with x >= 0 (Lawson-Hanson).
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                     int max_iterations = 0);

// modulate(caratheodory_atoms(window), n), checked against every frequency of
// lambda within tol. Throws Error(kInconsistent) on mismatch.
DiscreteMeasure positive_minimal_extrapolation(const SpectralData& data, int n,
                                               int m, double tol = 1e-7);

struct PositivityResult {
  bool applicable = false;
  bool extendable = false;
  // True when lambda - n is not a contiguous window and the test ran on the
  // contiguous hull, so only the negative answer is conclusive.
  bool heuristic = false;
  int center = 0;
  int half_width = 0;
  double min_eigenvalue = 0.0;
  std::optional<DiscreteMeasure> measure;
  std::string reason;
};

// Pipeline wrapper that never throws for ordinary inputs.
PositivityResult analyze_positivity(const SpectralData& data, int n, int m,
                                    double tol = 1e-7);

struct FejerParams {
  int n = 2;
  double c = 0.0;
};

double fejer_c_max(int n);

// (a_{N,c})_m = 2 at m = 0, c(1 - |m|/(N+1)) for 2 <= |m| <= N, 0 otherwise.
// Throws Error(kInvalidArgument) when N < 2 or c is outside (0, c_max].
TrigPolynomial fejer_family(const FejerParams& p);

}  // namespace minext
