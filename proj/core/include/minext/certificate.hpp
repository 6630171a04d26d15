#pragma once

#include <vector>

#include <Eigen/Dense>

#include "minext/measure.hpp"

namespace minext {

// A dual certificate phi in the unit ball of trigonometric polynomials on
// lambda, normalized so that the pairing <phi, mu> is real and nonnegative.
struct Certificate {
  TrigPolynomial poly;
  // max |phi| measured on the validation grid.
  double sup_norm = 0.0;
  Complex pairing;
};

// Phi = 1 - |phi|^2, supported on lambda - lambda.
struct DeficitPolynomial {
  TrigPolynomial poly;

  double operator()(const TorusPoint& x) const { return poly(x).real(); }
};

struct CertificateOptions {
  // Relative shortfall of the pairing below epsilon that is still accepted.
  double validation_tol = 1e-6;
  // Points per axis of the validation grid; 0 picks 4096 / 256 / 32 / 12 for
  // d = 1 / 2 / 3 / higher.
  int validation_points = 0;
};

int default_validation_points(int dim);

// max |phi| over the uniform validation grid.
double measured_sup_norm(const TrigPolynomial& phi, int points_per_axis);

// Rescales the grid dual so that the measured sup-norm is at most one and
// rotates it so the pairing with the data is real positive. Throws
// Error(kCertificateRejected) when the pairing falls below epsilon(1 - tol),
// including the all-zero case.
Certificate certificate_from_dual(const Eigen::VectorXcd& dual,
                                  const SpectralData& data, double epsilon,
                                  const CertificateOptions& opts = {});

// Wraps an explicit polynomial as a certificate for the given data, with the
// same normalization and acceptance rule as certificate_from_dual.
Certificate certificate_from_poly(const TrigPolynomial& phi,
                                  const SpectralData& data, double epsilon,
                                  const CertificateOptions& opts = {});

// Minimum-norm polynomial on lambda with phi(x_k) = signs[k] and a stationary
// modulus at each x_k (d = 1 only). This is the interpolation route to an
// exact certificate once the support of a minimal extrapolation is known.
TrigPolynomial interpolate_sign_pattern(const FrequencySet& lambda,
                                        const std::vector<TorusPoint>& points,
                                        const std::vector<Complex>& signs);

// Exact autocorrelation of the coefficients; Hermitian by construction.
DeficitPolynomial deficit(const TrigPolynomial& phi);

// True iff phi is a unimodular multiple of a single character.
bool is_degenerate(const TrigPolynomial& phi, double tol);

struct RootOptions {
  // Accept roots with ||z| - 1| below this.
  double unit_circle_tol = 1e-6;
  // Arguments (in turns) closer than this are merged.
  double dedup_tol = 1e-7;
};

// Zero set of Phi on T (d = 1) via companion-matrix roots and a Newton polish
// on the circle. Throws Error(kDegenerateCertificate) when Phi vanishes
// identically (|phi| = 1 everywhere).
std::vector<TorusPoint> support_from_certificate_1d(const TrigPolynomial& phi,
                                                    double degeneracy_tol = 1e-9,
                                                    const RootOptions& opts = {});

// Grid points where |Phi| < tol on a grid with `refinement` points per axis.
std::vector<TorusPoint> support_from_certificate_grid(const TrigPolynomial& phi,
                                                      int refinement, double tol);

// Roots of sum_k coeffs[k] z^k by companion-matrix eigenvalues. Trailing
// coefficients below `trim` relative to the largest are dropped.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs,
                                      double trim = 1e-14);

}  // namespace minext
