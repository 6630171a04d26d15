#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "minext/torus.hpp"

namespace minext {

using Complex = std::complex<double>;

// Atoms closer than this (torus l-infinity) are merged on construction.
inline constexpr double kMergeTolerance = 1e-9;
// Atoms with |weight| below this are dropped on construction.
inline constexpr double kPruneTolerance = 1e-12;

// e^{2 pi i t}, exact at multiples of 1/8.
Complex unit_phase(double t);
// e^{2 pi i j / n}, exact at multiples of n/8.
Complex root_of_unity(long long j, long long n);

struct Atom {
  TorusPoint x;
  Complex weight;
};

// A finite sum of weighted Dirac masses on T^d. Immutable once built: atoms
// at the same location are merged, near-zero atoms are pruned, and the result
// is sorted by location.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(int dim) : dim_(dim) {}
  DiscreteMeasure(int dim, std::vector<Atom> atoms);

  // sum_k weights[k] * delta_{points[k]}
  static DiscreteMeasure from_points(const std::vector<TorusPoint>& points,
                                     const std::vector<Complex>& weights);
  static DiscreteMeasure dirac(const TorusPoint& x, Complex weight = 1.0);

  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  DiscreteMeasure scaled(Complex c) const;
  DiscreteMeasure operator+(const DiscreteMeasure& other) const;
  DiscreteMeasure operator-(const DiscreteMeasure& other) const;

  // Weight at x (within kPointTolerance), if an atom sits there.
  std::optional<Complex> weight_at(const TorusPoint& x) const;

 private:
  int dim_;
  std::vector<Atom> atoms_;
};

// Values of a Fourier transform restricted to a finite frequency set.
class SpectralData {
 public:
  SpectralData(FrequencySet lambda, std::vector<Complex> values);

  const FrequencySet& lambda() const { return lambda_; }
  const std::vector<Complex>& values() const { return values_; }
  int dim() const { return lambda_.dim(); }
  std::size_t size() const { return values_.size(); }

  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex at(const Frequency& m) const;
  std::optional<Complex> find(const Frequency& m) const;

  // max_m |data(m)|
  double sup_norm() const;
  SpectralData scaled(Complex c) const;

 private:
  FrequencySet lambda_;
  std::vector<Complex> values_;
};

// f(x) = sum_m c_m e^{2 pi i m.x} over a finite frequency set.
class TrigPolynomial {
 public:
  TrigPolynomial(FrequencySet support, std::vector<Complex> coefficients);

  const FrequencySet& support() const { return support_; }
  const std::vector<Complex>& coefficients() const { return coefficients_; }
  int dim() const { return support_.dim(); }

  Complex coefficient(const Frequency& m) const;
  Complex operator()(const TorusPoint& x) const;

  TrigPolynomial scaled(Complex c) const;

 private:
  FrequencySet support_;
  std::vector<Complex> coefficients_;
};

// mu^(m) = sum_k a_k e^{-2 pi i m.x_k} for m in lambda.
SpectralData fourier_transform(const DiscreteMeasure& mu,
                               const FrequencySet& lambda);

double tv_norm(const DiscreteMeasure& mu);

// T_y mu: atoms moved to x_k + y.
DiscreteMeasure translate(const DiscreteMeasure& mu, const TorusPoint& y);

// M_n mu: weights multiplied by e^{2 pi i n.x_k}.
DiscreteMeasure modulate(const DiscreteMeasure& mu, const Frequency& n);

DiscreteMeasure convolve(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2);

// mu1 x mu2 on T^{d1 + d2}.
DiscreteMeasure product_measure(const DiscreteMeasure& mu1,
                                const DiscreteMeasure& mu2);

Complex trig_eval(const TrigPolynomial& f, const TorusPoint& x);

// <f, mu> = sum_k f(x_k) conj(a_k)
Complex inner_product(const TrigPolynomial& f, const DiscreteMeasure& mu);

// Parseval form of the pairing: sum_m f^(m) conj(data(m)) over the support of
// f; every support frequency must be present in the data.
Complex spectral_pairing(const TrigPolynomial& f, const SpectralData& data);

}  // namespace minext
