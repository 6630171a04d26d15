#include "minext/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "minext/error.hpp"

namespace minext {

namespace {

const Complex kEighths[8] = {
    {1.0, 0.0},
    {std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2},
    {0.0, 1.0},
    {-std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2},
    {-1.0, 0.0},
    {-std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2},
    {0.0, -1.0},
    {std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2},
};

bool lex_less(const TorusPoint& a, const TorusPoint& b) {
  return std::lexicographical_compare(a.coords().begin(), a.coords().end(),
                                      b.coords().begin(), b.coords().end());
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw Error(ErrorCode::kDimensionMismatch, what);
}

}  // namespace

Complex unit_phase(double t) {
  double r = t - std::floor(t);
  double k = 8.0 * r;
  double kr = std::round(k);
  if (std::fabs(k - kr) < 1e-13) return kEighths[static_cast<int>(kr) % 8];
  return std::polar(1.0, 2.0 * std::numbers::pi * r);
}

Complex root_of_unity(long long j, long long n) {
  if (n <= 0) throw Error(ErrorCode::kInvalidArgument, "root_of_unity needs n > 0");
  long long r = ((j % n) + n) % n;
  if ((8 * r) % n == 0) return kEighths[(8 * r) / n];
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

DiscreteMeasure::DiscreteMeasure(int dim, std::vector<Atom> atoms) : dim_(dim) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "measure dimension must be >= 1");
  for (const auto& a : atoms) {
    require_same_dim(a.x.dim(), dim, "atom dimension differs from measure dimension");
    if (!std::isfinite(a.weight.real()) || !std::isfinite(a.weight.imag())) {
      throw Error(ErrorCode::kInvalidArgument, "atom weight is not finite");
    }
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return lex_less(a.x, b.x); });
  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (auto& a : atoms) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Atom& m) {
      return torus_distance(m.x, a.x) <= kMergeTolerance;
    });
    if (it != merged.end()) {
      it->weight += a.weight;
    } else {
      merged.push_back(std::move(a));
    }
  }
  std::erase_if(merged, [](const Atom& a) { return std::abs(a.weight) < kPruneTolerance; });
  atoms_ = std::move(merged);
}

DiscreteMeasure DiscreteMeasure::from_points(const std::vector<TorusPoint>& points,
                                             const std::vector<Complex>& weights) {
  if (points.size() != weights.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "points and weights differ in length");
  }
  if (points.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "from_points needs at least one point");
  }
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) atoms.push_back({points[i], weights[i]});
  return DiscreteMeasure(points.front().dim(), std::move(atoms));
}

DiscreteMeasure DiscreteMeasure::dirac(const TorusPoint& x, Complex weight) {
  return DiscreteMeasure(x.dim(), {Atom{x, weight}});
}

DiscreteMeasure DiscreteMeasure::scaled(Complex c) const {
  std::vector<Atom> a(atoms_);
  for (auto& atom : a) atom.weight *= c;
  return DiscreteMeasure(dim_, std::move(a));
}

DiscreteMeasure DiscreteMeasure::operator+(const DiscreteMeasure& other) const {
  require_same_dim(dim_, other.dim_, "measure dimensions differ");
  std::vector<Atom> a(atoms_);
  a.insert(a.end(), other.atoms_.begin(), other.atoms_.end());
  return DiscreteMeasure(dim_, std::move(a));
}

DiscreteMeasure DiscreteMeasure::operator-(const DiscreteMeasure& other) const {
  return *this + other.scaled(-1.0);
}

std::optional<Complex> DiscreteMeasure::weight_at(const TorusPoint& x) const {
  for (const auto& a : atoms_) {
    if (approx_equal(a.x, x)) return a.weight;
  }
  return std::nullopt;
}

SpectralData::SpectralData(FrequencySet lambda, std::vector<Complex> values)
    : lambda_(std::move(lambda)), values_(std::move(values)) {
  if (lambda_.size() != values_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "spectral data length differs from lambda");
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::kInvalidArgument, "spectral value is not finite");
    }
  }
}

Complex SpectralData::at(const Frequency& m) const { return values_[lambda_.index_of(m)]; }

std::optional<Complex> SpectralData::find(const Frequency& m) const {
  if (!lambda_.contains(m)) return std::nullopt;
  return values_[lambda_.index_of(m)];
}

double SpectralData::sup_norm() const {
  double r = 0.0;
  for (const auto& v : values_) r = std::max(r, std::abs(v));
  return r;
}

SpectralData SpectralData::scaled(Complex c) const {
  std::vector<Complex> v(values_);
  for (auto& x : v) x *= c;
  return SpectralData(lambda_, std::move(v));
}

TrigPolynomial::TrigPolynomial(FrequencySet support, std::vector<Complex> coefficients)
    : support_(std::move(support)), coefficients_(std::move(coefficients)) {
  if (support_.size() != coefficients_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "coefficient count differs from support size");
  }
}

Complex TrigPolynomial::coefficient(const Frequency& m) const {
  if (!support_.contains(m)) return 0.0;
  return coefficients_[support_.index_of(m)];
}

Complex TrigPolynomial::operator()(const TorusPoint& x) const { return trig_eval(*this, x); }

TrigPolynomial TrigPolynomial::scaled(Complex c) const {
  std::vector<Complex> v(coefficients_);
  for (auto& x : v) x *= c;
  return TrigPolynomial(support_, std::move(v));
}

SpectralData fourier_transform(const DiscreteMeasure& mu, const FrequencySet& lambda) {
  require_same_dim(mu.dim(), lambda.dim(), "measure and lambda dimensions differ");
  std::vector<Complex> v(lambda.size(), 0.0);
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    for (const auto& a : mu.atoms()) v[j] += a.weight * unit_phase(-lambda[j].dot(a.x));
  }
  return SpectralData(lambda, std::move(v));
}

double tv_norm(const DiscreteMeasure& mu) {
  double s = 0.0;
  for (const auto& a : mu.atoms()) s += std::abs(a.weight);
  return s;
}

DiscreteMeasure translate(const DiscreteMeasure& mu, const TorusPoint& y) {
  require_same_dim(mu.dim(), y.dim(), "translation dimension differs");
  std::vector<Atom> a;
  a.reserve(mu.size());
  for (const auto& atom : mu.atoms()) a.push_back({atom.x + y, atom.weight});
  return DiscreteMeasure(mu.dim(), std::move(a));
}

DiscreteMeasure modulate(const DiscreteMeasure& mu, const Frequency& n) {
  require_same_dim(mu.dim(), n.dim(), "modulation dimension differs");
  std::vector<Atom> a;
  a.reserve(mu.size());
  for (const auto& atom : mu.atoms()) a.push_back({atom.x, atom.weight * unit_phase(n.dot(atom.x))});
  return DiscreteMeasure(mu.dim(), std::move(a));
}

DiscreteMeasure convolve(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2) {
  require_same_dim(mu1.dim(), mu2.dim(), "convolution dimensions differ");
  std::vector<Atom> a;
  a.reserve(mu1.size() * mu2.size());
  for (const auto& p : mu1.atoms()) {
    for (const auto& q : mu2.atoms()) a.push_back({p.x + q.x, p.weight * q.weight});
  }
  return DiscreteMeasure(mu1.dim(), std::move(a));
}

DiscreteMeasure product_measure(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2) {
  std::vector<Atom> a;
  a.reserve(mu1.size() * mu2.size());
  for (const auto& p : mu1.atoms()) {
    for (const auto& q : mu2.atoms()) {
      std::vector<double> c(p.x.coords().begin(), p.x.coords().end());
      c.insert(c.end(), q.x.coords().begin(), q.x.coords().end());
      a.push_back({TorusPoint(std::move(c)), p.weight * q.weight});
    }
  }
  return DiscreteMeasure(mu1.dim() + mu2.dim(), std::move(a));
}

Complex trig_eval(const TrigPolynomial& f, const TorusPoint& x) {
  require_same_dim(f.dim(), x.dim(), "polynomial and point dimensions differ");
  Complex s = 0.0;
  const auto& support = f.support();
  const auto& c = f.coefficients();
  for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * unit_phase(support[j].dot(x));
  return s;
}

Complex inner_product(const TrigPolynomial& f, const DiscreteMeasure& mu) {
  require_same_dim(f.dim(), mu.dim(), "polynomial and measure dimensions differ");
  Complex s = 0.0;
  for (const auto& a : mu.atoms()) s += f(a.x) * std::conj(a.weight);
  return s;
}

Complex spectral_pairing(const TrigPolynomial& f, const SpectralData& data) {
  require_same_dim(f.dim(), data.dim(), "polynomial and data dimensions differ");
  Complex s = 0.0;
  const auto& support = f.support();
  for (std::size_t j = 0; j < support.size(); ++j) {
    auto v = data.find(support[j]);
    if (!v) {
      throw Error(ErrorCode::kInvalidArgument,
                  "data missing frequency " + support[j].to_string());
    }
    s += f.coefficients()[j] * std::conj(*v);
  }
  return s;
}

}  // namespace minext
