#include "minext/torus.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "minext/error.hpp"

namespace minext {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kAliasing: return "aliasing";
    case ErrorCode::kDegenerateCertificate: return "degenerate-certificate";
    case ErrorCode::kCertificateRejected: return "certificate-rejected";
    case ErrorCode::kRankDeficient: return "rank-deficient";
    case ErrorCode::kInconsistent: return "inconsistent";
    case ErrorCode::kNotApplicable: return "not-applicable";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kNumerical: return "numerical";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

double wrap_unit(double x) {
  double r = x - std::floor(x);
  // snap values a rounding error below 1 back to 0
  if (r >= 1.0 - 1e-14) r = 0.0;
  return r;
}

double circle_distance(double a, double b) {
  double d = std::fabs(wrap_unit(a) - wrap_unit(b));
  return std::min(d, 1.0 - d);
}

TorusPoint::TorusPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "torus point needs at least one coordinate");
  }
  for (double& c : coords_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kInvalidArgument, "torus point coordinate is not finite");
    }
    c = wrap_unit(c);
  }
}

TorusPoint::TorusPoint(std::initializer_list<double> coords)
    : TorusPoint(std::vector<double>(coords)) {}

TorusPoint TorusPoint::origin(int dim) {
  return TorusPoint(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
}

TorusPoint TorusPoint::operator+(const TorusPoint& other) const {
  if (dim() != other.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "torus point dimensions differ");
  }
  std::vector<double> c(coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coords_[i];
  return TorusPoint(std::move(c));
}

TorusPoint TorusPoint::operator-(const TorusPoint& other) const {
  if (dim() != other.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "torus point dimensions differ");
  }
  std::vector<double> c(coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= other.coords_[i];
  return TorusPoint(std::move(c));
}

bool TorusPoint::operator==(const TorusPoint& other) const {
  return approx_equal(*this, other);
}

std::string TorusPoint::to_string() const {
  std::ostringstream os;
  os.precision(12);
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ", ";
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "torus point dimensions differ");
  }
  double d = 0.0;
  for (int i = 0; i < a.dim(); ++i) d = std::max(d, circle_distance(a[i], b[i]));
  return d;
}

bool approx_equal(const TorusPoint& a, const TorusPoint& b, double tol) {
  return a.dim() == b.dim() && torus_distance(a, b) <= tol;
}

Frequency::Frequency(std::vector<int> components) : components_(std::move(components)) {
  if (components_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "frequency needs at least one component");
  }
}

Frequency::Frequency(std::initializer_list<int> components)
    : Frequency(std::vector<int>(components)) {}

Frequency Frequency::zero(int dim) {
  return Frequency(std::vector<int>(static_cast<std::size_t>(dim), 0));
}

Frequency Frequency::operator+(const Frequency& other) const {
  if (dim() != other.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "frequency dimensions differ");
  }
  std::vector<int> c(components_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.components_[i];
  return Frequency(std::move(c));
}

Frequency Frequency::operator-(const Frequency& other) const {
  return *this + (-other);
}

Frequency Frequency::operator-() const {
  std::vector<int> c(components_);
  for (int& v : c) v = -v;
  return Frequency(std::move(c));
}

double Frequency::dot(const TorusPoint& x) const {
  if (dim() != x.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "frequency and point dimensions differ");
  }
  double s = 0.0;
  for (int i = 0; i < dim(); ++i) s += components_[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
  return s;
}

int Frequency::max_abs() const {
  int r = 0;
  for (int v : components_) r = std::max(r, std::abs(v));
  return r;
}

std::string Frequency::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) os << ", ";
    os << components_[i];
  }
  os << ')';
  return os.str();
}

FrequencySet::FrequencySet(std::vector<Frequency> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "frequency set must be nonempty");
  }
  dim_ = elements_.front().dim();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].dim() != dim_) {
      throw Error(ErrorCode::kDimensionMismatch, "frequency set mixes dimensions");
    }
    if (!index_.emplace(elements_[i], i).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate frequency " + elements_[i].to_string());
    }
  }
}

FrequencySet FrequencySet::range_1d(int lo, int hi) {
  std::vector<Frequency> e;
  for (int m = lo; m <= hi; ++m) e.push_back(Frequency{m});
  return FrequencySet(std::move(e));
}

FrequencySet FrequencySet::cube(int dim, int lo, int hi) {
  FrequencySet s = range_1d(lo, hi);
  FrequencySet axis = s;
  for (int i = 1; i < dim; ++i) s = product(s, axis);
  return s;
}

FrequencySet FrequencySet::product(const FrequencySet& a, const FrequencySet& b) {
  std::vector<Frequency> e;
  e.reserve(a.size() * b.size());
  for (const auto& m : a) {
    for (const auto& n : b) {
      std::vector<int> c(m.components().begin(), m.components().end());
      c.insert(c.end(), n.components().begin(), n.components().end());
      e.emplace_back(std::move(c));
    }
  }
  return FrequencySet(std::move(e));
}

bool FrequencySet::contains(const Frequency& m) const { return index_.count(m) > 0; }

std::size_t FrequencySet::index_of(const Frequency& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "frequency " + m.to_string() + " not in set");
  }
  return it->second;
}

int FrequencySet::max_abs() const {
  int r = 0;
  for (const auto& m : elements_) r = std::max(r, m.max_abs());
  return r;
}

FrequencySet FrequencySet::shifted(const Frequency& n) const {
  std::vector<Frequency> e;
  e.reserve(elements_.size());
  for (const auto& m : elements_) e.push_back(m + n);
  return FrequencySet(std::move(e));
}

FrequencySet FrequencySet::differences() const {
  std::set<Frequency> seen;
  for (const auto& m : elements_) {
    for (const auto& n : elements_) seen.insert(m - n);
  }
  return FrequencySet(std::vector<Frequency>(seen.begin(), seen.end()));
}

}  // namespace minext
