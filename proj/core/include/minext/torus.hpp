#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace minext {

// Absolute tolerance for identifying two torus points.
inline constexpr double kPointTolerance = 1e-9;

// Reduces x into [0, 1).
double wrap_unit(double x);

// Wraparound distance on the circle: min(|a - b|, 1 - |a - b|) after reduction.
double circle_distance(double a, double b);

// A point of the d-dimensional torus (R/Z)^d. Coordinates are stored reduced
// into [0, 1).
class TorusPoint {
 public:
  explicit TorusPoint(std::vector<double> coords);
  TorusPoint(std::initializer_list<double> coords);

  static TorusPoint origin(int dim);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  TorusPoint operator+(const TorusPoint& other) const;
  TorusPoint operator-(const TorusPoint& other) const;

  // Tolerance-aware equality with kPointTolerance.
  bool operator==(const TorusPoint& other) const;

  std::string to_string() const;

 private:
  std::vector<double> coords_;
};

// Torus l-infinity distance with per-coordinate wraparound.
double torus_distance(const TorusPoint& a, const TorusPoint& b);

bool approx_equal(const TorusPoint& a, const TorusPoint& b,
                  double tol = kPointTolerance);

// A frequency m in Z^d.
class Frequency {
 public:
  explicit Frequency(std::vector<int> components);
  Frequency(std::initializer_list<int> components);

  static Frequency zero(int dim);

  int dim() const { return static_cast<int>(components_.size()); }
  int operator[](std::size_t i) const { return components_[i]; }
  std::span<const int> components() const { return components_; }

  Frequency operator+(const Frequency& other) const;
  Frequency operator-(const Frequency& other) const;
  Frequency operator-() const;

  // m . x as a real number (not reduced).
  double dot(const TorusPoint& x) const;
  // max_i |m_i|
  int max_abs() const;

  auto operator<=>(const Frequency& other) const = default;
  bool operator==(const Frequency& other) const = default;

  std::string to_string() const;

 private:
  std::vector<int> components_;
};

// Finite, nonempty, insertion-ordered set of distinct frequencies sharing one
// dimension.
class FrequencySet {
 public:
  explicit FrequencySet(std::vector<Frequency> elements);

  // {lo, ..., hi} in one dimension.
  static FrequencySet range_1d(int lo, int hi);
  // {lo, ..., hi}^d.
  static FrequencySet cube(int dim, int lo, int hi);
  // Cartesian product; the left factor varies slowest.
  static FrequencySet product(const FrequencySet& a, const FrequencySet& b);

  int dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const Frequency& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Frequency>& elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool contains(const Frequency& m) const;
  // Position of m in the ordered set; throws if absent.
  std::size_t index_of(const Frequency& m) const;
  // max over elements of max_abs().
  int max_abs() const;

  // Set shifted by n, preserving order.
  FrequencySet shifted(const Frequency& n) const;
  // The difference set {m - n}, sorted lexicographically.
  FrequencySet differences() const;

  bool operator==(const FrequencySet& other) const {
    return elements_ == other.elements_;
  }

 private:
  int dim_ = 0;
  std::vector<Frequency> elements_;
  std::map<Frequency, std::size_t> index_;
};

}  // namespace minext
