#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace minext {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

struct RationalApproximation {
  Rational value;
  // |x - value|
  double error = 0.0;
};

// Best rational approximation with denominator at most max_denominator, by
// continued fractions (convergents and semiconvergents).
RationalApproximation approximate_rational(double x, long long max_denominator);

double to_double(const Rational& r);
// "p/q", or "p" for integers.
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

// Fractional part in [0, 1).
Rational frac(const Rational& r);

struct RowEchelon {
  RationalMatrix reduced;
  std::vector<int> pivot_columns;
  int rank() const { return static_cast<int>(pivot_columns.size()); }
};

// Reduced row echelon form by exact Gauss-Jordan elimination.
RowEchelon row_reduce(RationalMatrix m);

// A nonzero integer vector v with m v = 0, or an empty vector when m has full
// column rank.
std::vector<Integer> integer_kernel_vector(const RationalMatrix& m);

}  // namespace minext
