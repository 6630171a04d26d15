#include "minext/rational.hpp"

#include <cmath>

#include "minext/error.hpp"

namespace minext {

namespace {

Integer floor_div(const Integer& n, const Integer& d) {
  Integer q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

Integer floor_of(const Rational& r) {
  return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

}  // namespace

RationalApproximation approximate_rational(double x, long long max_denominator) {
  if (!std::isfinite(x)) throw Error(ErrorCode::kInvalidArgument, "cannot approximate a non-finite value");
  if (max_denominator < 1) throw Error(ErrorCode::kInvalidArgument, "max_denominator must be >= 1");
  const Rational target(x);  // exact binary value
  const Integer cap(max_denominator);

  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Rational v = target;
  Rational best;
  while (true) {
    Integer a = floor_of(v);
    Integer h2 = a * h1 + h0;
    Integer k2 = a * k1 + k0;
    if (k2 > cap) {
      Integer t = (cap - k0) / k1;
      Rational semi(t * h1 + h0, t * k1 + k0);
      Rational conv(h1, k1);
      best = abs(semi - target) < abs(conv - target) ? semi : conv;
      break;
    }
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    Rational rest = v - a;
    if (rest == 0) {
      best = Rational(h1, k1);
      break;
    }
    v = 1 / rest;
  }
  return {best, std::fabs(to_double(best - target))};
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  auto n = boost::multiprecision::numerator(r);
  auto d = boost::multiprecision::denominator(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer d(s.substr(slash + 1));
    if (d == 0) throw Error(ErrorCode::kParse, "zero denominator in " + s);
    return Rational(Integer(s.substr(0, slash)), d);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(ErrorCode::kParse, "not a rational: " + s);
  }
}

Rational frac(const Rational& r) { return r - Rational(floor_of(r)); }

RowEchelon row_reduce(RationalMatrix m) {
  RowEchelon out;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    out.pivot_columns.push_back(static_cast<int>(c));
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::vector<Integer> integer_kernel_vector(const RationalMatrix& m) {
  if (m.empty()) return {};
  const std::size_t cols = m[0].size();
  RowEchelon e = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : e.pivot_columns) is_pivot[static_cast<std::size_t>(c)] = true;
  std::size_t free = 0;
  while (free < cols && is_pivot[free]) ++free;
  if (free == cols) return {};

  RationalVector v(cols, Rational(0));
  v[free] = 1;
  for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) {
    v[static_cast<std::size_t>(e.pivot_columns[i])] = -e.reduced[i][free];
  }
  Integer l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& x : v) {
    Integer n = boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x));
    out.push_back(n);
    g = boost::multiprecision::gcd(g, abs(n));
  }
  for (auto& n : out) n /= g;
  return out;
}

}  // namespace minext
