#include "minext/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "minext/error.hpp"
#include "minext/json_io.hpp"

namespace minext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double distance_to_integer(double v) { return std::fabs(v - std::round(v)); }

RationalVector mat_vec(const RationalMatrix& m, const RationalVector& v) {
  RationalVector out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

TorusPoint to_point(const RationalVector& v) {
  std::vector<double> c;
  for (const auto& r : v) c.push_back(to_double(r));
  return TorusPoint(std::move(c));
}

Json rational_list(const RationalVector& v) {
  Json arr = Json::array();
  for (const auto& r : v) arr.push_back(to_string(r));
  return arr;
}

Json frequency_json(const Frequency& m) {
  return Json(std::vector<int>(m.components().begin(), m.components().end()));
}

Json family_json(const HyperplaneFamily& f) {
  Json arr = Json::array();
  for (const auto& h : f.planes) arr.push_back({{"difference", frequency_json(h.difference)}, {"offset", h.offset}});
  return arr;
}

// Constraint x . difference + offset in Z for every distinct pair of Gamma.
HyperplaneFamily pair_family(const GammaSet& gamma, const SpectralData& data) {
  HyperplaneFamily f;
  for (std::size_t i = 0; i < gamma.members.size(); ++i) {
    for (std::size_t j = i + 1; j < gamma.members.size(); ++j) {
      const Frequency& m = gamma.members[i];
      const Frequency& n = gamma.members[j];
      f.planes.push_back({m - n, pair_offset(m, n, data)});
    }
  }
  return f;
}

std::vector<double> solutions_1d(const Hyperplane& h) {
  const int k = h.difference[0];
  std::vector<double> xs;
  for (int j = 0; j < std::abs(k); ++j) xs.push_back(wrap_unit((j - h.offset) / k));
  return xs;
}

}  // namespace

AdmissibilityRange admissibility_range(const SpectralData& data, std::optional<double> mu_norm,
                                       const std::vector<double>& extrapolation_norms) {
  AdmissibilityRange r;
  r.lower = data.sup_norm();
  r.lower_note = "max |data|";
  r.upper = kInf;
  r.upper_note = "none";
  if (mu_norm) {
    if (*mu_norm < 0.0) throw Error(ErrorCode::kInvalidArgument, "mu_norm must be nonnegative");
    r.upper = *mu_norm;
    r.upper_note = "||mu||";
  }
  for (std::size_t i = 0; i < extrapolation_norms.size(); ++i) {
    if (extrapolation_norms[i] < r.upper) {
      r.upper = extrapolation_norms[i];
      r.upper_note = "extrapolation #" + std::to_string(i);
    }
  }
  if (r.upper < r.lower * (1.0 - 1e-12) - 1e-15) {
    std::ostringstream os;
    os.precision(17);
    os << "upper bound " << r.upper << " (" << r.upper_note << ") is below max |data| = " << r.lower;
    throw Error(ErrorCode::kInconsistent, os.str());
  }
  r.upper = std::max(r.upper, r.lower);
  return r;
}

AdmissibilityRange admissibility_range(const SpectralData& data, std::optional<double> mu_norm,
                                       const std::vector<DiscreteMeasure>& extrapolations, double tol) {
  std::vector<double> norms;
  for (std::size_t i = 0; i < extrapolations.size(); ++i) {
    SpectralData f = fourier_transform(extrapolations[i], data.lambda());
    double err = 0.0;
    for (std::size_t j = 0; j < data.size(); ++j) err = std::max(err, std::abs(f[j] - data[j]));
    if (err > tol) {
      throw Error(ErrorCode::kInconsistent, "extrapolation #" + std::to_string(i) +
                                                " does not reproduce the data (error " + std::to_string(err) + ")");
    }
    norms.push_back(tv_norm(extrapolations[i]));
  }
  return admissibility_range(data, mu_norm, norms);
}

bool GammaSet::contains(const Frequency& m) const {
  return std::find(members.begin(), members.end(), m) != members.end();
}

double default_gamma_tolerance(double solver_gap_tol) { return std::max(1e-7, 10.0 * solver_gap_tol); }

GammaSet gamma_set(const SpectralData& data, double epsilon, double tol) {
  if (epsilon < data.sup_norm() * (1.0 - tol) - 1e-14) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon is below max |data|");
  }
  GammaSet g;
  g.epsilon = epsilon;
  g.tolerance = tol;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (std::fabs(std::abs(data[i]) - epsilon) <= tol * epsilon + 1e-14) g.members.push_back(data.lambda()[i]);
  }
  return g;
}

double pair_offset(const Frequency& m, const Frequency& n, const SpectralData& data) {
  if (m == n) return 0.0;
  Complex dn = data.at(n);
  if (std::abs(dn) == 0.0) throw Error(ErrorCode::kInvalidArgument, "pair offset with zero denominator");
  return wrap_unit(std::arg(data.at(m) / dn) / (2.0 * std::numbers::pi));
}

double Hyperplane::violation(const TorusPoint& x) const { return distance_to_integer(difference.dot(x) + offset); }

bool HyperplaneFamily::contains(const TorusPoint& x, double tol) const {
  return std::all_of(planes.begin(), planes.end(), [&](const Hyperplane& h) { return h.violation(x) <= tol; });
}

std::vector<ReducedHyperplane> reduce(const HyperplaneFamily& family) {
  std::vector<ReducedHyperplane> out;
  for (const auto& h : family.planes) {
    std::vector<int> c(h.difference.components().begin(), h.difference.components().end());
    int g = 0;
    for (int v : c) g = std::gcd(g, v);
    if (g == 0) continue;
    int sign = 1;
    for (int v : c) {
      if (v != 0) {
        sign = v > 0 ? 1 : -1;
        break;
      }
    }
    for (int& v : c) v = v * sign / g;
    Frequency dir(std::move(c));
    // g t + sign * offset in Z, with t = x . dir
    std::vector<double> values;
    for (int j = 0; j < g; ++j) values.push_back(wrap_unit((j - sign * h.offset) / g));
    std::sort(values.begin(), values.end());

    auto it = std::find_if(out.begin(), out.end(), [&](const ReducedHyperplane& r) { return r.direction == dir; });
    if (it == out.end()) {
      out.push_back({std::move(dir), std::move(values)});
      continue;
    }
    std::vector<double> kept;
    for (double v : it->values) {
      bool hit = std::any_of(values.begin(), values.end(), [&](double w) { return circle_distance(v, w) < 1e-9; });
      if (hit) kept.push_back(v);
    }
    it->values = std::move(kept);
  }
  return out;
}

Integer Lattice::index() const {
  RationalMatrix q(p);
  Rational det = 1;
  const std::size_t n = q.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && q[r][c] == 0) ++r;
    if (r == n) return 0;
    if (r != c) {
      std::swap(q[r], q[c]);
      det = -det;
    }
    det *= q[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Rational f = q[i][c] / q[c][c];
      for (std::size_t j = c; j < n; ++j) q[i][j] -= f * q[c][j];
    }
  }
  return boost::multiprecision::numerator(Rational(abs(det)));
}

bool Lattice::contains(const RationalVector& x) const {
  RationalVector v = mat_vec(p, x);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integer(v[i] + beta[i])) return false;
  }
  return true;
}

bool Lattice::contains(const TorusPoint& x, double tol) const {
  for (std::size_t i = 0; i < p.size(); ++i) {
    double s = to_double(beta[i]);
    for (std::size_t j = 0; j < p[i].size(); ++j) s += to_double(p[i][j]) * x[j];
    if (distance_to_integer(s) > tol) return false;
  }
  return true;
}

std::vector<RationalVector> Lattice::points_in_torus() const {
  const Integer n = index();
  if (n > 1000000) throw Error(ErrorCode::kUnsupported, "lattice has more than 10^6 points per period");
  auto reduce_mod1 = [](RationalVector v) {
    for (auto& r : v) r = frac(r);
    return v;
  };
  std::set<RationalVector> group;
  std::vector<RationalVector> frontier{RationalVector(static_cast<std::size_t>(dim()), Rational(0))};
  group.insert(frontier.front());
  while (!frontier.empty()) {
    RationalVector v = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& q : generators) {
      RationalVector w(v);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += q[i];
      w = reduce_mod1(std::move(w));
      if (group.insert(w).second) frontier.push_back(std::move(w));
    }
  }
  std::set<RationalVector> pts;
  for (const auto& g : group) {
    RationalVector w(g);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += x0[i];
    pts.insert(reduce_mod1(std::move(w)));
  }
  return {pts.begin(), pts.end()};
}

RationalVector Lattice::base_point() const { return points_in_torus().front(); }

Lattice lattice_solve(const std::vector<Frequency>& differences, const RationalVector& offsets) {
  const std::size_t d = differences.size();
  if (d == 0 || offsets.size() != d) {
    throw Error(ErrorCode::kInvalidArgument, "lattice_solve needs d differences and d offsets");
  }
  RationalMatrix p(d, RationalVector(d));
  for (std::size_t i = 0; i < d; ++i) {
    if (static_cast<std::size_t>(differences[i].dim()) != d) {
      throw Error(ErrorCode::kDimensionMismatch, "difference vectors must have dimension d");
    }
    for (std::size_t j = 0; j < d; ++j) p[i][j] = differences[i][j];
  }

  RationalMatrix aug(d, RationalVector(2 * d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) aug[i][j] = p[i][j];
    aug[i][d + i] = 1;
  }
  RowEchelon e = row_reduce(aug);
  bool full = e.rank() == static_cast<int>(d);
  for (std::size_t i = 0; full && i < d; ++i) full = e.pivot_columns[i] == static_cast<int>(i);
  if (!full) {
    RationalMatrix pt(d, RationalVector(d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) pt[j][i] = p[i][j];
    }
    int rank = row_reduce(p).rank();
    auto kernel = integer_kernel_vector(pt);
    std::ostringstream os;
    os << "difference vectors are linearly dependent: rank " << rank << " < " << d << "; relation (";
    for (std::size_t i = 0; i < kernel.size(); ++i) os << (i ? ", " : "") << kernel[i];
    os << ")";
    throw Error(ErrorCode::kRankDeficient, os.str());
  }

  Lattice lat;
  lat.p = p;
  lat.beta = offsets;
  lat.beta_error.assign(d, 0.0);
  RationalMatrix inv(d, RationalVector(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) inv[i][j] = e.reduced[i][d + j];
  }
  for (std::size_t k = 0; k < d; ++k) {
    RationalVector q(d);
    for (std::size_t i = 0; i < d; ++i) q[i] = inv[i][k];
    lat.generators.push_back(std::move(q));
  }
  RationalVector minus_beta(offsets);
  for (auto& b : minus_beta) b = -b;
  lat.x0 = mat_vec(inv, minus_beta);

  for (std::size_t j = 0; j < d; ++j) {
    RationalVector col = mat_vec(p, lat.generators[j]);
    for (std::size_t i = 0; i < d; ++i) {
      if (col[i] != (i == j ? 1 : 0)) throw Error(ErrorCode::kNumerical, "lattice inverse check failed");
    }
  }
  return lat;
}

Lattice lattice_solve(const std::vector<Frequency>& differences, const std::vector<double>& offsets,
                      long long max_denominator) {
  RationalVector beta;
  std::vector<double> err;
  for (double o : offsets) {
    auto a = approximate_rational(o, max_denominator);
    beta.push_back(a.value);
    err.push_back(a.error);
  }
  Lattice lat = lattice_solve(differences, beta);
  lat.beta_error = std::move(err);
  return lat;
}

std::string kind_name(const SupportStructure& s) {
  struct V {
    std::string operator()(const PointSupport&) const { return "points"; }
    std::string operator()(const HyperplaneSupport&) const { return "hyperplanes"; }
    std::string operator()(const LatticeSupport&) const { return "lattice"; }
    std::string operator()(const WholeTorus&) const { return "whole-torus"; }
    std::string operator()(const UnknownSupport&) const { return "unknown"; }
  };
  return std::visit(V{}, s);
}

std::optional<std::vector<TorusPoint>> finite_support(const SupportStructure& s) {
  if (auto* p = std::get_if<PointSupport>(&s)) return p->points;
  if (auto* l = std::get_if<LatticeSupport>(&s)) return l->points;
  return std::nullopt;
}

bool structure_contains(const SupportStructure& s, const TorusPoint& x, double tol) {
  if (auto pts = finite_support(s)) {
    return std::any_of(pts->begin(), pts->end(), [&](const TorusPoint& p) { return approx_equal(p, x, tol); });
  }
  if (auto* h = std::get_if<HyperplaneSupport>(&s)) return h->family.contains(x, tol);
  return true;
}

SupportStructure support_structure(const GammaSet& gamma, const SpectralData& data, int dim) {
  if (dim != data.dim()) throw Error(ErrorCode::kDimensionMismatch, "structure dimension differs from data");
  if (gamma.empty()) return UnknownSupport{UnknownReason::kAnalyticZeroSet, {}};
  if (gamma.size() == 1) return UnknownSupport{UnknownReason::kSingleGamma, {}};

  HyperplaneFamily family = pair_family(gamma, data);

  if (dim == 1) {
    std::vector<double> xs = solutions_1d(family.planes.front());
    for (std::size_t i = 1; i < family.planes.size(); ++i) {
      std::vector<double> next = solutions_1d(family.planes[i]);
      std::erase_if(xs, [&](double x) {
        return std::none_of(next.begin(), next.end(), [&](double y) { return circle_distance(x, y) < 1e-8; });
      });
    }
    std::sort(xs.begin(), xs.end());
    PointSupport ps;
    for (double x : xs) ps.points.push_back(TorusPoint{x});
    ps.origin = "gamma";
    ps.family = std::move(family);
    return ps;
  }

  // Greedily collect d exactly independent differences.
  std::vector<std::size_t> chosen;
  RationalMatrix rows;
  for (std::size_t i = 0; i < family.planes.size() && chosen.size() < static_cast<std::size_t>(dim); ++i) {
    RationalVector r;
    for (int c : family.planes[i].difference.components()) r.emplace_back(c);
    RationalMatrix trial(rows);
    trial.push_back(r);
    if (row_reduce(trial).rank() == static_cast<int>(trial.size())) {
      rows = std::move(trial);
      chosen.push_back(i);
    }
  }
  if (chosen.size() < static_cast<std::size_t>(dim)) {
    HyperplaneSupport hs;
    hs.reduced = reduce(family);
    hs.family = std::move(family);
    return hs;
  }

  std::vector<Frequency> diffs;
  std::vector<double> offsets;
  for (std::size_t i : chosen) {
    diffs.push_back(family.planes[i].difference);
    offsets.push_back(family.planes[i].offset);
  }
  LatticeSupport ls{lattice_solve(diffs, offsets), family, {}};
  for (const auto& v : ls.lattice.points_in_torus()) {
    TorusPoint x = to_point(v);
    if (family.contains(x, 1e-8)) ls.points.push_back(x);
  }
  return ls;
}

double minimum_separation(const DiscreteMeasure& mu) {
  double best = kInf;
  const auto& a = mu.atoms();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) best = std::min(best, torus_distance(a[i].x, a[j].x));
  }
  return best;
}

bool separation_check(const DiscreteMeasure& mu, int m, double c) {
  if (m < 1 || !(c > 0.0)) throw Error(ErrorCode::kInvalidArgument, "separation_check needs M >= 1 and C > 0");
  return minimum_separation(mu) >= c / m;
}

std::string to_string(CfgClause clause) {
  switch (clause) {
    case CfgClause::kNone: return "none";
    case CfgClause::kOneDimSeparation2: return "d1-C2";
    case CfgClause::kOneDimRealSeparation187: return "d1-real-C1.87";
    case CfgClause::kOneDimSeparation126: return "d1-C1.26";
    case CfgClause::kTwoDimRealSeparation238: return "d2-real-C2.38";
  }
  return "none";
}

CfgClause cfg_guarantee(const DiscreteMeasure& mu, int m, int dim, bool real_valued) {
  if (m < 1) return CfgClause::kNone;
  if (mu.dim() != dim) throw Error(ErrorCode::kDimensionMismatch, "measure dimension differs from d");
  const bool real = real_valued && std::all_of(mu.atoms().begin(), mu.atoms().end(), [](const Atom& a) {
                      return std::fabs(a.weight.imag()) <= 1e-12;
                    });
  if (dim == 1) {
    if (m >= 128 && separation_check(mu, m, 2.0)) return CfgClause::kOneDimSeparation2;
    if (real && m >= 128 && separation_check(mu, m, 1.87)) return CfgClause::kOneDimRealSeparation187;
    if (m >= 1000 && separation_check(mu, m, 1.26)) return CfgClause::kOneDimSeparation126;
  }
  if (dim == 2 && real && m >= 512 && separation_check(mu, m, 2.38)) return CfgClause::kTwoDimRealSeparation238;
  return CfgClause::kNone;
}

FailureDiagnosis algorithm_failure_diagnosis(bool phi_degenerate, const SpectralData& data, double tol) {
  if (!phi_degenerate) {
    throw Error(ErrorCode::kInvalidArgument, "failure diagnosis applies only to a degenerate certificate");
  }
  FailureDiagnosis f;
  f.epsilon = data.sup_norm();
  f.gamma = gamma_set(data, f.epsilon, tol);
  if (f.gamma.empty()) throw Error(ErrorCode::kNumerical, "Gamma is empty at epsilon = max |data|");
  return f;
}

Json gamma_to_json(const GammaSet& g) {
  Json members = Json::array();
  for (const auto& m : g.members) members.push_back(frequency_json(m));
  return Json{{"members", members}, {"epsilon", g.epsilon}, {"tolerance", g.tolerance}};
}

Json structure_to_json(const SupportStructure& s) {
  Json j{{"kind", kind_name(s)}};
  if (auto* p = std::get_if<PointSupport>(&s)) {
    j["points"] = points_to_json(p->points);
    j["origin"] = p->origin;
    j["hyperplanes"] = family_json(p->family);
  } else if (auto* h = std::get_if<HyperplaneSupport>(&s)) {
    j["hyperplanes"] = family_json(h->family);
    Json red = Json::array();
    for (const auto& r : h->reduced) red.push_back({{"direction", frequency_json(r.direction)}, {"values", r.values}});
    j["reduced"] = red;
  } else if (auto* l = std::get_if<LatticeSupport>(&s)) {
    Json p = Json::array();
    for (const auto& row : l->lattice.p) p.push_back(rational_list(row));
    Json gens = Json::array();
    for (const auto& q : l->lattice.generators) gens.push_back(rational_list(q));
    j["lattice"] = {{"p", p},
                    {"beta", rational_list(l->lattice.beta)},
                    {"beta_error", l->lattice.beta_error},
                    {"x0", rational_list(l->lattice.x0)},
                    {"base_point", rational_list(l->lattice.base_point())},
                    {"generators", gens},
                    {"index", l->lattice.index().str()}};
    j["hyperplanes"] = family_json(l->family);
    j["points"] = points_to_json(l->points);
  } else if (auto* u = std::get_if<UnknownSupport>(&s)) {
    j["reason"] = u->reason == UnknownReason::kSingleGamma ? "single-gamma" : "analytic-zero-set";
    j["samples"] = points_to_json(u->samples);
  }
  return j;
}

}  // namespace minext
