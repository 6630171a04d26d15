#include "minext/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "minext/certificate.hpp"
#include "minext/error.hpp"
#include "minext/pipeline.hpp"
#include "minext/positivity.hpp"
#include "minext/special_measures.hpp"
#include "minext/structure.hpp"
#include "minext/uniqueness.hpp"

namespace minext {

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;

FrequencySet e5_lambda() {
  std::vector<Frequency> f;
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      if ((a == 1 && b == -1) || (a == -1 && b == 1)) continue;
      f.push_back(Frequency{a, b});
    }
  }
  return FrequencySet(std::move(f));
}

DiscreteMeasure two_atoms(double x0, Complex w0, double x1, Complex w1) {
  return DiscreteMeasure::from_points({TorusPoint{x0}, TorusPoint{x1}}, {w0, w1});
}

ExampleInput from_measure(std::string id, FrequencySet lambda, DiscreteMeasure mu) {
  SpectralData data = fourier_transform(mu, lambda);
  return {std::move(id), std::move(lambda), std::move(mu), std::move(data)};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string fmt_points(const std::vector<TorusPoint>& pts) {
  std::string s = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? ", " : "") + pts[i].to_string();
  return s + "}";
}

std::string fmt_gamma(const GammaSet& g) {
  std::string s = "{";
  for (std::size_t i = 0; i < g.members.size(); ++i) s += (i ? ", " : "") + g.members[i].to_string();
  return s + "}";
}

class Checks {
 public:
  explicit Checks(std::string id) { result_.id = std::move(id); }

  void add(std::string name, bool pass, std::string detail = {}) {
    result_.rows.push_back({std::move(name), pass, std::move(detail)});
  }

  // Runs f and records a failed row if it throws.
  template <typename F>
  void guarded(const std::string& name, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      add(name, false, std::string("threw: ") + e.what());
    }
  }

  ReproduceResult take() { return std::move(result_); }

 private:
  ReproduceResult result_;
};

bool same_points(std::vector<TorusPoint> got, std::vector<TorusPoint> want, double tol) {
  if (got.size() != want.size()) return false;
  for (const auto& w : want) {
    auto it = std::find_if(got.begin(), got.end(), [&](const TorusPoint& g) { return approx_equal(g, w, tol); });
    if (it == got.end()) return false;
    got.erase(it);
  }
  return true;
}

bool measures_close(const DiscreteMeasure& a, const DiscreteMeasure& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& atom : b.atoms()) {
    auto it = std::find_if(a.atoms().begin(), a.atoms().end(),
                           [&](const Atom& x) { return approx_equal(x.x, atom.x, tol); });
    if (it == a.atoms().end() || std::abs(it->weight - atom.weight) > tol) return false;
  }
  return true;
}

double data_error(const DiscreteMeasure& nu, const SpectralData& data) {
  SpectralData f = fourier_transform(nu, data.lambda());
  double e = 0.0;
  for (std::size_t j = 0; j < data.size(); ++j) e = std::max(e, std::abs(f[j] - data[j]));
  return e;
}

PipelineReport run(const ExampleInput& in, int grid, std::optional<double> mu_norm = std::nullopt) {
  PipelineOptions o;
  o.grid = grid;
  o.mu_norm = mu_norm;
  return analyze(in.data, o);
}

void check_epsilon(Checks& c, const PipelineReport& r, double want, double tol) {
  c.add("epsilon", std::fabs(r.epsilon - want) <= tol,
        "epsilon = " + fmt(r.epsilon) + ", expected " + fmt(want) + " +- " + fmt(tol) + " (" + r.route + ")");
}

void check_gamma(Checks& c, const GammaSet& g, std::vector<Frequency> want) {
  std::vector<Frequency> got = g.members;
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  c.add("Gamma", got == want, "Gamma = " + fmt_gamma(g));
}

ReproduceResult run_e1() {
  Checks c("e1");
  ExampleInput in = example_input("e1");
  c.guarded("pipeline", [&] {
    PipelineReport r = run(in, 64);
    check_epsilon(c, r, 2.0, 1e-6);
    check_gamma(c, r.gamma, {Frequency{0}});
    c.add("structure Unknown(#Gamma=1)", kind_name(r.structure) == "unknown", kind_name(r.structure));
  });
  c.guarded("positivity", [&] {
    ToeplitzWindow w = toeplitz_window(in.data, 0, 1);
    c.add("window (n=0, M=1) extendable", is_pd_extendable(w), "min eigenvalue " + fmt(min_eigenvalue(w)));
    DiscreteMeasure nu = caratheodory_atoms(w);
    bool nonneg = std::all_of(nu.atoms().begin(), nu.atoms().end(),
                              [](const Atom& a) { return a.weight.real() >= 0.0 && a.weight.imag() == 0.0; });
    SpectralData f = fourier_transform(nu, FrequencySet::range_1d(0, 1));
    bool moments = std::abs(f[0] - 2.0) <= 1e-7 && std::abs(f[1]) <= 1e-7;
    c.add("Caratheodory atoms nonnegative with moments (2, 0)", nonneg && moments,
          std::to_string(nu.size()) + " atoms");
  });
  c.guarded("nu family", [&] {
    bool ok = true;
    for (double y : {0.0, 0.125, 1.0 / 3.0}) {
      for (int k : {2, 3, 5}) {
        DiscreteMeasure nu = nu_family_1d(y, k);
        ok = ok && data_error(nu, in.data) <= 1e-12 && std::fabs(tv_norm(nu) - 2.0) <= 1e-12;
      }
    }
    c.add("nu_{y,K} feasible with norm 2", ok, "(y, K) in {0, 1/8, 1/3} x {2, 3, 5}");
  });
  c.guarded("Fejer family", [&] {
    bool ok = true;
    double worst = INFINITY;
    for (auto [n, cc] : std::vector<std::pair<int, double>>{{2, 6.0 / 7.0}, {3, 0.8}, {10, 22.0 / 31.0}}) {
      TrigPolynomial f = fejer_family({n, cc});
      ok = ok && f.coefficient(Frequency{0}) == Complex(2.0);
      for (int k = 0; k < 4096; ++k) worst = std::min(worst, f(TorusPoint{k / 4096.0}).real());
    }
    c.add("Fejer family nonnegative, coefficient 0 = 2", ok && worst >= -1e-9, "minimum " + fmt(worst));
  });
  return c.take();
}

void check_unique(Checks& c, const PipelineReport& r, const DiscreteMeasure& want, double tol) {
  c.add("verdict UNIQUE", r.uniqueness.verdict == Verdict::kUnique,
        to_string(r.uniqueness.verdict) + (r.uniqueness.reason.empty() ? "" : ": " + r.uniqueness.reason));
  c.add("recovered measure", measures_close(r.uniqueness.measure, want, tol),
        std::to_string(r.uniqueness.measure.size()) + " atoms, residual " + fmt(r.uniqueness.residual));
}

ReproduceResult run_e2() {
  Checks c("e2");
  ExampleInput in = example_input("e2");
  c.guarded("pipeline", [&] {
    PipelineReport r = run(in, 64);
    check_epsilon(c, r, 2.0, 1e-6);
    check_gamma(c, r.gamma, {Frequency{-1}, Frequency{1}});
    auto pts = finite_support(r.structure).value_or(std::vector<TorusPoint>{});
    c.add("support {0, 1/2}", same_points(pts, {TorusPoint{0.0}, TorusPoint{0.5}}, 1e-7), fmt_points(pts));
    c.add("E full column rank", has_full_column_rank(build_exponential_matrix(in.lambda, pts)));
    check_unique(c, r, *in.measure, 1e-6);
  });
  return c.take();
}

ReproduceResult run_e3() {
  Checks c("e3");
  ExampleInput in = example_input("e3");
  c.guarded("pipeline", [&] {
    PipelineReport r = run(in, 64);
    check_epsilon(c, r, kSqrt2, 1e-6);
    auto pts = finite_support(r.structure).value_or(std::vector<TorusPoint>{});
    c.add("support {3/8, 7/8}", same_points(pts, {TorusPoint{0.375}, TorusPoint{0.875}}, 1e-7), fmt_points(pts));
    check_unique(c, r, two_atoms(0.375, -kSqrt2 / 2, 0.875, kSqrt2 / 2), 1e-6);
  });
  c.guarded("admissibility", [&] {
    DiscreteMeasure nu = two_atoms(0.375, -kSqrt2 / 2, 0.875, kSqrt2 / 2);
    AdmissibilityRange a = admissibility_range(in.data, 2.0, std::vector<DiscreteMeasure>{nu});
    c.add("range collapses to [sqrt2, sqrt2]", std::fabs(a.lower - kSqrt2) <= 1e-12 && std::fabs(a.upper - kSqrt2) <= 1e-12,
          "[" + fmt(a.lower) + ", " + fmt(a.upper) + "]");
  });
  return c.take();
}

ReproduceResult run_e4() {
  Checks c("e4");
  ExampleInput in = example_input("e4");
  c.guarded("pipeline", [&] {
    PipelineReport r = run(in, 48);
    check_epsilon(c, r, 2.0, 1e-5);
    c.add("Gamma empty", r.gamma.empty(), "Gamma = " + fmt_gamma(r.gamma));
    if (!r.certificate.certificate) {
      c.add("certificate", false, r.certificate.note);
      return;
    }
    const TrigPolynomial& phi = r.certificate.certificate->poly;
    Complex pairing = inner_product(phi, *in.measure);
    c.add("certificate pairing 2", std::abs(pairing - 2.0) <= 1e-5, "pairing " + fmt(pairing.real()));
    double far_max = 0.0;
    for (int k = 0; k < 4096; ++k) {
      TorusPoint x{k / 4096.0};
      if (circle_distance(x[0], 0.0) < 0.02 || circle_distance(x[0], 1.0 / 3.0) < 0.02) continue;
      far_max = std::max(far_max, std::abs(phi(x)));
    }
    c.add("|phi| = 1 only near {0, 1/3}",
          std::fabs(std::abs(phi(TorusPoint{0.0})) - 1.0) <= 1e-5 &&
              std::fabs(std::abs(phi(TorusPoint{1.0 / 3.0})) - 1.0) <= 1e-5 && far_max <= 1.0 - 1e-3,
          "max |phi| away from support " + fmt(far_max));
    check_unique(c, r, *in.measure, 1e-5);
    const double s = 3.0 * kSqrt3;
    std::vector<Complex> want = {Complex(0.0, -1.0 / s), 4.0 / s * unit_phase(1.0 / 12.0), 2.0 / s * unit_phase(-1.0 / 12.0)};
    std::vector<Complex> got = {phi.coefficient(Frequency{-1}), phi.coefficient(Frequency{0}), phi.coefficient(Frequency{1})};
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < 3; ++i) overlap += std::conj(want[i]) * got[i];
    Complex phase = overlap / std::abs(overlap);
    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i) err = std::max(err, std::abs(got[i] - phase * want[i]));
    c.add("certificate coefficients (c, b, a) up to phase", err <= 1e-4, "max deviation " + fmt(err));
  });
  return c.take();
}

ReproduceResult run_e5() {
  Checks c("e5");
  ExampleInput in = example_input("e5");
  c.guarded("pipeline", [&] {
    PipelineReport r = run(in, 16);
    check_epsilon(c, r, 2.0, 1e-5);
    check_gamma(c, r.gamma, {Frequency{0, 0}, Frequency{1, 1}, Frequency{-1, -1}});
    const auto* h = std::get_if<HyperplaneSupport>(&r.structure);
    bool line = h && h->reduced.size() == 1 && h->reduced[0].direction == Frequency{1, 1} &&
                h->reduced[0].values.size() == 1 && circle_distance(h->reduced[0].values[0], 0.0) <= 1e-9;
    c.add("hyperplanes reduce to x1 + x2 in Z", line, kind_name(r.structure));
    c.add("verdict NOT_APPLICABLE", r.uniqueness.verdict == Verdict::kNotApplicable, to_string(r.uniqueness.verdict));
  });
  c.guarded("nu family", [&] {
    bool ok = true;
    for (double y : {0.0, 0.125}) {
      for (int k : {2, 4}) {
        DiscreteMeasure nu = nu_family_2d(y, k);
        ok = ok && data_error(nu, in.data) <= 1e-9 && std::fabs(tv_norm(nu) - 2.0) <= 1e-9;
      }
    }
    c.add("nu_{y,K} feasible with norm 2", ok, "(y, K) in {0, 1/8} x {2, 4}");
  });
  c.guarded("surface measure", [&] {
    SpectralData s = diagonal_data(in.lambda);
    bool exact = true;
    for (std::size_t j = 0; j < s.size(); ++j) exact = exact && s[j] == in.data[j];
    c.add("diagonal surface coefficients equal the data", exact);
  });
  return c.take();
}

ReproduceResult run_e6() {
  Checks c("e6");
  c.guarded("projection", [&] {
    auto lambda = FrequencySet::range_1d(-1, 1);
    auto norm_at = [&](double y) {
      DiscreteMeasure mu = two_atoms(0.0, 1.0, y, -1.0);
      return projection_extrapolation_norm(fourier_transform(mu, lambda)).value;
    };
    double v = norm_at(0.01);
    c.add("||nu_y|| < 2 at y = 0.01", v < 2.0, "norm " + fmt(v));
    double half = norm_at(0.5);
    c.add("||nu_y|| = 8/pi at y = 1/2", std::fabs(half - 8.0 / std::numbers::pi) <= 1e-6, "norm " + fmt(half));
    bool decreasing = true;
    double prev = norm_at(std::ldexp(1.0, -3));
    std::string detail = fmt(prev);
    for (int j = 4; j <= 10; ++j) {
      double cur = norm_at(std::ldexp(1.0, -j));
      decreasing = decreasing && cur / prev < 1.0;
      prev = cur;
      detail += " " + fmt(cur);
    }
    c.add("norms decrease along y = 2^-j, j = 3..10", decreasing, detail);
  });
  return c.take();
}

ReproduceResult run_lattice() {
  Checks c("lattice");
  c.guarded("lattice", [&] {
    Lattice l = lattice_solve({Frequency{1, 2}, Frequency{-3, 2}}, RationalVector{Rational(1, 2), Rational(-1, 2)});
    bool q1 = l.generators[0] == RationalVector{Rational(1, 4), Rational(3, 8)};
    bool q2 = l.generators[1] == RationalVector{Rational(-1, 4), Rational(1, 8)};
    c.add("q1 = (1/4, 3/8)", q1, to_string(l.generators[0][0]) + ", " + to_string(l.generators[0][1]));
    c.add("q2 = (-1/4, 1/8)", q2, to_string(l.generators[1][0]) + ", " + to_string(l.generators[1][1]));
    RationalVector base = l.base_point();
    c.add("base point (0, 1/4)", base == RationalVector{Rational(0), Rational(1, 4)},
          to_string(base[0]) + ", " + to_string(base[1]));
    c.add("8 points per period", l.index() == 8, l.index().str());
  });
  return c.take();
}

ReproduceResult run_cantor() {
  Checks c("cantor");
  CantorParams p{3, 40};
  c.guarded("coefficients", [&] {
    const double base = cantor_fourier(p, 3).value;
    double worst = 0.0;
    long long m = 3;
    for (int n = 2; n <= 6; ++n) {
      m *= 3;
      worst = std::max(worst, std::fabs(cantor_fourier(p, m).value - base));
    }
    c.add("sigma(3^n) independent of n", worst < 1e-8, "max deviation " + fmt(worst));
    c.add("sigma(0) = 1", cantor_fourier(p, 0).value == 1.0);
  });
  c.guarded("pipeline", [&] {
    ExampleInput in = example_input("cantor");
    PipelineReport r = run(in, 64, 1.0);
    check_epsilon(c, r, 1.0, 1e-9);
    check_gamma(c, r.gamma, {Frequency{0}});
    const auto* u = std::get_if<UnknownSupport>(&r.structure);
    c.add("Unknown(#Gamma=1)", u && u->reason == UnknownReason::kSingleGamma, kind_name(r.structure));
  });
  return c.take();
}

ReproduceResult run_twolines() {
  Checks c("twolines");
  c.guarded("pipeline", [&] {
    ExampleInput in = example_input("twolines");
    PipelineReport r = run(in, 16, 2.0);
    check_epsilon(c, r, 2.0, 1e-9);
    check_gamma(c, r.gamma, {Frequency{0, 0}, Frequency{0, 2}, Frequency{0, -2}});
    const auto* h = std::get_if<HyperplaneSupport>(&r.structure);
    bool lines = h && h->reduced.size() == 1 && h->reduced[0].direction == Frequency{0, 1} &&
                 h->reduced[0].values.size() == 2 && std::fabs(h->reduced[0].values[0]) <= 1e-9 &&
                 std::fabs(h->reduced[0].values[1] - 0.5) <= 1e-9;
    c.add("support in lines x2 in {0, 1/2}", lines, kind_name(r.structure));
  });
  return c.take();
}

}  // namespace

std::vector<std::string> fixture_ids() { return {"e1", "e2", "e3", "e4", "e5", "e6", "cantor", "twolines"}; }

ExampleInput example_input(const std::string& id) {
  const FrequencySet l1 = FrequencySet::range_1d(-1, 1);
  if (id == "e1") return from_measure(id, l1, two_atoms(0.0, 1.0, 0.5, 1.0));
  if (id == "e2") return from_measure(id, l1, two_atoms(0.0, 1.0, 0.5, -1.0));
  if (id == "e3") return from_measure(id, l1, two_atoms(0.0, 1.0, 0.25, -1.0));
  if (id == "e4") return from_measure(id, l1, two_atoms(0.0, 1.0, 1.0 / 3.0, unit_phase(1.0 / 6.0)));
  if (id == "e5") {
    return from_measure(id, e5_lambda(),
                        DiscreteMeasure::from_points({TorusPoint{0.0, 0.0}, TorusPoint{0.5, 0.5}}, {1.0, 1.0}));
  }
  if (id == "e6") return from_measure(id, l1, two_atoms(0.0, 1.0, 0.01, -1.0));
  if (id == "cantor") {
    FrequencySet l = FrequencySet::range_1d(-9, 9);
    return {id, l, std::nullopt, cantor_data({3, 40}, l)};
  }
  if (id == "twolines") {
    FrequencySet l = FrequencySet::cube(2, -2, 2);
    return {id, l, std::nullopt, two_lines_data(l)};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown example id: " + id);
}

bool ReproduceResult::all_pass() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

std::vector<std::string> example_ids() {
  return {"e1", "e2", "e3", "e4", "e5", "e6", "cantor", "twolines", "lattice"};
}

ReproduceResult reproduce(const std::string& id) {
  if (id == "e1") return run_e1();
  if (id == "e2") return run_e2();
  if (id == "e3") return run_e3();
  if (id == "e4") return run_e4();
  if (id == "e5") return run_e5();
  if (id == "e6") return run_e6();
  if (id == "lattice") return run_lattice();
  if (id == "cantor") return run_cantor();
  if (id == "twolines") return run_twolines();
  throw Error(ErrorCode::kInvalidArgument, "unknown example id: " + id);
}

}  // namespace minext
