#include "minext/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "minext/error.hpp"
#include "minext/json_io.hpp"

namespace minext {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Refined {
  Certificate certificate;
  DiscreteMeasure measure{1};
};

// Groups grid atoms into runs of neighbouring grid points; each run becomes
// one atom at its weighted circular mean carrying the run's total weight.
std::vector<Atom> cluster_atoms(const DiscreteMeasure& mu, int n) {
  double big = 0.0;
  for (const auto& a : mu.atoms()) big = std::max(big, std::abs(a.weight));
  std::vector<Atom> sig;
  for (const auto& a : mu.atoms()) {
    if (std::abs(a.weight) >= 1e-3 * big) sig.push_back(a);
  }
  if (sig.empty()) return {};
  std::vector<std::vector<Atom>> runs{{sig.front()}};
  for (std::size_t i = 1; i < sig.size(); ++i) {
    if (circle_distance(sig[i].x[0], sig[i - 1].x[0]) <= 1.5 / n) {
      runs.back().push_back(sig[i]);
    } else {
      runs.push_back({sig[i]});
    }
  }
  if (runs.size() > 1 && circle_distance(sig.back().x[0], sig.front().x[0]) <= 1.5 / n) {
    runs.front().insert(runs.front().end(), runs.back().begin(), runs.back().end());
    runs.pop_back();
  }
  std::vector<Atom> out;
  for (const auto& run : runs) {
    Complex mean = 0.0, total = 0.0;
    for (const auto& a : run) {
      mean += std::abs(a.weight) * unit_phase(a.x[0]);
      total += a.weight;
    }
    out.push_back({TorusPoint{std::arg(mean) / kTwoPi}, total});
  }
  return out;
}

// Gauss-Newton on sum_j a_j e^{-2 pi i m x_j} = data(m) over locations and
// weights, from the clustered grid solution.
std::optional<std::vector<Atom>> fit_atoms(std::vector<Atom> atoms, const SpectralData& data) {
  const auto& lambda = data.lambda();
  const Eigen::Index rows = 2 * static_cast<Eigen::Index>(lambda.size());
  const Eigen::Index k = static_cast<Eigen::Index>(atoms.size());
  double scale = 0.0;
  for (const auto& v : data.values()) scale += std::norm(v);
  scale = std::sqrt(scale);

  auto residual = [&](const std::vector<Atom>& at) {
    Eigen::VectorXd f(rows);
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      Complex s = -data[j];
      for (const auto& a : at) s += a.weight * unit_phase(-lambda[j][0] * a.x[0]);
      f(2 * static_cast<Eigen::Index>(j)) = s.real();
      f(2 * static_cast<Eigen::Index>(j) + 1) = s.imag();
    }
    return f;
  };

  Eigen::VectorXd f = residual(atoms);
  for (int it = 0; it < 60 && f.norm() > 1e-14 * scale; ++it) {
    // Unknowns per atom: x, Re a, Im a.
    Eigen::MatrixXd jac(rows, 3 * k);
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      const double m = lambda[j][0];
      for (Eigen::Index q = 0; q < k; ++q) {
        const Atom& a = atoms[static_cast<std::size_t>(q)];
        const Complex e = unit_phase(-m * a.x[0]);
        const Complex dx = Complex(0.0, -kTwoPi * m) * a.weight * e;
        const Eigen::Index r = 2 * static_cast<Eigen::Index>(j);
        jac(r, 3 * q) = dx.real();
        jac(r + 1, 3 * q) = dx.imag();
        jac(r, 3 * q + 1) = e.real();
        jac(r + 1, 3 * q + 1) = e.imag();
        jac(r, 3 * q + 2) = -e.imag();
        jac(r + 1, 3 * q + 2) = e.real();
      }
    }
    Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-f);
    double t = 1.0;
    bool improved = false;
    for (int h = 0; h < 30 && !improved; ++h, t *= 0.5) {
      std::vector<Atom> trial;
      for (Eigen::Index q = 0; q < k; ++q) {
        const Atom& a = atoms[static_cast<std::size_t>(q)];
        trial.push_back({TorusPoint{a.x[0] + t * step(3 * q)},
                         a.weight + t * Complex(step(3 * q + 1), step(3 * q + 2))});
      }
      Eigen::VectorXd ft = residual(trial);
      if (ft.norm() < f.norm()) {
        atoms = std::move(trial);
        f = std::move(ft);
        improved = true;
      }
    }
    if (!improved) break;
  }
  if (f.norm() > 1e-10 * std::max(1.0, scale)) return std::nullopt;
  return atoms;
}

// Refines the grid solution to an exact extrapolation and interpolates its
// sign pattern; accepted only when the interpolant lies in the unit ball.
std::optional<Refined> refine(const DiscreteMeasure& grid_measure, const SpectralData& data, int n) {
  if (data.dim() != 1 || grid_measure.empty()) return std::nullopt;
  std::vector<std::vector<Atom>> starts;
  if (auto fitted = fit_atoms(cluster_atoms(grid_measure, n), data)) starts.push_back(std::move(*fitted));
  starts.push_back(cluster_atoms(grid_measure, 1 << 30));  // raw grid atoms
  for (const auto& atoms : starts) {
    if (atoms.empty()) continue;
    std::vector<TorusPoint> pts;
    std::vector<Complex> signs;
    for (const auto& a : atoms) {
      if (std::abs(a.weight) == 0.0) continue;
      pts.push_back(a.x);
      signs.push_back(a.weight / std::abs(a.weight));
    }
    TrigPolynomial phi = interpolate_sign_pattern(data.lambda(), pts, signs);
    if (measured_sup_norm(phi, default_validation_points(1)) > 1.0 + 1e-9) continue;
    Complex pairing = spectral_pairing(phi, data);
    if (!(std::abs(pairing) > 0.0)) continue;
    DiscreteMeasure nu(1, atoms);
    try {
      return Refined{certificate_from_poly(phi, data, std::abs(pairing)), std::move(nu)};
    } catch (const Error&) {
      continue;
    }
  }
  return std::nullopt;
}

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::json vector_json(const Eigen::VectorXcd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({v(i).real(), v(i).imag()});
  return arr;
}

}  // namespace

int default_grid_size(int dim) { return dim == 1 ? 64 : 16; }

PipelineReport analyze(const SpectralData& data, const PipelineOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const int d = data.dim();
  const double gamma_tol = opts.gamma_tol > 0.0 ? opts.gamma_tol : default_gamma_tolerance(opts.solver.gap_tol);

  PipelineReport r(data);
  r.grid = GridSpec{d, opts.grid > 0 ? opts.grid : default_grid_size(d)};
  r.solve = solve_on_grid(data, r.grid, opts.solver);
  r.grid_measure = solution_to_measure(r.solve, r.grid, 1e-8);
  r.range = admissibility_range(data, opts.mu_norm, std::vector<double>{r.solve.epsilon});

  if (data.sup_norm() == 0.0) {
    r.route = "zero-data";
    r.epsilon = 0.0;
    r.gamma.epsilon = 0.0;
    r.gamma.tolerance = gamma_tol;
    r.structure = PointSupport{{}, "zero-data", {}};
    r.uniqueness.verdict = Verdict::kUnique;
    r.uniqueness.measure = DiscreteMeasure(d);
    r.uniqueness.reason = "zero data: the zero measure is the only extrapolation of norm 0";
    r.certificate.note = "skipped: zero data";
    r.positivity.reason = "skipped: zero data";
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

  // Certificate: interpolant of the refined grid solution first, then the
  // rescaled grid dual.
  std::optional<DiscreteMeasure> refined;
  if (auto ref = refine(r.grid_measure, data, r.grid.n_per_axis)) {
    r.certificate.certificate = std::move(ref->certificate);
    r.certificate.polished = true;
    r.certificate.note = "interpolates the sign pattern of the refined grid solution";
    refined = std::move(ref->measure);
  } else {
    try {
      r.certificate.certificate = certificate_from_dual(r.solve.dual, data, r.solve.epsilon);
      r.certificate.note = "rescaled grid dual";
    } catch (const Error& e) {
      r.certificate.note = std::string("rejected: ") + e.what();
    }
  }
  if (r.certificate.certificate) {
    const double pairing = r.certificate.certificate->pairing.real();
    if (pairing > r.range.lower) {
      r.range.lower = std::min(pairing, r.range.upper);
      r.range.lower_note = "certificate pairing";
    }
  }
  if (refined) {
    SpectralData f = fourier_transform(*refined, data.lambda());
    double err = 0.0;
    for (std::size_t j = 0; j < data.size(); ++j) err = std::max(err, std::abs(f[j] - data[j]));
    const double norm = tv_norm(*refined);
    if (err <= 1e-9 * std::max(1.0, data.sup_norm()) && norm < r.range.upper) {
      r.range.upper = std::max(norm, r.range.lower);
      r.range.upper_note = "refined extrapolation";
    }
  }

  const double lower = r.range.lower;
  if (r.range.upper - lower <= 1e-7 * lower) {
    r.epsilon = lower;
    r.route = "admissibility-collapse";
  } else {
    r.epsilon = r.range.upper;
    r.route = "grid";
  }
  if (r.certificate.certificate && r.certificate.certificate->pairing.real() < r.epsilon * (1.0 - 1e-6)) {
    r.certificate.note = "rejected: pairing " + std::to_string(r.certificate.certificate->pairing.real()) +
                         " below epsilon " + std::to_string(r.epsilon) + " (" + r.certificate.note + ")";
    r.certificate.certificate.reset();
  }
  r.certificate.available = r.certificate.certificate.has_value();
  r.certificate.degenerate = r.certificate.available && is_degenerate(r.certificate.certificate->poly, opts.degeneracy_tol);

  if (r.certificate.degenerate) {
    FailureDiagnosis f = algorithm_failure_diagnosis(true, data, gamma_tol);
    r.epsilon = f.epsilon;
    r.gamma = std::move(f.gamma);
    r.route = "degenerate-certificate";
  } else {
    r.gamma = gamma_set(data, r.epsilon, gamma_tol);
  }

  if (!r.gamma.empty()) {
    r.structure = support_structure(r.gamma, data, d);
  } else if (r.certificate.available && !r.certificate.degenerate) {
    const TrigPolynomial& phi = r.certificate.certificate->poly;
    if (d == 1) {
      try {
        r.structure = PointSupport{support_from_certificate_1d(phi), "certificate", {}};
      } catch (const Error&) {
        r.structure = UnknownSupport{UnknownReason::kAnalyticZeroSet, support_from_certificate_grid(phi, 4096, 1e-6)};
      }
    } else {
      r.structure = UnknownSupport{UnknownReason::kAnalyticZeroSet,
                                   support_from_certificate_grid(phi, default_validation_points(d), 1e-6)};
    }
  } else {
    r.structure = UnknownSupport{UnknownReason::kAnalyticZeroSet, {}};
  }

  UniquenessOptions uopts;
  uopts.epsilon = r.epsilon;
  r.uniqueness = uniqueness_verdict(r.structure, data, uopts);

  if (d == 1) {
    int n = opts.center.value_or(0);
    if (!opts.center) {
      if (!r.gamma.empty()) {
        n = r.gamma.members.front()[0];
      } else {
        std::size_t best = 0;
        for (std::size_t i = 1; i < data.size(); ++i) {
          if (std::abs(data[i]) > std::abs(data[best])) best = i;
        }
        n = data.lambda()[best][0];
      }
    }
    int m = opts.half_width.value_or(max_half_width(data, n));
    if (m < 0) {
      r.positivity.center = n;
      r.positivity.reason = "center is not in lambda";
    } else {
      r.positivity = analyze_positivity(data, n, m);
    }
  } else {
    r.positivity.reason = "unsupported dimension";
  }

  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::json report_to_json(const PipelineReport& r, bool include_timing) {
  nlohmann::json j;
  j["input"] = spectral_to_json(r.input);
  j["grid"] = {{"d", r.grid.dim}, {"n_per_axis", r.grid.n_per_axis}};
  j["solve"] = {{"epsilon", r.solve.epsilon},
                {"dual_value", r.solve.dual_value},
                {"converged", r.solve.converged},
                {"iterations", r.solve.iterations},
                {"residual", r.solve.residual},
                {"gap", r.solve.gap},
                {"primal", vector_json(r.solve.primal)},
                {"dual", vector_json(r.solve.dual)}};
  j["grid_measure"] = measure_to_json(r.grid_measure);
  j["admissibility"] = {{"lower", r.range.lower},
                        {"upper", r.range.upper},
                        {"lower_note", r.range.lower_note},
                        {"upper_note", r.range.upper_note}};
  j["epsilon"] = r.epsilon;
  j["route"] = r.route;
  j["gamma"] = gamma_to_json(r.gamma);
  j["structure"] = structure_to_json(r.structure);
  j["uniqueness"] = verdict_to_json(r.uniqueness);

  nlohmann::json pos{{"applicable", r.positivity.applicable},
                     {"extendable", r.positivity.extendable},
                     {"heuristic", r.positivity.heuristic},
                     {"center", r.positivity.center},
                     {"half_width", r.positivity.half_width},
                     {"min_eigenvalue", r.positivity.min_eigenvalue},
                     {"reason", r.positivity.reason}};
  pos["measure"] = r.positivity.measure ? measure_to_json(*r.positivity.measure) : nlohmann::json(nullptr);
  j["positivity"] = pos;

  nlohmann::json cert{{"available", r.certificate.available},
                      {"polished", r.certificate.polished},
                      {"degenerate", r.certificate.degenerate},
                      {"note", r.certificate.note}};
  if (r.certificate.certificate) {
    cert["sup_norm"] = r.certificate.certificate->sup_norm;
    cert["pairing"] = complex_json(r.certificate.certificate->pairing);
    cert["poly"] = trig_to_json(r.certificate.certificate->poly);
  }
  j["certificate"] = cert;
  if (include_timing) j["timing"] = {{"seconds", r.seconds}};
  return j;
}

}  // namespace minext
