#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "minext/error.hpp"
#include "minext/json_io.hpp"
#include "minext/pipeline.hpp"
#include "minext/reproduce.hpp"
#include "plot_export.hpp"

namespace {

using namespace minext;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNonConvergence = 3;

struct Flags {
  std::string input;
  int grid = 0;
  double tol = 0.0;
  int max_iter = 0;
  std::optional<double> mu_norm;
  std::optional<int> center;
  std::optional<int> half_width;
  std::optional<double> epsilon;
  std::string json_out;
  std::string csv_dir;
  std::string points;
  bool timing = false;
};

PipelineOptions pipeline_options(const Flags& f) {
  PipelineOptions o;
  o.grid = f.grid;
  if (f.tol > 0.0) o.solver.gap_tol = f.tol;
  if (f.max_iter > 0) o.solver.max_iterations = f.max_iter;
  o.mu_norm = f.mu_norm;
  o.center = f.center;
  o.half_width = f.half_width;
  return o;
}

SpectralData load_input(const Flags& f) { return spectral_from_json(read_json_file(f.input)); }

// JSON to the --json target ("-" is stdout), pretty-printed.
void emit_json(const Json& j, const Flags& f) {
  if (f.json_out.empty() || f.json_out == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(f.json_out, j);
  }
}

std::string complex_str(Complex z) {
  char buf[96];
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  if (std::fabs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z))) {
    std::snprintf(buf, sizeof buf, "%.10g", re);
  } else {
    std::snprintf(buf, sizeof buf, "%.10g%+.10gi", re, z.imag());
  }
  return buf;
}

void print_summary(const PipelineReport& r, bool timing) {
  std::cout << "grid            " << r.grid.n_per_axis << " per axis, d = " << r.grid.dim << "\n";
  std::cout << "solver          eps_N = " << r.solve.epsilon << (r.solve.converged ? "" : " (not converged)")
            << ", " << r.solve.iterations << " iterations\n";
  std::cout << "admissibility   [" << r.range.lower << ", " << r.range.upper << "]\n";
  std::cout.precision(12);
  std::cout << "epsilon         " << r.epsilon << " (" << r.route << ")\n";
  std::cout << "gamma           {";
  for (std::size_t i = 0; i < r.gamma.members.size(); ++i) {
    std::cout << (i ? ", " : "") << r.gamma.members[i].to_string();
  }
  std::cout << "}\n";
  std::cout << "structure       " << kind_name(r.structure);
  if (auto pts = finite_support(r.structure)) {
    std::cout << " {";
    for (std::size_t i = 0; i < pts->size(); ++i) std::cout << (i ? ", " : "") << (*pts)[i].to_string();
    std::cout << "}";
  } else if (const auto* h = std::get_if<HyperplaneSupport>(&r.structure)) {
    for (const auto& red : h->reduced) {
      std::cout << " [x." << red.direction.to_string() << " in {";
      for (std::size_t i = 0; i < red.values.size(); ++i) std::cout << (i ? ", " : "") << red.values[i];
      std::cout << "} + Z]";
    }
  }
  std::cout << "\n";
  std::cout << "uniqueness      " << to_string(r.uniqueness.verdict);
  if (!r.uniqueness.reason.empty()) std::cout << " (" << r.uniqueness.reason << ")";
  std::cout << "\n";
  for (const auto& a : r.uniqueness.measure.atoms()) {
    std::cout << "  atom " << a.x.to_string() << "  " << complex_str(a.weight) << "\n";
  }
  std::cout << "positivity      ";
  if (r.positivity.applicable) {
    std::cout << (r.positivity.extendable ? "extendable" : "not extendable") << " (n = " << r.positivity.center
              << ", M = " << r.positivity.half_width << (r.positivity.heuristic ? ", hull" : "") << ")";
  } else {
    std::cout << "not applicable";
  }
  if (!r.positivity.reason.empty()) std::cout << ": " << r.positivity.reason;
  std::cout << "\n";
  std::cout << "certificate     " << (r.certificate.available ? "available" : "none")
            << (r.certificate.degenerate ? ", degenerate" : "") << " (" << r.certificate.note << ")\n";
  if (timing) std::cout << "time            " << r.seconds << " s\n";
}

int cmd_analyze(const Flags& f) {
  PipelineReport r = analyze(load_input(f), pipeline_options(f));
  Json j = report_to_json(r, f.timing);
  if (!f.json_out.empty()) {
    emit_json(j, f);
  } else {
    print_summary(r, f.timing);
  }
  if (!f.csv_dir.empty()) tools::export_plot(j, f.csv_dir);
  return r.solve.converged ? kExitOk : kExitNonConvergence;
}

int cmd_solve(const Flags& f) {
  SpectralData data = load_input(f);
  PipelineOptions o = pipeline_options(f);
  GridSpec grid{data.dim(), o.grid > 0 ? o.grid : default_grid_size(data.dim())};
  SolveReport s = solve_on_grid(data, grid, o.solver);
  Json primal = Json::array();
  for (Eigen::Index i = 0; i < s.primal.size(); ++i) primal.push_back({s.primal(i).real(), s.primal(i).imag()});
  Json dual = Json::array();
  for (Eigen::Index i = 0; i < s.dual.size(); ++i) dual.push_back({s.dual(i).real(), s.dual(i).imag()});
  Json j{{"epsilon", s.epsilon}, {"converged", s.converged}, {"iterations", s.iterations},
         {"dual_value", s.dual_value}, {"residual", s.residual}, {"gap", s.gap},
         {"grid", {{"d", grid.dim}, {"n_per_axis", grid.n_per_axis}}},
         {"primal", primal}, {"dual", dual}};
  emit_json(j, f);
  return s.converged ? kExitOk : kExitNonConvergence;
}

// Epsilon from --epsilon, else from the full pipeline.
struct EpsilonSource {
  double epsilon;
  int exit_code;
  std::optional<PipelineReport> report;
};

EpsilonSource resolve_epsilon(const SpectralData& data, const Flags& f) {
  if (f.epsilon) return {*f.epsilon, kExitOk, std::nullopt};
  PipelineReport r = analyze(data, pipeline_options(f));
  const double eps = r.epsilon;
  const int code = r.solve.converged ? kExitOk : kExitNonConvergence;
  return {eps, code, std::move(r)};
}

int cmd_gamma(const Flags& f) {
  SpectralData data = load_input(f);
  EpsilonSource e = resolve_epsilon(data, f);
  GammaSet g = e.report && !f.epsilon ? e.report->gamma : gamma_set(data, e.epsilon);
  emit_json(gamma_to_json(g), f);
  return e.exit_code;
}

int cmd_structure(const Flags& f) {
  SpectralData data = load_input(f);
  EpsilonSource e = resolve_epsilon(data, f);
  Json j;
  if (e.report) {
    j = {{"epsilon", e.epsilon}, {"gamma", gamma_to_json(e.report->gamma)},
         {"structure", structure_to_json(e.report->structure)}};
  } else {
    GammaSet g = gamma_set(data, e.epsilon);
    j = {{"epsilon", e.epsilon}, {"gamma", gamma_to_json(g)},
         {"structure", structure_to_json(support_structure(g, data, data.dim()))}};
  }
  emit_json(j, f);
  return e.exit_code;
}

int cmd_unique(const Flags& f) {
  SpectralData data = load_input(f);
  if (!f.points.empty()) {
    UniquenessOptions o;
    if (f.epsilon) o.epsilon = *f.epsilon;
    emit_json(verdict_to_json(uniqueness_verdict(points_from_json(read_json_file(f.points)), data, o)), f);
    return kExitOk;
  }
  EpsilonSource e = resolve_epsilon(data, f);
  UniquenessResult u;
  if (e.report) {
    u = e.report->uniqueness;
  } else {
    UniquenessOptions o;
    o.epsilon = e.epsilon;
    u = uniqueness_verdict(support_structure(gamma_set(data, e.epsilon), data, data.dim()), data, o);
  }
  emit_json(verdict_to_json(u), f);
  return e.exit_code;
}

int cmd_positivity(const Flags& f) {
  SpectralData data = load_input(f);
  if (data.dim() != 1) throw Error(ErrorCode::kUnsupported, "unsupported dimension " + std::to_string(data.dim()));
  const int n = f.center.value_or(0);
  const int m = f.half_width.value_or(max_half_width(data, n));
  if (m < 0) throw Error(ErrorCode::kInvalidArgument, "center " + std::to_string(n) + " is not in lambda");
  PositivityResult p = analyze_positivity(data, n, m);
  Json j{{"applicable", p.applicable}, {"extendable", p.extendable}, {"heuristic", p.heuristic},
         {"center", p.center}, {"half_width", p.half_width}, {"min_eigenvalue", p.min_eigenvalue},
         {"reason", p.reason}};
  j["measure"] = p.measure ? measure_to_json(*p.measure) : Json(nullptr);
  emit_json(j, f);
  return kExitOk;
}

int cmd_reproduce(const std::string& id, const Flags& f) {
  std::vector<std::string> ids = id == "all" ? example_ids() : std::vector<std::string>{id};
  bool ok = true;
  Json all = Json::array();
  for (const auto& one : ids) {
    ReproduceResult r = reproduce(one);
    ok = ok && r.all_pass();
    if (!f.json_out.empty()) {
      Json rows = Json::array();
      for (const auto& row : r.rows) rows.push_back({{"name", row.name}, {"pass", row.pass}, {"detail", row.detail}});
      all.push_back({{"id", r.id}, {"pass", r.all_pass()}, {"rows", rows}});
      continue;
    }
    for (const auto& row : r.rows) {
      std::printf("%-9s %-4s  %-52s %s\n", r.id.c_str(), row.pass ? "PASS" : "FAIL", row.name.c_str(),
                  row.detail.c_str());
    }
  }
  if (!f.json_out.empty()) emit_json(ids.size() == 1 ? all[0] : all, f);
  return ok ? kExitOk : kExitAssertion;
}

int cmd_export_plot(const std::string& report_path, const std::string& dir) {
  for (const auto& p : tools::export_plot(read_json_file(report_path), dir)) std::cout << p.string() << "\n";
  return kExitOk;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::kNumerical:
      return kExitNonConvergence;
    default:
      return kExitBadInput;
  }
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("input", f.input, "Spectral data JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--grid", f.grid, "Grid points per axis (default 64 for d = 1, 16 otherwise)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--tol", f.tol, "Relative duality-gap tolerance of the grid solver")->check(CLI::PositiveNumber);
  sub->add_option("--max-iter", f.max_iter, "Solver iteration cap")->check(CLI::PositiveNumber);
  sub->add_option("--mu-norm", f.mu_norm, "Known norm of the measure, an upper bound for epsilon");
  sub->add_option("--center", f.center, "Positivity window center n");
  sub->add_option("--halfwidth", f.half_width, "Positivity window half-width M")->check(CLI::NonNegativeNumber);
  sub->add_option("--json", f.json_out, "Write JSON here ('-' for stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal extrapolation analysis of Fourier data on the torus"};
  app.require_subcommand(1);
  Flags f;
  std::string example_id;
  std::string report_path;
  std::string out_dir;

  auto* analyze_cmd = app.add_subcommand("analyze", "Run the full pipeline on spectral data");
  add_common(analyze_cmd, f);
  analyze_cmd->add_option("--csv", f.csv_dir, "Also write plot CSVs into this directory");
  analyze_cmd->add_flag("--timing", f.timing, "Report wall-clock time");

  auto* solve_cmd = app.add_subcommand("solve", "Grid basis pursuit only");
  add_common(solve_cmd, f);

  auto* gamma_cmd = app.add_subcommand("gamma", "Frequencies where |data| attains epsilon");
  add_common(gamma_cmd, f);
  gamma_cmd->add_option("--epsilon", f.epsilon, "Use this epsilon instead of running the pipeline");

  auto* structure_cmd = app.add_subcommand("structure", "Support structure of the minimal extrapolations");
  add_common(structure_cmd, f);
  structure_cmd->add_option("--epsilon", f.epsilon, "Use this epsilon instead of running the pipeline");

  auto* unique_cmd = app.add_subcommand("unique", "Uniqueness verdict");
  add_common(unique_cmd, f);
  unique_cmd->add_option("--epsilon", f.epsilon, "Use this epsilon instead of running the pipeline");
  unique_cmd->add_option("--points", f.points, "Candidate support points JSON ([[x1,...], ...])")
      ->check(CLI::ExistingFile);

  auto* pos_cmd = app.add_subcommand("positivity", "Positive-definite extendability of a window (d = 1)");
  add_common(pos_cmd, f);

  auto* rep_cmd = app.add_subcommand("reproduce", "Run the scripted checks of a worked example");
  rep_cmd->add_option("id", example_id, "e1..e6, cantor, twolines, lattice or all")->required();
  rep_cmd->add_option("--json", f.json_out, "Write JSON here ('-' for stdout)");

  auto* plot_cmd = app.add_subcommand("export-plot", "CSV plot data from an analyze --json report");
  plot_cmd->add_option("report", report_path, "Report JSON")->required()->check(CLI::ExistingFile);
  plot_cmd->add_option("dir", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(f);
    if (*solve_cmd) return cmd_solve(f);
    if (*gamma_cmd) return cmd_gamma(f);
    if (*structure_cmd) return cmd_structure(f);
    if (*unique_cmd) return cmd_unique(f);
    if (*pos_cmd) return cmd_positivity(f);
    if (*rep_cmd) return cmd_reproduce(example_id, f);
    if (*plot_cmd) return cmd_export_plot(report_path, out_dir);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error (parse): " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
