#include "plot_export.hpp"

#include <cmath>
#include <fstream>

#include "minext/certificate.hpp"
#include "minext/error.hpp"
#include "minext/json_io.hpp"

namespace minext::tools {

namespace {

namespace fs = std::filesystem;

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  out.precision(17);
  return out;
}

std::string axis_header(int d) {
  std::string h;
  for (int i = 1; i <= d; ++i) h += "x" + std::to_string(i) + ",";
  return h;
}

void write_coords(std::ofstream& out, const TorusPoint& x) {
  for (int i = 0; i < x.dim(); ++i) out << x[i] << ",";
}

// |phi| and Phi on a uniform grid; 1-d uses `samples` points, 2-d a square
// grid of sqrt(samples) per axis.
void write_phi(const nlohmann::json& report, const fs::path& path, int samples) {
  std::ofstream out = open_csv(path);
  const int d = report.at("input").at("d").get<int>();
  out << axis_header(d) << "abs_phi,deficit\n";
  const auto& cert = report.at("certificate");
  if (!cert.contains("poly")) return;
  TrigPolynomial phi = trig_from_json(cert.at("poly"));
  DeficitPolynomial big_phi = deficit(phi);
  int per_axis = d == 1 ? samples : static_cast<int>(std::lround(std::pow(samples, 1.0 / d)));
  per_axis = std::max(per_axis, 2);
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(per_axis);
  std::vector<double> c(d);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t r = k;
    for (int i = d - 1; i >= 0; --i) {
      c[i] = static_cast<double>(r % per_axis) / per_axis;
      r /= per_axis;
    }
    TorusPoint x(c);
    write_coords(out, x);
    out << std::abs(phi(x)) << "," << big_phi(x) << "\n";
  }
}

void write_atoms(const nlohmann::json& report, const fs::path& path) {
  std::ofstream out = open_csv(path);
  const int d = report.at("input").at("d").get<int>();
  out << axis_header(d) << "re,im\n";
  const auto& m = report.at("uniqueness").at("measure");
  if (m.is_null()) return;
  const DiscreteMeasure mu = measure_from_json(m);
  for (const auto& atom : mu.atoms()) {
    write_coords(out, atom.x);
    out << atom.weight.real() << "," << atom.weight.imag() << "\n";
  }
}

// Points on {x : x . direction = value mod 1} for a 2-d reduced constraint,
// filtered by the remaining constraints.
std::vector<TorusPoint> sample_lines(const nlohmann::json& reduced, int samples) {
  std::vector<TorusPoint> pts;
  const auto& first = reduced.at(0);
  const int a = first.at("direction").at(0).get<int>();
  const int b = first.at("direction").at(1).get<int>();
  const bool solve_second = b != 0;
  const int div = std::abs(solve_second ? b : a);
  for (double v : first.at("values").get<std::vector<double>>()) {
    for (int i = 0; i < samples; ++i) {
      const double t = static_cast<double>(i) / samples;
      for (int k = 0; k < div; ++k) {
        double s = solve_second ? (v + k - a * t) / b : (v + k - b * t) / a;
        TorusPoint x = solve_second ? TorusPoint{t, s} : TorusPoint{s, t};
        bool ok = true;
        for (std::size_t r = 1; r < reduced.size() && ok; ++r) {
          const auto dir = reduced[r].at("direction").get<std::vector<int>>();
          const double p = dir[0] * x[0] + dir[1] * x[1];
          bool hit = false;
          for (double w : reduced[r].at("values").get<std::vector<double>>()) {
            double e = p - w;
            hit = hit || std::fabs(e - std::round(e)) <= 1e-9;
          }
          ok = hit;
        }
        if (ok) pts.push_back(x);
      }
    }
  }
  return pts;
}

void write_support(const nlohmann::json& report, const fs::path& path, int samples) {
  std::ofstream out = open_csv(path);
  const int d = report.at("input").at("d").get<int>();
  const auto& s = report.at("structure");
  const std::string kind = s.at("kind").get<std::string>();
  out << axis_header(d) << "kind\n";
  std::vector<TorusPoint> pts;
  if (kind == "points" || kind == "lattice") {
    pts = points_from_json(s.at("points"));
  } else if (kind == "unknown") {
    pts = points_from_json(s.at("samples"));
  } else if (kind == "hyperplanes" && d == 2 && !s.at("reduced").empty()) {
    pts = sample_lines(s.at("reduced"), samples);
  }
  for (const auto& x : pts) {
    write_coords(out, x);
    out << kind << "\n";
  }
}

}  // namespace

std::vector<fs::path> export_plot(const nlohmann::json& report, const fs::path& dir, int samples) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kInvalidArgument, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<fs::path> written{dir / "phi.csv", dir / "atoms.csv", dir / "support.csv"};
  write_phi(report, written[0], samples);
  write_atoms(report, written[1]);
  write_support(report, written[2], samples);
  return written;
}

}  // namespace minext::tools
