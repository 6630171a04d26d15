#include "minext/grid_solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "minext/error.hpp"

namespace minext {

std::size_t GridSpec::total() const {
  std::size_t t = 1;
  for (int i = 0; i < dim; ++i) t *= static_cast<std::size_t>(n_per_axis);
  return t;
}

std::vector<int> GridSpec::multi_index(std::size_t k) const {
  std::vector<int> idx(static_cast<std::size_t>(dim));
  for (int i = dim - 1; i >= 0; --i) {
    idx[static_cast<std::size_t>(i)] = static_cast<int>(k % static_cast<std::size_t>(n_per_axis));
    k /= static_cast<std::size_t>(n_per_axis);
  }
  return idx;
}

TorusPoint GridSpec::point(std::size_t k) const {
  auto idx = multi_index(k);
  std::vector<double> c(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) c[i] = static_cast<double>(idx[i]) / n_per_axis;
  return TorusPoint(std::move(c));
}

ForwardMatrix build_forward_matrix(const FrequencySet& lambda, const GridSpec& grid) {
  if (grid.n_per_axis < 1 || grid.dim < 1) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs N >= 1 and d >= 1");
  }
  if (grid.dim != lambda.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "grid and lambda dimensions differ");
  }
  const long long n = grid.n_per_axis;
  std::map<std::vector<int>, std::size_t> residues;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    std::vector<int> r;
    for (int c : lambda[j].components()) r.push_back(static_cast<int>(((c % n) + n) % n));
    auto [it, inserted] = residues.emplace(r, j);
    if (!inserted) {
      throw Error(ErrorCode::kAliasing, "frequencies " + lambda[it->second].to_string() +
                                            " and " + lambda[j].to_string() +
                                            " coincide modulo N = " + std::to_string(n));
    }
  }

  const std::size_t cols = grid.total();
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(lambda.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t k = 0; k < cols; ++k) {
    auto idx = grid.multi_index(k);
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      long long e = 0;
      for (std::size_t i = 0; i < idx.size(); ++i) e += static_cast<long long>(lambda[j][i]) * idx[i];
      a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = root_of_unity(-e, n);
    }
  }
  return {lambda, grid, std::move(a)};
}

double estimate_operator_norm(const Eigen::MatrixXcd& a, int iterations, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(a.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
  double lambda = 0.0;
  for (int it = 0; it < std::max(1, iterations); ++it) {
    double nv = v.norm();
    if (nv == 0.0) return 0.0;
    v /= nv;
    Eigen::VectorXcd w = a.adjoint() * (a * v);
    lambda = w.norm();
    v = w;
  }
  return std::sqrt(lambda);
}

namespace {

Eigen::VectorXcd soft_threshold(const Eigen::VectorXcd& v, double t) {
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double m = std::abs(v(i));
    out(i) = m > t ? v(i) * ((m - t) / m) : Complex(0.0);
  }
  return out;
}

struct Bounds {
  double upper = 0.0;
  double lower = 0.0;
  Eigen::VectorXcd primal;
  Eigen::VectorXcd dual;
  double residual = 0.0;

  double gap() const { return upper - lower; }
};

// The projection uses A A^H = N^d I, which holds when lambda is alias free.
Bounds certified_bounds(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b,
                        const Eigen::VectorXcd& y, const Eigen::VectorXcd& w, double gram) {
  Bounds r;
  r.primal = y - a.adjoint() * ((a * y - b) / gram);
  r.upper = r.primal.cwiseAbs().sum();
  r.residual = (a * r.primal - b).norm();
  double s = std::max(1.0, (a.adjoint() * w).cwiseAbs().maxCoeff());
  r.dual = w / s;
  r.lower = b.dot(r.dual).real();
  return r;
}

}  // namespace

SolveReport basis_pursuit(const ForwardMatrix& a, const SpectralData& data, const SolverOptions& opts) {
  if (!(data.lambda() == a.rows)) {
    throw Error(ErrorCode::kDimensionMismatch, "data is not indexed like the forward matrix rows");
  }
  if (opts.max_iterations < 1 || opts.gap_tol <= 0.0 || opts.feasibility_tol <= 0.0 ||
      opts.check_interval < 1) {
    throw Error(ErrorCode::kInvalidArgument, "solver options must be positive");
  }
  const Eigen::MatrixXcd& m = a.matrix;
  const Eigen::Index cols = m.cols();
  Eigen::VectorXcd b(static_cast<Eigen::Index>(data.size()));
  for (std::size_t j = 0; j < data.size(); ++j) b(static_cast<Eigen::Index>(j)) = data[j];

  SolveReport report;
  report.grid = a.grid;
  if (b.cwiseAbs().maxCoeff() == 0.0) {
    report.primal = Eigen::VectorXcd::Zero(cols);
    report.dual = Eigen::VectorXcd::Zero(b.size());
    report.converged = true;
    return report;
  }

  // The iteration runs on b / scale so that step sizes do not depend on the
  // magnitude of the data; bounds are scaled back on exit.
  const double scale = b.norm();
  b /= scale;

  const double gram = static_cast<double>(a.grid.total());
  const double norm = estimate_operator_norm(m, opts.power_iterations, opts.seed);
  const double eta = 0.99 / norm;
  const bool fixed_steps = opts.primal_step > 0.0 && opts.dual_step > 0.0;
  // Primal weight w: tau = eta / w, sigma = eta * w, rebalanced at restarts
  // from the distance moved by each block.
  double weight = 1.0;
  double tau = fixed_steps ? opts.primal_step : eta / weight;
  double sigma = fixed_steps ? opts.dual_step : eta * weight;

  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(cols);
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(b.size());
  Eigen::VectorXcd y_sum = y;
  Eigen::VectorXcd z_sum = z;
  Eigen::VectorXcd y_anchor = y;
  Eigen::VectorXcd z_anchor = z;
  int count = 0;
  double restart_gap = -1.0;
  Bounds best;
  best.upper = INFINITY;
  best.lower = -INFINITY;

  auto accept = [&](Bounds&& candidate, int it) {
    if (candidate.gap() < best.gap()) {
      best = std::move(candidate);
      report.iterations = it;
    }
  };

  for (int it = 1; it <= opts.max_iterations; ++it) {
    Eigen::VectorXcd y_next = soft_threshold(y - tau * (m.adjoint() * z), tau);
    z += sigma * (m * (2.0 * y_next - y)) - sigma * b;
    y = std::move(y_next);
    y_sum += y;
    z_sum += z;
    ++count;

    if (it % opts.check_interval != 0 && it != opts.max_iterations) continue;
    Bounds cur = certified_bounds(m, b, y, -z, gram);
    Bounds avg = certified_bounds(m, b, y_sum / count, -z_sum / count, gram);
    double g_cur = cur.gap();
    double g_avg = avg.gap();
    bool avg_better = g_avg < g_cur;
    double g = std::min(g_cur, g_avg);
    accept(avg_better ? std::move(avg) : std::move(cur), it);

    if (best.gap() <= opts.gap_tol * std::max(1.0 / scale, best.upper) &&
        best.residual * scale <= opts.feasibility_tol) {
      report.converged = true;
      break;
    }
    if (restart_gap < 0.0) restart_gap = g;
    if (g < 0.2 * restart_gap) {
      if (avg_better) {
        y = y_sum / count;
        z = z_sum / count;
      }
      const double dy = (y - y_anchor).norm();
      const double dz = (z - z_anchor).norm();
      if (!fixed_steps && dy > 1e-14 && dz > 1e-14) {
        weight = std::exp(0.5 * std::log(dz / dy) + 0.5 * std::log(weight));
        tau = eta / weight;
        sigma = eta * weight;
      }
      y_anchor = y;
      z_anchor = z;
      y_sum = y;
      z_sum = z;
      count = 1;
      restart_gap = g;
    }
  }
  if (!report.converged) report.iterations = opts.max_iterations;

  report.epsilon = best.upper * scale;
  report.dual_value = best.lower * scale;
  report.primal = std::move(best.primal) * scale;
  report.dual = std::move(best.dual);
  report.residual = best.residual * scale;
  report.gap = best.gap() * scale;
  return report;
}

DiscreteMeasure solution_to_measure(const SolveReport& report, const GridSpec& grid, double prune_tol) {
  if (static_cast<std::size_t>(report.primal.size()) != grid.total()) {
    throw Error(ErrorCode::kDimensionMismatch, "primal vector does not match the grid");
  }
  std::vector<Atom> atoms;
  for (Eigen::Index k = 0; k < report.primal.size(); ++k) {
    if (std::abs(report.primal(k)) > prune_tol) {
      atoms.push_back({grid.point(static_cast<std::size_t>(k)), report.primal(k)});
    }
  }
  return DiscreteMeasure(grid.dim, std::move(atoms));
}

SolveReport solve_on_grid(const SpectralData& data, const GridSpec& grid, const SolverOptions& opts) {
  return basis_pursuit(build_forward_matrix(data.lambda(), grid), data, opts);
}

std::vector<double> refine_epsilon(const SpectralData& data, const std::vector<GridSpec>& grids,
                                   const SolverOptions& opts) {
  for (std::size_t i = 1; i < grids.size(); ++i) {
    if (grids[i].dim != grids[i - 1].dim || grids[i].n_per_axis % grids[i - 1].n_per_axis != 0) {
      throw Error(ErrorCode::kInvalidArgument, "grids must form a divisibility chain");
    }
  }
  std::vector<double> out;
  out.reserve(grids.size());
  for (const auto& g : grids) out.push_back(solve_on_grid(data, g, opts).epsilon);
  return out;
}

}  // namespace minext
