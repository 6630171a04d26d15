#include "minext/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "minext/certificate.hpp"
#include "minext/error.hpp"

namespace minext {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::MatrixXcd toeplitz(const std::vector<Complex>& t) {
  const Eigen::Index n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      m(j, k) = j >= k ? t[static_cast<std::size_t>(j - k)] : std::conj(t[static_cast<std::size_t>(k - j)]);
    }
  }
  return m;
}

double spectral_scale(const Eigen::VectorXd& eig) { return std::max(1.0, eig.cwiseAbs().maxCoeff()); }

// Atoms from a null vector u of a PSD Toeplitz matrix with moments t.
std::optional<DiscreteMeasure> pisarenko(const Eigen::VectorXcd& u, const std::vector<Complex>& t, double tol) {
  std::vector<Complex> coeffs(static_cast<std::size_t>(u.size()));
  for (Eigen::Index j = 0; j < u.size(); ++j) coeffs[static_cast<std::size_t>(j)] = std::conj(u(j));
  std::vector<Complex> roots;
  try {
    roots = polynomial_roots(coeffs, 1e-12);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (roots.size() + 1 != coeffs.size()) return std::nullopt;
  for (const auto& z : roots) {
    if (std::fabs(std::abs(z) - 1.0) > 1e-6) return std::nullopt;
  }
  // Vandermonde moment system: sum_i w_i z_i^k = t_k.
  const Eigen::Index rows = static_cast<Eigen::Index>(t.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(roots.size());
  Eigen::MatrixXcd v(rows, cols);
  Eigen::VectorXcd rhs(rows);
  for (Eigen::Index k = 0; k < rows; ++k) {
    rhs(k) = t[static_cast<std::size_t>(k)];
    for (Eigen::Index i = 0; i < cols; ++i) {
      Complex z = roots[static_cast<std::size_t>(i)] / std::abs(roots[static_cast<std::size_t>(i)]);
      v(k, i) = std::pow(z, static_cast<double>(k));
    }
  }
  Eigen::VectorXcd w = v.colPivHouseholderQr().solve(rhs);
  const double scale = std::max(1.0, std::abs(t[0]));
  std::vector<Atom> atoms;
  for (Eigen::Index i = 0; i < cols; ++i) {
    if (w(i).real() < -tol * scale || std::fabs(w(i).imag()) > 1e-6 * scale) return std::nullopt;
    double x = -std::arg(roots[static_cast<std::size_t>(i)]) / kTwoPi;
    atoms.push_back({TorusPoint{x}, Complex(std::max(0.0, w(i).real()), 0.0)});
  }
  return DiscreteMeasure(1, std::move(atoms));
}

double moment_residual(const DiscreteMeasure& nu, const std::vector<Complex>& t) {
  double r = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    Complex s = 0.0;
    for (const auto& a : nu.atoms()) s += a.weight * unit_phase(-static_cast<double>(k) * a.x[0]);
    r = std::max(r, std::abs(s - t[k]));
  }
  return r;
}

std::optional<DiscreteMeasure> grid_fallback(const std::vector<Complex>& t, int grid, double max_residual) {
  const Eigen::Index rows = 2 * static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd a(rows, grid);
  Eigen::VectorXd b(rows);
  for (std::size_t k = 0; k < t.size(); ++k) {
    const Eigen::Index r = 2 * static_cast<Eigen::Index>(k);
    b(r) = t[k].real();
    b(r + 1) = t[k].imag();
    for (int j = 0; j < grid; ++j) {
      Complex e = root_of_unity(-static_cast<long long>(k) * j, grid);
      a(r, j) = e.real();
      a(r + 1, j) = e.imag();
    }
  }
  Eigen::VectorXd w = nnls(a, b);
  if ((a * w - b).cwiseAbs().maxCoeff() > max_residual) return std::nullopt;
  std::vector<Atom> atoms;
  for (int j = 0; j < grid; ++j) {
    if (w(j) > 0.0) atoms.push_back({TorusPoint{static_cast<double>(j) / grid}, Complex(w(j), 0.0)});
  }
  return DiscreteMeasure(1, std::move(atoms));
}

bool is_contiguous(const FrequencySet& lambda) {
  int lo = lambda[0][0], hi = lo;
  for (const auto& m : lambda) {
    lo = std::min(lo, m[0]);
    hi = std::max(hi, m[0]);
  }
  return static_cast<std::size_t>(hi - lo + 1) == lambda.size();
}

}  // namespace

Eigen::MatrixXcd ToeplitzWindow::matrix() const { return toeplitz(moments); }

ToeplitzWindow toeplitz_window(const SpectralData& data, int n, int m, double tol) {
  if (data.dim() != 1) throw Error(ErrorCode::kUnsupported, "Toeplitz windows need d = 1");
  if (m < 0) throw Error(ErrorCode::kInvalidArgument, "half width must be nonnegative");
  ToeplitzWindow w{n, m, {}};
  for (int k = 0; k <= m; ++k) {
    auto fwd = data.find(Frequency{n + k});
    auto rev = data.find(Frequency{n - k});
    if (!fwd && !rev) {
      throw Error(ErrorCode::kInvalidArgument, "window around " + std::to_string(n) + " of half width " +
                                                   std::to_string(m) + " is not covered by lambda at offset " +
                                                   std::to_string(k));
    }
    if (k == 0 && std::fabs(fwd->imag()) > tol * std::max(1.0, std::abs(*fwd))) {
      throw Error(ErrorCode::kInconsistent, "t_0 = data(" + std::to_string(n) + ") is not real");
    }
    if (fwd && rev && std::abs(*fwd - std::conj(*rev)) > tol * std::max(1.0, std::abs(*fwd))) {
      throw Error(ErrorCode::kInconsistent, "data is not Hermitian-consistent at offset " + std::to_string(k) +
                                                " from center " + std::to_string(n));
    }
    w.moments.push_back(fwd ? *fwd : std::conj(*rev));
  }
  w.moments[0] = Complex(w.moments[0].real(), 0.0);
  return w;
}

int max_half_width(const SpectralData& data, int n) {
  if (data.dim() != 1) return -1;
  if (!data.lambda().contains(Frequency{n})) return -1;
  int m = 0;
  while (data.lambda().contains(Frequency{n + m + 1}) || data.lambda().contains(Frequency{n - m - 1})) ++m;
  return m;
}

double min_eigenvalue(const ToeplitzWindow& w) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_pd_extendable(const ToeplitzWindow& w, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= -tol * spectral_scale(es.eigenvalues());
}

std::optional<CompletionDisk> completion_disk(const ToeplitzWindow& w, double singular_tol) {
  Eigen::MatrixXcd t = w.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) <= singular_tol * spectral_scale(es.eigenvalues())) return std::nullopt;
  const Eigen::Index m = static_cast<Eigen::Index>(w.half_width);
  Eigen::MatrixXcd g = t.inverse();
  Eigen::VectorXcd a(m);
  for (Eigen::Index k = 0; k < m; ++k) a(k) = w.moments[static_cast<std::size_t>(k + 1)];
  const double g22 = g(m, m).real();
  Complex h = 0.0;
  double quad = 0.0;
  if (m > 0) {
    h = g.col(m).head(m).dot(a);  // g12^H a
    quad = a.dot(g.topLeftCorner(m, m) * a).real();
  }
  CompletionDisk d;
  d.center = -h / g22;
  double r2 = (w.moments[0].real() - quad + std::norm(h) / g22) / g22;
  d.radius = std::sqrt(std::max(0.0, r2));
  return d;
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations) {
  const Eigen::Index n = a.cols();
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n + 10);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double tol = 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()) * std::max<Eigen::Index>(a.rows(), n);

  auto solve_passive = [&](const std::vector<Eigen::Index>& idx) {
    Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) ap.col(static_cast<Eigen::Index>(i)) = a.col(idx[i]);
    Eigen::VectorXd zp = ap.colPivHouseholderQr().solve(b);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < idx.size(); ++i) z(idx[i]) = zp(static_cast<Eigen::Index>(i));
    return z;
  };

  for (int outer = 0; outer < max_iterations; ++outer) {
    Eigen::VectorXd grad = a.transpose() * (b - a * x);
    Eigen::Index best = -1;
    double best_val = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && grad(j) > best_val) {
        best_val = grad(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;

    while (true) {
      std::vector<Eigen::Index> idx;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
      }
      Eigen::VectorXd z = solve_passive(idx);
      bool feasible = true;
      for (Eigen::Index j : idx) feasible = feasible && z(j) > 0.0;
      if (feasible) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j : idx) {
        if (z(j) <= 0.0) alpha = std::min(alpha, x(j) / (x(j) - z(j)));
      }
      x += alpha * (z - x);
      for (Eigen::Index j : idx) {
        if (x(j) <= 1e-15) {
          x(j) = 0.0;
          passive[static_cast<std::size_t>(j)] = false;
        }
      }
    }
  }
  return x;
}

DiscreteMeasure caratheodory_atoms(const ToeplitzWindow& w, const CaratheodoryOptions& opts) {
  if (!is_pd_extendable(w, opts.tol)) {
    throw Error(ErrorCode::kNotApplicable, "window is not positive semidefinite");
  }
  const double t0 = w.moments[0].real();
  if (t0 <= opts.tol) return DiscreteMeasure(1);
  const double check = 1e-7 * std::max(1.0, t0);

  std::optional<DiscreteMeasure> nu;
  // The smallest singular leading block has a one-dimensional kernel.
  for (std::size_t s = 1; s <= w.moments.size() && !nu; ++s) {
    std::vector<Complex> head(w.moments.begin(), w.moments.begin() + static_cast<std::ptrdiff_t>(s));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(toeplitz(head));
    if (es.eigenvalues()(0) > 1e-10 * spectral_scale(es.eigenvalues())) continue;
    nu = pisarenko(es.eigenvectors().col(0), w.moments, opts.tol);
    if (!nu) break;
  }
  if (!nu) {
    auto disk = completion_disk(w);
    if (disk) {
      Complex border = disk->center + disk->radius;
      if (opts.border) {
        if (std::fabs(std::abs(*opts.border - disk->center) - disk->radius) > 1e-9 * std::max(1.0, disk->radius)) {
          throw Error(ErrorCode::kInvalidArgument, "border value is not on the completion circle");
        }
        border = *opts.border;
      }
      std::vector<Complex> t(w.moments);
      t.push_back(border);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(toeplitz(t));
      nu = pisarenko(es.eigenvectors().col(0), t, opts.tol);
    }
  }
  if (nu && moment_residual(*nu, w.moments) > check) nu.reset();
  if (!nu) nu = grid_fallback(w.moments, opts.fallback_grid, opts.fallback_residual);
  if (!nu) throw Error(ErrorCode::kNumerical, "no positive atomic representation found");
  return *nu;
}

DiscreteMeasure positive_minimal_extrapolation(const SpectralData& data, int n, int m, double tol) {
  ToeplitzWindow w = toeplitz_window(data, n, m);
  if (!is_pd_extendable(w)) {
    throw Error(ErrorCode::kNotApplicable, "window at " + std::to_string(n) + " does not extend to a positive-definite sequence");
  }
  DiscreteMeasure nu = modulate(caratheodory_atoms(w), Frequency{n});
  SpectralData f = fourier_transform(nu, data.lambda());
  const double scale = std::max(1.0, data.sup_norm());
  for (std::size_t j = 0; j < data.size(); ++j) {
    if (std::abs(f[j] - data[j]) > tol * scale) {
      throw Error(ErrorCode::kInconsistent, "window extension inconsistent with full data at " +
                                                data.lambda()[j].to_string());
    }
  }
  if (std::fabs(tv_norm(nu) - std::abs(data.at(Frequency{n}))) > tol * scale) {
    throw Error(ErrorCode::kNumerical, "positive extrapolation norm differs from |data(n)|");
  }
  return nu;
}

PositivityResult analyze_positivity(const SpectralData& data, int n, int m, double tol) {
  PositivityResult r;
  r.center = n;
  r.half_width = m;
  if (data.dim() != 1) {
    r.reason = "unsupported dimension";
    return r;
  }
  r.heuristic = !is_contiguous(data.lambda());
  ToeplitzWindow w;
  try {
    w = toeplitz_window(data, n, m);
  } catch (const Error& e) {
    r.reason = e.what();
    return r;
  }
  r.applicable = true;
  r.min_eigenvalue = min_eigenvalue(w);
  r.extendable = is_pd_extendable(w);
  if (!r.extendable) {
    r.reason = "Toeplitz matrix has a negative eigenvalue";
    return r;
  }
  try {
    r.measure = positive_minimal_extrapolation(data, n, m, tol);
  } catch (const Error& e) {
    r.reason = e.what();
  }
  return r;
}

double fejer_c_max(int n) { return (2.0 * n + 2.0) / (3.0 * n + 1.0); }

TrigPolynomial fejer_family(const FejerParams& p) {
  if (p.n < 2) throw Error(ErrorCode::kInvalidArgument, "Fejer family needs N >= 2");
  if (!(p.c > 0.0) || p.c > fejer_c_max(p.n) * (1.0 + 1e-15)) {
    throw Error(ErrorCode::kInvalidArgument, "c must lie in (0, (2N+2)/(3N+1)]");
  }
  std::vector<Complex> c;
  for (int m = -p.n; m <= p.n; ++m) {
    const int a = std::abs(m);
    if (a == 0) {
      c.emplace_back(2.0);
    } else if (a == 1) {
      c.emplace_back(0.0);
    } else {
      c.emplace_back(p.c * (1.0 - static_cast<double>(a) / (p.n + 1)));
    }
  }
  TrigPolynomial f(FrequencySet::range_1d(-p.n, p.n), std::move(c));
  for (int k = 0; k < 4096; ++k) {
    if (f(TorusPoint{k / 4096.0}).real() < -1e-9) {
      throw Error(ErrorCode::kNumerical, "Fejer polynomial is negative on the validation grid");
    }
  }
  return f;
}

}  // namespace minext
