#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "minext/measure.hpp"
#include "minext/rational.hpp"

namespace minext {

// [lower, upper] is guaranteed to contain epsilon.
struct AdmissibilityRange {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_note;
  std::string upper_note;

  double width() const { return upper - lower; }
};

// lower = max_m |data(m)|; upper = min(mu_norm, extrapolation norms), or
// +infinity when neither is given. Throws Error(kInconsistent) if upper < lower.
AdmissibilityRange admissibility_range(
    const SpectralData& data, std::optional<double> mu_norm,
    const std::vector<double>& extrapolation_norms);

// Same, but each candidate is first checked to reproduce the data on lambda
// within tol; a candidate that does not is rejected with Error(kInconsistent).
AdmissibilityRange admissibility_range(
    const SpectralData& data, std::optional<double> mu_norm,
    const std::vector<DiscreteMeasure>& extrapolations, double tol = 1e-9);

// Frequencies where |data| attains epsilon.
struct GammaSet {
  std::vector<Frequency> members;
  double epsilon = 0.0;
  // Relative to epsilon.
  double tolerance = 0.0;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  bool contains(const Frequency& m) const;
};

// max(1e-7, 10 * gap_tol)
double default_gamma_tolerance(double solver_gap_tol = 1e-8);

GammaSet gamma_set(const SpectralData& data, double epsilon,
                   double tol = default_gamma_tolerance());

// alpha in [0, 1) with e^{2 pi i alpha} = data(m) / data(n).
double pair_offset(const Frequency& m, const Frequency& n,
                   const SpectralData& data);

// {x : x . difference + offset in Z}
struct Hyperplane {
  Frequency difference;
  double offset = 0.0;

  double violation(const TorusPoint& x) const;
};

struct HyperplaneFamily {
  std::vector<Hyperplane> planes;

  bool contains(const TorusPoint& x, double tol = kPointTolerance) const;
};

// x . direction takes one of `values` modulo 1. Each direction is primitive
// with its first nonzero entry positive.
struct ReducedHyperplane {
  Frequency direction;
  std::vector<double> values;
};

// Merges parallel hyperplane constraints into one constraint per primitive
// direction.
std::vector<ReducedHyperplane> reduce(const HyperplaneFamily& family);

// S = {x in T^d : P x + beta in Z^d}, generated by a base point and the
// columns q_k of P^{-1}.
struct Lattice {
  RationalMatrix p;
  RationalVector beta;
  // Solution of P x + beta = 0 (not reduced).
  RationalVector x0;
  std::vector<RationalVector> generators;
  // Error of the rational approximation to each offset, when offsets came in
  // as floating-point values.
  std::vector<double> beta_error;

  int dim() const { return static_cast<int>(beta.size()); }
  // |det P|, the number of lattice points in one period.
  Integer index() const;
  bool contains(const RationalVector& x) const;
  bool contains(const TorusPoint& x, double tol = kPointTolerance) const;
  // All lattice points in [0, 1)^d, sorted lexicographically.
  std::vector<RationalVector> points_in_torus() const;
  // Lexicographically smallest lattice point in [0, 1)^d.
  RationalVector base_point() const;
};

// Exact solve of P q_k = e_k and P x0 + beta = 0. Throws Error(kRankDeficient)
// when the differences are linearly dependent; the message carries the rank
// and an integer kernel vector.
Lattice lattice_solve(const std::vector<Frequency>& differences,
                      const RationalVector& offsets);

// Offsets are converted by continued fractions with the given cap.
Lattice lattice_solve(const std::vector<Frequency>& differences,
                      const std::vector<double>& offsets,
                      long long max_denominator = 1000000);

struct PointSupport {
  std::vector<TorusPoint> points;
  // "gamma" when derived from pair offsets, "certificate" from a zero set.
  std::string origin;
  HyperplaneFamily family;
};

struct HyperplaneSupport {
  HyperplaneFamily family;
  std::vector<ReducedHyperplane> reduced;
};

struct LatticeSupport {
  Lattice lattice;
  HyperplaneFamily family;
  // Lattice points that also satisfy every constraint in `family`.
  std::vector<TorusPoint> points;
};

struct WholeTorus {};

enum class UnknownReason { kSingleGamma, kAnalyticZeroSet };

struct UnknownSupport {
  UnknownReason reason;
  // Sampled zero set of the deficit polynomial, when one was computed.
  std::vector<TorusPoint> samples;
};

using SupportStructure = std::variant<PointSupport, HyperplaneSupport,
                                      LatticeSupport, WholeTorus, UnknownSupport>;

std::string kind_name(const SupportStructure& s);

// The finite candidate set for the support, if the structure has one.
std::optional<std::vector<TorusPoint>> finite_support(const SupportStructure& s);

bool structure_contains(const SupportStructure& s, const TorusPoint& x,
                        double tol = 1e-7);

// Support structure implied by Gamma:
//   #Gamma = 0 -> Unknown (analytic zero set; needs a certificate)
//   #Gamma = 1 -> Unknown (single element)
//   #Gamma >= 2, d = 1 -> Points
//   #Gamma >= 2, d >= 2 -> Lattice when d independent differences exist,
//                          Hyperplanes otherwise
SupportStructure support_structure(const GammaSet& gamma,
                                   const SpectralData& data, int dim);

// Minimum torus l-infinity distance between distinct atoms (+inf for fewer
// than two atoms).
double minimum_separation(const DiscreteMeasure& mu);

bool separation_check(const DiscreteMeasure& mu, int m, double c);

enum class CfgClause {
  kNone,
  kOneDimSeparation2,      // d = 1, M >= 128, C = 2
  kOneDimRealSeparation187,  // d = 1, real, M >= 128, C = 1.87
  kOneDimSeparation126,    // d = 1, M >= 1000, C = 1.26
  kTwoDimRealSeparation238,  // d = 2, real, M >= 512, C = 2.38
};

std::string to_string(CfgClause clause);

// Which of the known sufficient conditions for unique recovery on
// lambda = {-M..M}^d applies to mu. A predicate only.
CfgClause cfg_guarantee(const DiscreteMeasure& mu, int m, int dim,
                        bool real_valued);

struct FailureDiagnosis {
  double epsilon = 0.0;
  GammaSet gamma;
};

// When the optimal certificate is a unimodular character, epsilon equals the
// data sup-norm and Gamma is nonempty.
FailureDiagnosis algorithm_failure_diagnosis(bool phi_degenerate,
                                             const SpectralData& data,
                                             double tol = default_gamma_tolerance());

nlohmann::json structure_to_json(const SupportStructure& s);
nlohmann::json gamma_to_json(const GammaSet& g);

}  // namespace minext
