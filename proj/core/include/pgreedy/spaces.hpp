#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pgreedy/coeff_vector.hpp"
#include "pgreedy/scalar.hpp"

namespace pgreedy {

/// (sum_n w_n |f_n|^p)^(1/p).
struct WeightedLp {
  std::vector<double> weights;
};

/// (sum_n w_n |f_n|^p + max_k |f_1 + ... + f_k|^p)^(1/p).
struct SummingAugmentedLp {
  std::vector<double> weights;
};

/// ||M f|| measured in a weighted lp base norm. M must be invertible.
struct MatrixNorm {
  std::size_t size = 0;
  std::vector<double> matrix;  // row-major size x size
  std::vector<double> base_weights;
};

using NormSpec = std::variant<WeightedLp, SummingAugmentedLp, MatrixNorm>;

std::string_view norm_kind_name(const NormSpec& spec) noexcept;

/// A finite-dimensional p-normed space with its canonical basis.
///
/// Construction validates shapes, p in (0,1], finite nonnegative weights
/// and invertibility of matrices. Zero weights are accepted on purpose:
/// they produce a map that is not a p-norm, which check_axioms() reports.
class PSpace {
 public:
  PSpace(std::size_t dimension, double p, Field field, NormSpec norm);

  std::size_t dimension() const noexcept { return dimension_; }
  double p() const noexcept { return p_; }
  Field field() const noexcept { return field_; }
  const NormSpec& norm_spec() const noexcept { return norm_; }

  /// ||f||. Throws InputError when f has the wrong dimension.
  double norm(const CoeffVector& f) const;
  /// ||f|| without the dimension check; `coeffs.size()` must equal dimension().
  double norm_unchecked(std::span<const Scalar> coeffs) const noexcept;

  std::string describe() const;

 private:
  std::size_t dimension_;
  double p_;
  Field field_;
  NormSpec norm_;
};

double norm(const PSpace& space, const CoeffVector& f);

enum class BuiltinSpace {
  Lp,                 // weights all 1: the canonical (symmetric) basis of lp
  WeightedGeometric,  // weights 2^-(n-1): unconditional, not conservative
  SummingAugmented,   // weights all 1 plus the summing term
  BidiagonalMatrix,   // M = I - (1/2) * superdiagonal shift over unit weights
};

std::span<const BuiltinSpace> all_builtin_spaces() noexcept;
std::string_view builtin_name(BuiltinSpace space) noexcept;
std::optional<BuiltinSpace> parse_builtin(std::string_view name) noexcept;
PSpace make_builtin(BuiltinSpace space, std::size_t dimension, double p, Field field = Field::Real);

struct GeomConstants {
  double p = 1.0;
  Field field = Field::Real;
  double A = 1.0;  // (2^p - 1)^(-1/p)
  double B = 2.0;  // 2^(1/p) A over R, 4^(1/p) A over C
};

GeomConstants geom_constants(double p, Field field = Field::Real);

/// min over t in (0,1) of (1-t^p)^(-1/p) (1-(1+t/(A_p u))^(-p))^(-1/p),
/// by golden-section search on (1e-9, 1 - 1e-9) with tolerance 1e-9 in t.
double eta_p(double p, double u);

struct EtaMinimum {
  double value = 0.0;
  double argmin = 0.0;
};
EtaMinimum eta_p_minimum(double p, double u);

// ---------------------------------------------------------------------------
// Axiom checks

struct AxiomViolation {
  std::string axiom;  // "positivity", "homogeneity" or "p-triangle"
  CoeffVector f;
  CoeffVector g;
  Scalar t;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct AxiomReport {
  bool passed = true;
  std::size_t samples = 0;
  double worst_homogeneity_error = 0.0;  // relative
  double worst_triangle_slack = 0.0;     // min of (rhs - lhs) / max(1, rhs)
  double quasi_triangle_constant = 0.0;  // max ||f+g|| / (||f|| + ||g||), measured
  double basis_bound = 0.0;              // max_n max(||e_n||, sampled ||e_n^*||)
  std::optional<AxiomViolation> counterexample;
};

/// Samples `sample_count` random pairs (f, g) and scalars t from `seed` and
/// checks positivity, homogeneity (relative error <= 1e-12) and the
/// p-triangle inequality (normalised slack >= -1e-12). Positivity is also
/// checked on every basis vector. Failures are reported, never thrown.
AxiomReport check_axioms(const PSpace& space, std::size_t sample_count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Convexity bounds

struct ConvexityItem {
  char item = 'a';          // 'a', 'b' or 'c'
  bool applicable = false;  // hypotheses on the coefficients hold
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

struct ConvexityReport {
  std::vector<ConvexityItem> items;  // always three entries, a, b, c
  bool all_hold() const noexcept;
};

struct ConvexityOptions {
  std::size_t max_set_size = 20;
  /// Unimodular values used for the sign supremum of item b over C.
  std::size_t complex_roots = 8;
};

/// Evaluates both sides of the three convex-hull bounds for g plus a
/// combination of basis vectors on J:
///   a) ||g + sum a_n e_n|| <= A_p max_{A subset J} ||g + 1_A||,   0 <= a_n <= 1
///   b) ||g + sum a_n e_n|| <= A_p max_{signs} ||g + 1_{eps J}||,  |a_n| <= 1
///   c) ||sum a_n e_n||     <= B_p max_{A subset J} ||1_A||,       |a_n| <= 1
/// The suprema are computed by exhaustive enumeration. J must be disjoint
/// from supp(g); |J| above `max_set_size` raises SizeError.
ConvexityReport check_convexity_bounds(const PSpace& space, const CoeffVector& g, const IndexSet& J,
                                       std::span<const Scalar> coeffs, const ConvexityOptions& options = {});

}  // namespace pgreedy
