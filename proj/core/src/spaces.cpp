#include "pgreedy/spaces.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "pgreedy/errors.hpp"
#include "pgreedy/golden.hpp"

namespace pgreedy {
namespace {

inline double modulus(Scalar x) noexcept {
  return x.imag() == 0.0 ? std::fabs(x.real()) : std::abs(x);
}

// |x|^p with the two exponents used throughout special-cased.
inline double pow_p(double x, double p) noexcept {
  if (p == 1.0) return x;
  if (p == 0.5) return std::sqrt(x);
  return std::pow(x, p);
}

inline double root_p(double s, double p) noexcept {
  if (p == 1.0) return s;
  if (p == 0.5) return s * s;
  return std::pow(s, 1.0 / p);
}

double weighted_sum(std::span<const double> weights, std::span<const Scalar> coeffs, double p) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == Scalar{}) continue;
    s += weights[i] * pow_p(modulus(coeffs[i]), p);
  }
  return s;
}

void check_weights(const std::vector<double>& weights, std::size_t dimension, std::string_view what) {
  if (weights.size() != dimension) {
    throw InputError(std::string(what) + ": expected " + std::to_string(dimension) + " weights, got " +
                     std::to_string(weights.size()));
  }
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw InputError(std::string(what) + ": weights must be finite and >= 0");
  }
}

}  // namespace

std::string_view norm_kind_name(const NormSpec& spec) noexcept {
  switch (spec.index()) {
    case 0: return "weighted_lp";
    case 1: return "summing_augmented_lp";
    default: return "matrix";
  }
}

PSpace::PSpace(std::size_t dimension, double p, Field field, NormSpec norm)
    : dimension_(dimension), p_(p), field_(field), norm_(std::move(norm)) {
  if (dimension_ == 0) throw InputError("space dimension must be positive");
  if (!(p_ > 0.0 && p_ <= 1.0)) throw InputError("p must lie in (0, 1]");
  if (const auto* w = std::get_if<WeightedLp>(&norm_)) {
    check_weights(w->weights, dimension_, "weighted_lp");
  } else if (const auto* s = std::get_if<SummingAugmentedLp>(&norm_)) {
    check_weights(s->weights, dimension_, "summing_augmented_lp");
  } else {
    const auto& m = std::get<MatrixNorm>(norm_);
    if (m.size != dimension_ || m.matrix.size() != dimension_ * dimension_) {
      throw InputError("matrix norm: matrix must be " + std::to_string(dimension_) + "x" +
                       std::to_string(dimension_));
    }
    check_weights(m.base_weights, dimension_, "matrix base");
    for (double x : m.matrix) {
      if (!std::isfinite(x)) throw InputError("matrix norm: entries must be finite");
    }
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mat(
        m.matrix.data(), static_cast<Eigen::Index>(m.size), static_cast<Eigen::Index>(m.size));
    if (!Eigen::FullPivLU<Eigen::MatrixXd>(mat).isInvertible()) {
      throw InputError("matrix norm: matrix is singular");
    }
  }
}

double PSpace::norm(const CoeffVector& f) const {
  if (f.dimension() != dimension_) {
    throw InputError("norm: vector of dimension " + std::to_string(f.dimension()) + " in space of dimension " +
                     std::to_string(dimension_));
  }
  return norm_unchecked(f.dense());
}

double PSpace::norm_unchecked(std::span<const Scalar> coeffs) const noexcept {
  if (const auto* w = std::get_if<WeightedLp>(&norm_)) {
    return root_p(weighted_sum(w->weights, coeffs, p_), p_);
  }
  if (const auto* s = std::get_if<SummingAugmentedLp>(&norm_)) {
    Scalar partial{};
    double largest = 0.0;
    for (Scalar x : coeffs) {
      partial += x;
      largest = std::max(largest, modulus(partial));
    }
    return root_p(weighted_sum(s->weights, coeffs, p_) + pow_p(largest, p_), p_);
  }
  const auto& m = std::get<MatrixNorm>(norm_);
  std::array<Scalar, 32> small{};
  std::vector<Scalar> large;
  Scalar* image = small.data();
  if (m.size > small.size()) {
    large.assign(m.size, Scalar{});
    image = large.data();
  }
  for (std::size_t r = 0; r < m.size; ++r) {
    Scalar acc{};
    const double* row = m.matrix.data() + r * m.size;
    for (std::size_t c = 0; c < m.size; ++c) {
      if (row[c] != 0.0) acc += row[c] * coeffs[c];
    }
    image[r] = acc;
  }
  return root_p(weighted_sum(m.base_weights, std::span<const Scalar>(image, m.size), p_), p_);
}

std::string PSpace::describe() const {
  std::ostringstream os;
  os << norm_kind_name(norm_) << "(dim=" << dimension_ << ", p=" << p_ << ", " << to_string(field_) << ")";
  return os.str();
}

double norm(const PSpace& space, const CoeffVector& f) { return space.norm(f); }

std::span<const BuiltinSpace> all_builtin_spaces() noexcept {
  static constexpr std::array kAll{BuiltinSpace::Lp, BuiltinSpace::WeightedGeometric, BuiltinSpace::SummingAugmented,
                                   BuiltinSpace::BidiagonalMatrix};
  return kAll;
}

std::string_view builtin_name(BuiltinSpace space) noexcept {
  switch (space) {
    case BuiltinSpace::Lp: return "lp";
    case BuiltinSpace::WeightedGeometric: return "weighted_geometric";
    case BuiltinSpace::SummingAugmented: return "summing";
    case BuiltinSpace::BidiagonalMatrix: return "bidiagonal";
  }
  return "unknown";
}

std::optional<BuiltinSpace> parse_builtin(std::string_view name) noexcept {
  for (BuiltinSpace s : all_builtin_spaces()) {
    if (builtin_name(s) == name) return s;
  }
  return std::nullopt;
}

PSpace make_builtin(BuiltinSpace space, std::size_t dimension, double p, Field field) {
  std::vector<double> ones(dimension, 1.0);
  switch (space) {
    case BuiltinSpace::Lp:
      return PSpace(dimension, p, field, WeightedLp{ones});
    case BuiltinSpace::WeightedGeometric: {
      std::vector<double> w(dimension);
      for (std::size_t i = 0; i < dimension; ++i) w[i] = std::ldexp(1.0, -static_cast<int>(i));
      return PSpace(dimension, p, field, WeightedLp{w});
    }
    case BuiltinSpace::SummingAugmented:
      return PSpace(dimension, p, field, SummingAugmentedLp{ones});
    case BuiltinSpace::BidiagonalMatrix: {
      MatrixNorm m;
      m.size = dimension;
      m.matrix.assign(dimension * dimension, 0.0);
      for (std::size_t i = 0; i < dimension; ++i) {
        m.matrix[i * dimension + i] = 1.0;
        if (i + 1 < dimension) m.matrix[i * dimension + i + 1] = -0.5;
      }
      m.base_weights = ones;
      return PSpace(dimension, p, field, std::move(m));
    }
  }
  throw InputError("unknown builtin space");
}

GeomConstants geom_constants(double p, Field field) {
  if (!(p > 0.0 && p <= 1.0)) throw InputError("geom_constants: p must lie in (0, 1]");
  GeomConstants g;
  g.p = p;
  g.field = field;
  g.A = std::pow(std::pow(2.0, p) - 1.0, -1.0 / p);
  g.B = std::pow(field == Field::Real ? 2.0 : 4.0, 1.0 / p) * g.A;
  return g;
}

EtaMinimum eta_p_minimum(double p, double u) {
  if (!(p > 0.0 && p <= 1.0)) throw InputError("eta_p: p must lie in (0, 1]");
  if (!(u > 0.0) || !std::isfinite(u)) throw InputError("eta_p: u must be positive and finite");
  const double a_p = geom_constants(p).A;
  auto objective = [p, u, a_p](double t) {
    const double first = std::pow(1.0 - std::pow(t, p), -1.0 / p);
    const double second = std::pow(1.0 - std::pow(1.0 + t / (a_p * u), -p), -1.0 / p);
    return first * second;
  };
  constexpr double kDelta = 1e-9;
  const GoldenResult r = golden_section_minimize(objective, kDelta, 1.0 - kDelta, 1e-9);
  return {r.value, r.argmin};
}

double eta_p(double p, double u) { return eta_p_minimum(p, u).value; }

// ---------------------------------------------------------------------------

AxiomReport check_axioms(const PSpace& space, std::size_t sample_count, std::uint64_t seed) {
  const std::size_t n = space.dimension();
  const double p = space.p();
  const bool complex_field = space.field() == Field::Complex;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> scalar(-3.0, 3.0);
  std::bernoulli_distribution zero(0.25);

  auto draw_vector = [&]() {
    CoeffVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (zero(rng)) continue;
      const double re = coeff(rng);
      const double im = complex_field ? coeff(rng) : 0.0;
      v.set(i, Scalar{re, im});
    }
    return v;
  };
  auto draw_scalar = [&]() {
    const double re = scalar(rng);
    const double im = complex_field ? scalar(rng) : 0.0;
    return Scalar{re, im};
  };

  AxiomReport report;
  report.samples = sample_count;
  report.worst_triangle_slack = std::numeric_limits<double>::infinity();
  std::vector<double> dual(n, 0.0);

  auto fail = [&report](std::string axiom, CoeffVector f, CoeffVector g, Scalar t, double lhs, double rhs) {
    if (!report.passed) return;
    report.passed = false;
    report.counterexample = AxiomViolation{std::move(axiom), std::move(f), std::move(g), t, lhs, rhs};
  };

  for (std::size_t i = 0; i < n; ++i) {
    CoeffVector e(n);
    e.set(i, Scalar{1.0, 0.0});
    const double ne = space.norm(e);
    if (!(ne > 0.0)) fail("positivity", e, CoeffVector(n), Scalar{1.0, 0.0}, ne, 0.0);
    report.basis_bound = std::max(report.basis_bound, ne);
    if (ne > 0.0) dual[i] = std::max(dual[i], 1.0 / ne);
  }

  for (std::size_t s = 0; s < sample_count; ++s) {
    CoeffVector f = draw_vector();
    CoeffVector g = draw_vector();
    const Scalar t = draw_scalar();
    const double nf = space.norm(f);
    const double ng = space.norm(g);

    for (const CoeffVector* v : {&f, &g}) {
      const double nv = v == &f ? nf : ng;
      if (!v->is_zero() && !(nv > 0.0)) fail("positivity", *v, CoeffVector(n), Scalar{1.0, 0.0}, nv, 0.0);
      if (nv > 0.0) {
        for (std::size_t i = 0; i < n; ++i) dual[i] = std::max(dual[i], std::abs((*v)[i]) / nv);
      }
    }

    const double scaled = space.norm(t * f);
    const double expected = std::abs(t) * nf;
    const double rel = std::fabs(scaled - expected) / std::max(expected, std::numeric_limits<double>::min());
    if (expected > 0.0 || scaled > 0.0) {
      report.worst_homogeneity_error = std::max(report.worst_homogeneity_error, rel);
      if (rel > 1e-12) fail("homogeneity", f, CoeffVector(n), t, scaled, expected);
    }

    const double nsum = space.norm(f + g);
    const double lhs = std::pow(nsum, p);
    const double rhs = std::pow(nf, p) + std::pow(ng, p);
    const double slack = (rhs - lhs) / std::max(1.0, rhs);
    report.worst_triangle_slack = std::min(report.worst_triangle_slack, slack);
    if (slack < -1e-12) fail("p-triangle", f, g, Scalar{1.0, 0.0}, lhs, rhs);
    if (nf + ng > 0.0) report.quasi_triangle_constant = std::max(report.quasi_triangle_constant, nsum / (nf + ng));
  }
  if (sample_count == 0) report.worst_triangle_slack = 0.0;
  for (double d : dual) report.basis_bound = std::max(report.basis_bound, d);
  return report;
}

// ---------------------------------------------------------------------------

bool ConvexityReport::all_hold() const noexcept {
  return std::all_of(items.begin(), items.end(), [](const ConvexityItem& i) { return i.holds; });
}

ConvexityReport check_convexity_bounds(const PSpace& space, const CoeffVector& g, const IndexSet& J,
                                       std::span<const Scalar> coeffs, const ConvexityOptions& options) {
  const std::size_t n = space.dimension();
  if (g.dimension() != n) throw InputError("check_convexity_bounds: g has the wrong dimension");
  if (!is_valid_index_set(J, n)) throw InputError("check_convexity_bounds: J is not a valid index set");
  if (coeffs.size() != J.size()) throw InputError("check_convexity_bounds: need one coefficient per index of J");
  if (J.size() > options.max_set_size) {
    throw SizeError("check_convexity_bounds: |J| = " + std::to_string(J.size()) + " exceeds the enumeration cap " +
                    std::to_string(options.max_set_size));
  }
  if (!disjoint(J, g.support())) throw InputError("check_convexity_bounds: J must be disjoint from supp(g)");

  const GeomConstants geom = geom_constants(space.p(), space.field());
  const std::vector<Scalar> signs =
      space.field() == Field::Real ? real_signs() : roots_of_unity(options.complex_roots);
  const double sign_patterns = std::pow(static_cast<double>(signs.size()), static_cast<double>(J.size()));
  if (sign_patterns > 16.0 * 1024 * 1024) {
    throw SizeError("check_convexity_bounds: sign enumeration over |J| = " + std::to_string(J.size()) +
                    " is too large");
  }

  CoeffVector combo = g;
  CoeffVector pure(n);
  bool unit_interval = true;
  bool unit_disc = true;
  for (std::size_t i = 0; i < J.size(); ++i) {
    combo.set(J[i], coeffs[i]);
    pure.set(J[i], coeffs[i]);
    const Scalar a = coeffs[i];
    if (!(a.imag() == 0.0 && a.real() >= 0.0 && a.real() <= 1.0)) unit_interval = false;
    if (!(std::abs(a) <= 1.0)) unit_disc = false;
  }
  const double lhs_ab = space.norm(combo);
  const double lhs_c = space.norm(pure);

  double sup_g_subsets = 0.0;
  double sup_subsets = 0.0;
  const std::size_t subsets = std::size_t{1} << J.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    CoeffVector with_g = g;
    CoeffVector alone(n);
    for (std::size_t i = 0; i < J.size(); ++i) {
      if (mask & (std::size_t{1} << i)) {
        with_g.set(J[i], Scalar{1.0, 0.0});
        alone.set(J[i], Scalar{1.0, 0.0});
      }
    }
    sup_g_subsets = std::max(sup_g_subsets, space.norm(with_g));
    sup_subsets = std::max(sup_subsets, space.norm(alone));
  }

  double sup_signs = 0.0;
  std::vector<std::size_t> digits(J.size(), 0);
  while (true) {
    CoeffVector v = g;
    for (std::size_t i = 0; i < J.size(); ++i) v.set(J[i], signs[digits[i]]);
    sup_signs = std::max(sup_signs, space.norm(v));
    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == signs.size()) digits[pos++] = 0;
    if (pos == digits.size()) break;
  }

  auto holds = [](double lhs, double rhs) { return (rhs - lhs) / std::max(1.0, rhs) >= -1e-12; };
  ConvexityReport report;
  ConvexityItem a{'a', unit_interval, lhs_ab, geom.A * sup_g_subsets, true};
  ConvexityItem b{'b', unit_disc, lhs_ab, geom.A * sup_signs, true};
  ConvexityItem c{'c', unit_disc, lhs_c, geom.B * sup_subsets, true};
  for (ConvexityItem* item : {&a, &b, &c}) item->holds = !item->applicable || holds(item->lhs, item->rhs);
  report.items = {a, b, c};
  return report;
}

}  // namespace pgreedy
