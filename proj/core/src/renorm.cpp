#include "pgreedy/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pgreedy/errors.hpp"
#include "pgreedy/greedy.hpp"

namespace pgreedy {
namespace {

CoeffVector apply(const CoeffVector& f, const RenormCandidate& c) {
  CoeffVector out = f;
  for (std::size_t i = 0; i < c.k; ++i) out.set(i, Scalar{});
  return out + c.z;
}

// f zero-padded to the window dimension.
CoeffVector embed(const CoeffVector& f, std::size_t n) {
  if (f.dimension() == n) return f;
  if (f.dimension() > n) {
    throw InputError("renorm: vector of dimension " + std::to_string(f.dimension()) +
                     " does not fit the search window of dimension " + std::to_string(n));
  }
  CoeffVector out(n);
  for (std::size_t i = 0; i < f.dimension(); ++i) out.set(i, f[i]);
  return out;
}

}  // namespace

void RenormSearchSpec::validate() const {
  if (multipliers.empty()) throw InputError("renorm: multiplier list is empty");
  for (double m : multipliers) {
    if (!std::isfinite(m) || m < 1.0) throw InputError("renorm: multipliers must be finite and >= 1");
  }
  if (std::find(multipliers.begin(), multipliers.end(), 1.0) == multipliers.end()) {
    throw InputError("renorm: multipliers must contain 1");
  }
  if (max_support == 0) throw InputError("renorm: max_support must be at least 1");
  if (signs.empty()) throw InputError("renorm: sign set is empty");
  for (Scalar s : signs) {
    if (std::fabs(std::abs(s) - 1.0) > 1e-12) throw InputError("renorm: signs must be unimodular");
  }
}

bool is_admissible(const CoeffVector& f, const RenormCandidate& c) {
  if (c.z.dimension() != f.dimension() || c.k > f.dimension()) return false;
  const IndexSet zs = c.z.support();
  if (!disjoint(zs, f.support())) return false;
  if (zs.empty()) return c.k == 0;
  if (c.k > zs.front() || c.k > zs.size()) return false;
  return f.max_modulus() <= c.z.min_modulus();
}

std::vector<RenormCandidate> enumerate_D(const CoeffVector& f, const RenormSearchSpec& spec) {
  spec.validate();
  const std::size_t n = f.dimension();
  std::vector<RenormCandidate> out;
  out.push_back({0, CoeffVector(n)});
  if (f.is_zero()) return out;
  const double tau = f.max_modulus();
  std::vector<Scalar> values;
  for (double m : spec.multipliers) {
    for (Scalar s : spec.signs) values.push_back((tau * m) * s);
  }
  IndexSet free;
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i] == Scalar{}) free.push_back(i);
  }
  for (const IndexSet& Z : subsets_of(free, spec.max_support)) {
    if (Z.empty()) continue;
    const std::size_t kmax = std::min(Z.front(), Z.size());
    for_each_sign_pattern(values, Z.size(), [&](const std::vector<Scalar>& coeffs) {
      CoeffVector z(n);
      for (std::size_t j = 0; j < Z.size(); ++j) z.set(Z[j], coeffs[j]);
      for (std::size_t k = 0; k <= kmax; ++k) {
        out.push_back({k, z});
        if (out.size() > spec.max_candidates) {
          throw SizeError("renorm: more than " + std::to_string(spec.max_candidates) +
                          " candidates; lower renorm max_support or the multiplier count");
        }
      }
      return true;
    });
  }
  return out;
}

NormAResult norm_a_with_argmin(const PSpace& space, const CoeffVector& f_in, const RenormSearchSpec& spec) {
  const CoeffVector f = embed(f_in, space.dimension());
  const std::vector<RenormCandidate> cands = enumerate_D(f, spec);
  NormAResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const RenormCandidate& c : cands) {
    const double v = space.norm(apply(f, c));
    if (v < best.value) {
      best.value = v;
      best.argmin = c;
    }
  }
  return best;
}

double norm_a(const PSpace& space, const CoeffVector& f, const RenormSearchSpec& spec) {
  return norm_a_with_argmin(space, f, spec).value;
}

RenormedNorm::RenormedNorm(const PSpace& space, RenormSearchSpec spec) : space_(space), spec_(std::move(spec)) {
  spec_.validate();
}

double RenormedNorm::operator()(const CoeffVector& f) const {
  {
    std::lock_guard lock(mutex_);
    const auto it = cache_.find(f);
    if (it != cache_.end()) return it->second;
  }
  const double v = norm_a(space_, f, spec_);
  std::lock_guard lock(mutex_);
  cache_.emplace(f, v);
  return v;
}

NormFn RenormedNorm::as_function() const {
  return [this](const CoeffVector& f) { return (*this)(f); };
}

std::size_t RenormedNorm::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

RenormCheck check_renorming(const PSpace& space, const RenormSearchSpec& spec, const GridUniverse& universe,
                            double d_value) {
  RenormedNorm na(space, spec);
  RenormCheck r;
  r.lower_constant = d_value > 0.0 ? 1.0 / d_value : 0.0;
  r.lower_checked = space.dimension() == universe.spec().dimension;
  std::vector<Scalar> scalars{Scalar{-1.0, 0.0}, Scalar{2.0, 0.0}, Scalar{-0.5, 0.0}, Scalar{3.0, 0.0}};
  if (space.field() == Field::Complex) scalars.emplace_back(0.0, 1.0);
  for (const CoeffVector& f : universe.vectors()) {
    ++r.vectors;
    const double plain = space.norm(embed(f, space.dimension()));
    const double renormed = na(f);
    if (renormed > plain) {
      r.upper_ok = false;
      ++r.upper_violations;
    }
    if (f.is_zero()) continue;
    if (!(renormed > 0.0)) r.positive_ok = false;
    const double ratio = renormed / plain;
    if (ratio < r.worst_ratio) {
      r.worst_ratio = ratio;
      r.worst_vector = f;
    }
    if (r.lower_checked && r.lower_constant * plain > renormed * (1.0 + 1e-12)) r.lower_ok = false;
    for (Scalar t : scalars) {
      const double scaled = norm_a(space, t * f, spec);
      const double expected = std::abs(t) * renormed;
      if (expected == 0.0) continue;
      const double err = std::fabs(scaled - expected) / expected;
      r.worst_homogeneity_error = std::max(r.worst_homogeneity_error, err);
      if (err > 1e-12) r.homogeneity_ok = false;
    }
  }
  return r;
}

ConstantEstimate estimate_Cpg_renormed(const PSpace& space, const GridUniverse& universe,
                                       const RenormSearchSpec& spec, const SearchOptions& options) {
  RenormedNorm na(space, spec);
  return estimate_Cpg_for_norm(na.as_function(), universe, TiePolicy::All, options);
}

ConstantEstimate estimate_D_renormed(const PSpace& space, const GridUniverse& universe, const RenormSearchSpec& spec,
                                     const SearchOptions& options) {
  RenormedNorm na(space, spec);
  return estimate_D_for_norm(na.as_function(), universe, options);
}

}  // namespace pgreedy
