#pragma once

#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pgreedy/constants.hpp"
#include "pgreedy/grid.hpp"
#include "pgreedy/spaces.hpp"

namespace pgreedy {

/// Finite surrogate for the set of admissible (k, z): z has coefficients of
/// modulus tau(f) * multiplier, where tau(f) = max |f_n|.
///
/// `tail` extra coordinates past the grid dimension are open to z. The
/// searches then run in a window space of dimension n + tail whose norm
/// restricts to the original one on the first n coordinates.
struct RenormSearchSpec {
  std::vector<double> multipliers{1.0, 2.0, 4.0};  // >= 1, contains 1
  std::vector<Scalar> signs = real_signs();
  std::size_t max_support = 12;
  std::size_t max_candidates = 5'000'000;
  std::size_t tail = 0;

  void validate() const;
};

struct RenormCandidate {
  std::size_t k = 0;
  CoeffVector z;
};

/// (k, z) is admissible for f: supp z disjoint from supp f, k < min supp z
/// (1-based; vacuous for z = 0), k <= |supp z| and max|f| <= min|z|.
bool is_admissible(const CoeffVector& f, const RenormCandidate& c);

/// All candidates generated by `spec` for f, (0, 0) first. SizeError when the
/// count exceeds spec.max_candidates.
std::vector<RenormCandidate> enumerate_D(const CoeffVector& f, const RenormSearchSpec& spec);

struct NormAResult {
  double value = 0.0;
  RenormCandidate argmin;  // first minimiser in enumeration order
};

/// min over enumerate_D(f) of ||f - S_k f + z||, evaluated in `space`; f is
/// zero-padded when the space is a larger window.
NormAResult norm_a_with_argmin(const PSpace& space, const CoeffVector& f, const RenormSearchSpec& spec);
double norm_a(const PSpace& space, const CoeffVector& f, const RenormSearchSpec& spec);

/// Memoised norm_a for one (space, spec) pair. Safe to share across threads.
class RenormedNorm {
 public:
  RenormedNorm(const PSpace& space, RenormSearchSpec spec);
  double operator()(const CoeffVector& f) const;
  NormFn as_function() const;
  std::size_t cache_size() const;

 private:
  PSpace space_;
  RenormSearchSpec spec_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<CoeffVector, double, CoeffVectorHash> cache_;
};

struct RenormCheck {
  std::size_t vectors = 0;
  bool upper_ok = true;  // ||f||_a <= ||f|| on every grid vector
  std::size_t upper_violations = 0;
  bool homogeneity_ok = true;
  double worst_homogeneity_error = 0.0;  // relative
  double lower_constant = 0.0;           // c = 1 / D
  bool lower_checked = true;             // false in a larger window: its D was not estimated
  bool lower_ok = true;                  // c ||f|| <= ||f||_a
  bool positive_ok = true;               // ||f||_a > 0 for f != 0
  double worst_ratio = 1.0;              // min ||f||_a / ||f|| over f != 0
  std::optional<CoeffVector> worst_vector;

  bool passed() const noexcept { return upper_ok && homogeneity_ok && lower_ok && positive_ok; }
};

/// Renorming criterion on every grid vector: homogeneity for t in
/// {-1, 2, -1/2, 3} (and i over C), c ||f|| <= ||f||_a <= ||f|| with c = 1/d_value.
/// `space` is the search window; the lower bound is skipped when it is
/// larger than the grid.
RenormCheck check_renorming(const PSpace& space, const RenormSearchSpec& spec, const GridUniverse& universe,
                            double d_value);

/// The partially-greedy supremum measured in ||.||_a.
ConstantEstimate estimate_Cpg_renormed(const PSpace& space, const GridUniverse& universe,
                                       const RenormSearchSpec& spec, const SearchOptions& options = {});
/// The D supremum measured in ||.||_a.
ConstantEstimate estimate_D_renormed(const PSpace& space, const GridUniverse& universe, const RenormSearchSpec& spec,
                                     const SearchOptions& options = {});

}  // namespace pgreedy
