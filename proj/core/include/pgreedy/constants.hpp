#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pgreedy/coeff_vector.hpp"
#include "pgreedy/greedy.hpp"
#include "pgreedy/grid.hpp"
#include "pgreedy/spaces.hpp"

namespace pgreedy {

enum class ConstantKind {
  Cqg,      // quasi-greedy
  Cql,      // quasi-greedy for largest coefficients
  Cpg,      // partially greedy
  D,        // supremum of ||f|| / ||f - S_k f + z|| over admissible (f, k, z)
  Delta,    // conservative, all signs 1
  DeltaS,   // super-conservative
  DeltaPl,  // partially symmetric for largest coefficients
  GammaU,   // restricted truncation bound
  GammaT,   // truncation bound
  CThree,   // ||f|| / ||f - S_k f + 1_{eps B}||
};

std::span<const ConstantKind> all_constant_kinds() noexcept;
std::string_view symbol(ConstantKind kind) noexcept;
std::string_view long_name(ConstantKind kind) noexcept;
std::optional<ConstantKind> parse_constant_kind(std::string_view text) noexcept;

/// Configuration attaining an estimate. Unused fields stay empty.
struct Witness {
  CoeffVector f;
  IndexSet A;
  IndexSet B;
  std::vector<Scalar> signs_A;
  std::vector<Scalar> signs_B;
  std::size_t k = 0;
  CoeffVector z;
  double level = 0.0;  // magnitude t of the indicator sums
};

struct ConstantEstimate {
  ConstantKind kind = ConstantKind::Cqg;
  double value = 0.0;  // 0: no admissible configuration; +inf: degenerate norm
  std::optional<Witness> witness;
  std::uint64_t grid_hash = 0;
  std::uint64_t configurations = 0;
  std::string warning;
  TiePolicy ties = TiePolicy::All;
};

struct SearchOptions {
  std::size_t workers = 1;
  std::size_t max_dimension = 12;
};

using NormFn = std::function<double(const CoeffVector&)>;

/// Exhaustive lower-bound estimators over a grid universe.
///
/// Each search is split over the leading configuration element (the grid
/// vector f, or the set B for the conservative constants). Workers keep
/// their local maximum; the merge picks the largest value and breaks ties by
/// the earliest configuration in enumeration order, so the result does not
/// depend on the worker count.
class GridSearch {
 public:
  GridSearch(const PSpace& space, const GridSpec& grid, SearchOptions options = {});

  const PSpace& space() const noexcept { return space_; }
  const GridUniverse& universe() const noexcept { return universe_; }
  const SearchOptions& options() const noexcept { return options_; }

  ConstantEstimate estimate(ConstantKind kind) const;

  ConstantEstimate estimate_Cqg() const;
  ConstantEstimate estimate_Cql() const;
  ConstantEstimate estimate_Cpg(TiePolicy ties = TiePolicy::All) const;
  ConstantEstimate estimate_D() const;
  /// kind must be Delta or DeltaS.
  ConstantEstimate estimate_conservative(ConstantKind kind) const;
  ConstantEstimate estimate_Delta_pl() const;
  ConstantEstimate estimate_C_three() const;
  /// kind must be GammaU or GammaT.
  ConstantEstimate estimate_truncation(ConstantKind kind) const;

 private:
  PSpace space_;
  GridUniverse universe_;
  SearchOptions options_;
};

/// The partially-greedy supremum with an arbitrary norm in place of the
/// space norm.
ConstantEstimate estimate_Cpg_for_norm(const NormFn& norm, const GridUniverse& universe, TiePolicy ties,
                                       const SearchOptions& options);
/// The D supremum with an arbitrary norm.
ConstantEstimate estimate_D_for_norm(const NormFn& norm, const GridUniverse& universe, const SearchOptions& options);

/// Recomputes the defining ratio of `estimate` from its witness alone.
/// Throws InputError when the estimate carries no witness.
double recompute_ratio(const PSpace& space, const ConstantEstimate& estimate);
double recompute_ratio(const NormFn& norm, const ConstantEstimate& estimate);

}  // namespace pgreedy
