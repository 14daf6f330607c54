#pragma once

#include <cstdint>
#include <vector>

#include "pgreedy/coeff_vector.hpp"

namespace pgreedy {

/// Finite search universe: every vector whose coordinates are 0 or
/// sign * magnitude, with at most max_support nonzero coordinates.
struct GridSpec {
  std::size_t dimension = 0;
  std::vector<double> magnitudes;  // ascending, contains 0 and 1
  std::vector<Scalar> signs;       // unimodular, contains 1
  std::size_t max_support = 0;
  /// Adds f + t 1_{eps A} for every grid vector f, ladder level t >= max|f|
  /// and A disjoint from supp f, even past max_support.
  bool indicator_augmented = false;

  /// Throws InputError on malformed ladders or signs.
  void validate() const;
  /// The universe is closed under f -> f + t 1_{eps A}.
  bool closure_ok() const noexcept;
  /// Nonzero magnitudes, ascending.
  std::vector<double> levels() const;
  std::uint64_t hash() const noexcept;

  /// Ladder {0, 1/4, 1/2, 1, 2}, real signs, full support.
  static GridSpec standard(std::size_t dimension);
};

/// Materialized universe of a GridSpec, in a fixed deterministic order.
class GridUniverse {
 public:
  /// Throws SizeError if dimension > max_dimension or the universe would
  /// exceed max_vectors.
  explicit GridUniverse(GridSpec spec, std::size_t max_dimension = 12, std::size_t max_vectors = 20'000'000);

  const GridSpec& spec() const noexcept { return spec_; }
  const std::vector<CoeffVector>& vectors() const noexcept { return vectors_; }
  std::size_t size() const noexcept { return vectors_.size(); }

 private:
  GridSpec spec_;
  std::vector<CoeffVector> vectors_;
};

/// Nonempty and empty subsets of `pool` (sorted), ordered by size then
/// lexicographically. Includes the empty set first.
std::vector<IndexSet> subsets_of(const IndexSet& pool, std::size_t max_size);

/// Calls fn(pattern) for every assignment of `signs` to `count` slots,
/// first slot varying slowest. Stops early when fn returns false.
template <class Fn>
void for_each_sign_pattern(const std::vector<Scalar>& signs, std::size_t count, Fn&& fn) {
  std::vector<std::size_t> digit(count, 0);
  std::vector<Scalar> pattern(count, signs.empty() ? Scalar{} : signs[0]);
  while (true) {
    if (!fn(static_cast<const std::vector<Scalar>&>(pattern))) return;
    std::size_t pos = count;
    while (pos > 0) {
      --pos;
      if (++digit[pos] < signs.size()) {
        pattern[pos] = signs[digit[pos]];
        break;
      }
      digit[pos] = 0;
      pattern[pos] = signs[0];
      if (pos == 0) return;
    }
    if (count == 0) return;
  }
}

}  // namespace pgreedy
