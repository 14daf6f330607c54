#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "pgreedy/scalar.hpp"

namespace pgreedy {

/// Sorted, duplicate-free list of 0-based coordinate positions. Position
/// n-1 carries the coefficient of the n-th basis vector.
using IndexSet = std::vector<std::size_t>;

/// A finitely supported element f = sum_n e_n^*(f) e_n of an n-dimensional
/// space with the canonical basis.
///
/// Storage is dense (dimensions here are small), but zero coordinates are
/// not part of the support: support() lists exactly the nonzero positions
/// and f == 0 iff the support is empty.
class CoeffVector {
 public:
  CoeffVector() = default;
  explicit CoeffVector(std::size_t dimension);
  CoeffVector(std::size_t dimension, std::initializer_list<double> values);

  static CoeffVector from_dense(std::span<const Scalar> values);
  static CoeffVector from_real(std::span<const double> values);

  std::size_t dimension() const noexcept { return coeffs_.size(); }

  /// e_{pos+1}^*(f). Unchecked.
  Scalar operator[](std::size_t pos) const noexcept { return coeffs_[pos]; }
  Scalar at(std::size_t pos) const;
  void set(std::size_t pos, Scalar value);

  std::span<const Scalar> dense() const noexcept { return coeffs_; }

  IndexSet support() const;
  std::size_t support_size() const noexcept;
  bool is_zero() const noexcept;
  bool is_real() const noexcept;

  /// max over the support of |e_n^*(f)| (order modulus); 0 for f = 0.
  double max_modulus() const noexcept;
  /// min over the support of |e_n^*(f)| (order modulus); 0 for f = 0.
  double min_modulus() const noexcept;

  CoeffVector& operator+=(const CoeffVector& other);
  CoeffVector& operator-=(const CoeffVector& other);
  CoeffVector& operator*=(Scalar t) noexcept;

  friend CoeffVector operator+(CoeffVector a, const CoeffVector& b) { return a += b; }
  friend CoeffVector operator-(CoeffVector a, const CoeffVector& b) { return a -= b; }
  friend CoeffVector operator*(Scalar t, CoeffVector a) noexcept { return a *= t; }

  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;

  /// Lexicographic comparison of (real, imag) pairs; used for
  /// deterministic tie-breaking only.
  friend bool lex_less(const CoeffVector& a, const CoeffVector& b) noexcept;

  std::uint64_t hash() const noexcept;

 private:
  std::vector<Scalar> coeffs_;
};

struct CoeffVectorHash {
  std::size_t operator()(const CoeffVector& v) const noexcept { return static_cast<std::size_t>(v.hash()); }
};

bool is_valid_index_set(const IndexSet& set, std::size_t dimension) noexcept;
bool disjoint(const IndexSet& a, const IndexSet& b) noexcept;
/// max(a) < min(b); true when either side is empty.
bool precedes(const IndexSet& a, const IndexSet& b) noexcept;

}  // namespace pgreedy
