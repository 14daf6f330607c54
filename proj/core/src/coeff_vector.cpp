#include "pgreedy/coeff_vector.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "pgreedy/errors.hpp"

namespace pgreedy {

CoeffVector::CoeffVector(std::size_t dimension) : coeffs_(dimension, Scalar{}) {}

CoeffVector::CoeffVector(std::size_t dimension, std::initializer_list<double> values)
    : coeffs_(dimension, Scalar{}) {
  if (values.size() != dimension) {
    throw InputError("CoeffVector: expected " + std::to_string(dimension) + " values, got " +
                     std::to_string(values.size()));
  }
  std::size_t pos = 0;
  for (double v : values) coeffs_[pos++] = Scalar{v, 0.0};
}

CoeffVector CoeffVector::from_dense(std::span<const Scalar> values) {
  CoeffVector v(values.size());
  std::copy(values.begin(), values.end(), v.coeffs_.begin());
  return v;
}

CoeffVector CoeffVector::from_real(std::span<const double> values) {
  CoeffVector v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v.coeffs_[i] = Scalar{values[i], 0.0};
  return v;
}

Scalar CoeffVector::at(std::size_t pos) const {
  if (pos >= coeffs_.size()) {
    throw InputError("index " + std::to_string(pos + 1) + " outside 1.." + std::to_string(coeffs_.size()));
  }
  return coeffs_[pos];
}

void CoeffVector::set(std::size_t pos, Scalar value) {
  if (pos >= coeffs_.size()) {
    throw InputError("index " + std::to_string(pos + 1) + " outside 1.." + std::to_string(coeffs_.size()));
  }
  coeffs_[pos] = value;
}

IndexSet CoeffVector::support() const {
  IndexSet s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != Scalar{}) s.push_back(i);
  }
  return s;
}

std::size_t CoeffVector::support_size() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](Scalar x) { return x != Scalar{}; }));
}

bool CoeffVector::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Scalar x) { return x == Scalar{}; });
}

bool CoeffVector::is_real() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Scalar x) { return x.imag() == 0.0; });
}

double CoeffVector::max_modulus() const noexcept {
  double m = 0.0;
  for (Scalar x : coeffs_) m = std::max(m, order_modulus(x));
  return m;
}

double CoeffVector::min_modulus() const noexcept {
  double m = 0.0;
  bool first = true;
  for (Scalar x : coeffs_) {
    if (x == Scalar{}) continue;
    const double a = order_modulus(x);
    if (first || a < m) m = a;
    first = false;
  }
  return m;
}

CoeffVector& CoeffVector::operator+=(const CoeffVector& other) {
  if (other.dimension() != dimension()) throw InputError("CoeffVector: dimension mismatch in +");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

CoeffVector& CoeffVector::operator-=(const CoeffVector& other) {
  if (other.dimension() != dimension()) throw InputError("CoeffVector: dimension mismatch in -");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

CoeffVector& CoeffVector::operator*=(Scalar t) noexcept {
  for (Scalar& x : coeffs_) x *= t;
  return *this;
}

bool lex_less(const CoeffVector& a, const CoeffVector& b) noexcept {
  return std::lexicographical_compare(
      a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(), b.coeffs_.end(), [](Scalar x, Scalar y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
      });
}

std::uint64_t CoeffVector::hash() const noexcept {
  // FNV-1a over the bit patterns; -0.0 is normalised to 0.0 first.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](double d) {
    if (d == 0.0) d = 0.0;
    std::uint64_t bits = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  for (Scalar x : coeffs_) {
    mix(x.real());
    mix(x.imag());
  }
  return h;
}

bool is_valid_index_set(const IndexSet& set, std::size_t dimension) noexcept {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] >= dimension) return false;
    if (i > 0 && set[i] <= set[i - 1]) return false;
  }
  return true;
}

bool disjoint(const IndexSet& a, const IndexSet& b) noexcept {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) ++i; else ++j;
  }
  return true;
}

bool precedes(const IndexSet& a, const IndexSet& b) noexcept {
  if (a.empty() || b.empty()) return true;
  return a.back() < b.front();
}

}  // namespace pgreedy
