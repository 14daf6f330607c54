#include "pgreedy/scalar.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pgreedy/errors.hpp"

namespace pgreedy {

std::string_view to_string(Field field) noexcept {
  return field == Field::Real ? "real" : "complex";
}

Field parse_field(std::string_view text) {
  if (text == "real") return Field::Real;
  if (text == "complex") return Field::Complex;
  throw InputError("unknown field '" + std::string(text) + "' (expected real or complex)");
}

double order_modulus(Scalar x) noexcept {
  if (x.imag() == 0.0) return std::fabs(x.real());
  const double m = std::abs(x);
  if (m == 0.0 || !std::isfinite(m)) return m;
  int exponent = 0;
  const double mantissa = std::frexp(m, &exponent);
  return std::ldexp(std::round(std::ldexp(mantissa, 40)), exponent - 40);
}

Scalar unit_sign(Scalar x) noexcept {
  if (x.imag() == 0.0) {
    if (x.real() > 0) return {1.0, 0.0};
    if (x.real() < 0) return {-1.0, 0.0};
    return {0.0, 0.0};
  }
  return x / std::abs(x);
}

std::vector<Scalar> real_signs() { return {Scalar{1.0, 0.0}, Scalar{-1.0, 0.0}}; }

std::vector<Scalar> roots_of_unity(std::size_t count) {
  if (count == 0) throw InputError("roots_of_unity: count must be positive");
  std::vector<Scalar> roots;
  roots.reserve(count);
  auto snap = [](double v) {
    if (std::fabs(v) < 1e-15) return 0.0;
    if (std::fabs(v - 1.0) < 1e-15) return 1.0;
    if (std::fabs(v + 1.0) < 1e-15) return -1.0;
    return v;
  };
  for (std::size_t j = 0; j < count; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
    roots.emplace_back(snap(std::cos(angle)), snap(std::sin(angle)));
  }
  return roots;
}

}  // namespace pgreedy
