#pragma once

#include <complex>
#include <string_view>
#include <vector>

namespace pgreedy {

/// Coefficients are stored as complex doubles; real spaces keep the
/// imaginary part at exactly zero.
using Scalar = std::complex<double>;

enum class Field { Real, Complex };

std::string_view to_string(Field field) noexcept;
Field parse_field(std::string_view text);

/// Modulus used to order coefficients (greedy sets, ties, truncations).
///
/// Real entries give |x| exactly. Complex entries are rounded to 40
/// significant bits, so t*e1 and t*e2 compare equal for unimodular e1, e2
/// even though std::abs of the two products may differ in the last ulp.
double order_modulus(Scalar x) noexcept;

/// x/|x| for x != 0 and 0 otherwise.
Scalar unit_sign(Scalar x) noexcept;

inline bool is_real(Scalar x) noexcept { return x.imag() == 0.0; }

/// {+1, -1}.
std::vector<Scalar> real_signs();

/// The K-th roots of unity, with components that are zero up to rounding
/// snapped to zero so that K = 2 and K = 4 are exact.
std::vector<Scalar> roots_of_unity(std::size_t count);

}  // namespace pgreedy
