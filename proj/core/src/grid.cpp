#include "pgreedy/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <unordered_set>

#include "pgreedy/errors.hpp"

namespace pgreedy {
namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void mix(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffU;
    h *= kFnvPrime;
  }
}

void mix(std::uint64_t& h, double d) {
  if (d == 0.0) d = 0.0;
  std::uint64_t bits = 0;
  std::memcpy(&bits, &d, sizeof bits);
  mix(h, bits);
}

bool short_dyadic(double m) {
  const double scaled = std::ldexp(m, 20);
  return std::isfinite(scaled) && scaled == std::floor(scaled);
}

}  // namespace

void GridSpec::validate() const {
  if (dimension == 0) throw InputError("grid: dimension must be positive");
  if (magnitudes.empty()) throw InputError("grid: magnitude ladder is empty");
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    const double m = magnitudes[i];
    if (!std::isfinite(m) || m < 0.0) throw InputError("grid: magnitudes must be finite and >= 0");
    if (i > 0 && !(magnitudes[i - 1] < m)) throw InputError("grid: magnitudes must be strictly ascending");
    if (!short_dyadic(m)) {
      throw InputError("grid: magnitude " + std::to_string(m) + " is not a dyadic rational (denominator <= 2^20)");
    }
  }
  if (magnitudes.front() != 0.0) throw InputError("grid: ladder must contain 0");
  if (std::find(magnitudes.begin(), magnitudes.end(), 1.0) == magnitudes.end()) {
    throw InputError("grid: ladder must contain 1");
  }
  if (signs.empty()) throw InputError("grid: sign set is empty");
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (std::fabs(std::abs(signs[i]) - 1.0) > 1e-12) throw InputError("grid: signs must be unimodular");
    for (std::size_t j = 0; j < i; ++j) {
      if (signs[j] == signs[i]) throw InputError("grid: duplicate sign");
    }
  }
  if (std::find(signs.begin(), signs.end(), Scalar{1.0, 0.0}) == signs.end()) {
    throw InputError("grid: sign set must contain 1");
  }
  if (max_support == 0 || max_support > dimension) throw InputError("grid: max_support must lie in 1..dimension");
}

bool GridSpec::closure_ok() const noexcept { return max_support >= dimension || indicator_augmented; }

std::vector<double> GridSpec::levels() const {
  std::vector<double> out;
  for (double m : magnitudes) {
    if (m > 0.0) out.push_back(m);
  }
  return out;
}

std::uint64_t GridSpec::hash() const noexcept {
  std::uint64_t h = kFnvOffset;
  mix(h, static_cast<std::uint64_t>(dimension));
  mix(h, static_cast<std::uint64_t>(magnitudes.size()));
  for (double m : magnitudes) mix(h, m);
  mix(h, static_cast<std::uint64_t>(signs.size()));
  for (Scalar s : signs) {
    mix(h, s.real());
    mix(h, s.imag());
  }
  mix(h, static_cast<std::uint64_t>(max_support));
  mix(h, static_cast<std::uint64_t>(indicator_augmented ? 1 : 0));
  return h;
}

GridSpec GridSpec::standard(std::size_t dimension) {
  GridSpec g;
  g.dimension = dimension;
  g.magnitudes = {0.0, 0.25, 0.5, 1.0, 2.0};
  g.signs = real_signs();
  g.max_support = dimension;
  return g;
}

std::vector<IndexSet> subsets_of(const IndexSet& pool, std::size_t max_size) {
  std::vector<IndexSet> out{IndexSet{}};
  const std::size_t top = std::min(max_size, pool.size());
  for (std::size_t r = 1; r <= top; ++r) {
    std::vector<std::size_t> pick(r);
    for (std::size_t j = 0; j < r; ++j) pick[j] = j;
    while (true) {
      IndexSet s(r);
      for (std::size_t j = 0; j < r; ++j) s[j] = pool[pick[j]];
      out.push_back(std::move(s));
      std::size_t j = r;
      while (j > 0 && pick[j - 1] == pool.size() - r + (j - 1)) --j;
      if (j == 0) break;
      ++pick[j - 1];
      for (std::size_t l = j; l < r; ++l) pick[l] = pick[l - 1] + 1;
    }
  }
  return out;
}

GridUniverse::GridUniverse(GridSpec spec, std::size_t max_dimension, std::size_t max_vectors)
    : spec_(std::move(spec)) {
  spec_.validate();
  const std::size_t n = spec_.dimension;
  if (n > max_dimension) {
    throw SizeError("grid dimension " + std::to_string(n) + " exceeds the cap " + std::to_string(max_dimension) +
                    " (raise it with --max-dim)");
  }

  std::vector<Scalar> values{Scalar{}};
  for (double m : spec_.levels()) {
    for (Scalar s : spec_.signs) values.push_back(is_real(s) ? Scalar{m * s.real(), 0.0} : m * s);
  }
  const double base_count = std::pow(static_cast<double>(values.size()), static_cast<double>(n));
  if (base_count > static_cast<double>(max_vectors) * 16.0) {
    throw SizeError("grid universe would hold about " + std::to_string(base_count) + " vectors (cap " +
                    std::to_string(max_vectors) + "); shrink the ladder, signs, max_support or --max-dim");
  }

  std::vector<std::size_t> digit(n, 0);
  CoeffVector current(n);
  std::size_t support = 0;
  while (true) {
    if (support <= spec_.max_support) {
      vectors_.push_back(current);
      if (vectors_.size() > max_vectors) {
        throw SizeError("grid universe exceeds " + std::to_string(max_vectors) +
                        " vectors; shrink the ladder, signs, max_support or --max-dim");
      }
    }
    std::size_t pos = n;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (digit[pos] == 0) ++support;
      if (++digit[pos] < values.size()) {
        current.set(pos, values[digit[pos]]);
        done = false;
        break;
      }
      digit[pos] = 0;
      --support;
      current.set(pos, Scalar{});
    }
    if (done) break;
  }

  if (spec_.indicator_augmented && spec_.max_support < n) {
    std::unordered_set<CoeffVector, CoeffVectorHash> seen(vectors_.begin(), vectors_.end());
    const std::size_t base = vectors_.size();
    const std::vector<double> levels = spec_.levels();
    for (std::size_t b = 0; b < base; ++b) {
      const CoeffVector f = vectors_[b];
      IndexSet free;
      for (std::size_t i = 0; i < n; ++i) {
        if (f[i] == Scalar{}) free.push_back(i);
      }
      const double top = f.max_modulus();
      for (double t : levels) {
        if (t < top) continue;
        for (const IndexSet& A : subsets_of(free, free.size())) {
          if (A.empty()) continue;
          for_each_sign_pattern(spec_.signs, A.size(), [&](const std::vector<Scalar>& eps) {
            CoeffVector g = f;
            for (std::size_t j = 0; j < A.size(); ++j) {
              g.set(A[j], is_real(eps[j]) ? Scalar{t * eps[j].real(), 0.0} : t * eps[j]);
            }
            if (seen.insert(g).second) {
              vectors_.push_back(std::move(g));
              if (vectors_.size() > max_vectors) {
                throw SizeError("augmented grid universe exceeds " + std::to_string(max_vectors) + " vectors");
              }
            }
            return true;
          });
        }
      }
    }
  }
}

}  // namespace pgreedy
