#include "pgreedy/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pgreedy/errors.hpp"

namespace pgreedy {
namespace {

void require_index_set(const IndexSet& A, std::size_t dimension, const char* what) {
  if (!is_valid_index_set(A, dimension)) {
    throw InputError(std::string(what) + ": index set must be sorted, distinct and inside 1.." +
                     std::to_string(dimension));
  }
}

// Positions ordered by decreasing modulus, ties by position.
std::vector<std::size_t> greedy_order(const std::vector<double>& mod) {
  std::vector<std::size_t> order(mod.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&mod](std::size_t a, std::size_t b) { return mod[a] > mod[b]; });
  return order;
}

std::vector<double> moduli(const CoeffVector& f) {
  std::vector<double> mod(f.dimension());
  for (std::size_t i = 0; i < mod.size(); ++i) mod[i] = order_modulus(f[i]);
  return mod;
}

void check_truncation_contract(const CoeffVector& f, const IndexSet& A) {
  require_index_set(A, f.dimension(), "truncation");
  for (std::size_t n : A) {
    if (f[n] == Scalar{}) {
      throw ContractError("truncation: index " + std::to_string(n + 1) + " of A lies outside supp(f)");
    }
  }
  if (!is_greedy_set(f, A)) throw ContractError("truncation: A is not a greedy set of f");
}

}  // namespace

std::string_view to_string(TiePolicy ties) noexcept { return ties == TiePolicy::All ? "all" : "first"; }

std::optional<TiePolicy> parse_tie_policy(std::string_view text) noexcept {
  if (text == "all") return TiePolicy::All;
  if (text == "first") return TiePolicy::First;
  return std::nullopt;
}

std::vector<GreedySet> greedy_sets(const CoeffVector& f, std::size_t m, TiePolicy ties) {
  const std::size_t n = f.dimension();
  if (m > n) {
    throw InputError("greedy_sets: order " + std::to_string(m) + " outside 0.." + std::to_string(n));
  }
  if (m == 0) return {GreedySet{}};
  const std::vector<double> mod = moduli(f);
  const std::vector<std::size_t> order = greedy_order(mod);

  if (ties == TiePolicy::First) {
    GreedySet g{IndexSet(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m))};
    std::sort(g.indices.begin(), g.indices.end());
    return {g};
  }

  const double threshold = mod[order[m - 1]];
  IndexSet must;
  IndexSet tied;
  for (std::size_t i = 0; i < n; ++i) {
    if (mod[i] > threshold) must.push_back(i);
    else if (mod[i] == threshold) tied.push_back(i);
  }
  const std::size_t r = m - must.size();

  std::vector<GreedySet> out;
  std::vector<std::size_t> pick(r);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  while (true) {
    GreedySet g{must};
    for (std::size_t j : pick) g.indices.push_back(tied[j]);
    std::sort(g.indices.begin(), g.indices.end());
    out.push_back(std::move(g));
    // next r-combination of tied.size() in lexicographic order
    std::size_t j = r;
    while (j > 0 && pick[j - 1] == tied.size() - r + (j - 1)) --j;
    if (j == 0) break;
    ++pick[j - 1];
    for (std::size_t l = j; l < r; ++l) pick[l] = pick[l - 1] + 1;
  }
  return out;
}

bool is_greedy_set(const CoeffVector& f, const IndexSet& A) {
  require_index_set(A, f.dimension(), "is_greedy_set");
  double inside = std::numeric_limits<double>::infinity();
  double outside = 0.0;
  std::size_t next = 0;
  for (std::size_t i = 0; i < f.dimension(); ++i) {
    const double m = order_modulus(f[i]);
    if (next < A.size() && A[next] == i) {
      inside = std::min(inside, m);
      ++next;
    } else {
      outside = std::max(outside, m);
    }
  }
  return inside >= outside;
}

CoeffVector projection(const CoeffVector& f, const IndexSet& A) {
  require_index_set(A, f.dimension(), "projection");
  CoeffVector out(f.dimension());
  for (std::size_t n : A) out.set(n, f[n]);
  return out;
}

CoeffVector partial_sum(const CoeffVector& f, std::size_t k) {
  if (k > f.dimension()) {
    throw InputError("partial_sum: k = " + std::to_string(k) + " outside 0.." + std::to_string(f.dimension()));
  }
  CoeffVector out(f.dimension());
  for (std::size_t i = 0; i < k; ++i) out.set(i, f[i]);
  return out;
}

CoeffVector indicator(std::size_t dimension, const SignPattern& pattern) {
  require_index_set(pattern.indices, dimension, "indicator");
  if (pattern.signs.size() != pattern.indices.size()) {
    throw InputError("indicator: need exactly one sign per index");
  }
  CoeffVector out(dimension);
  for (std::size_t i = 0; i < pattern.indices.size(); ++i) {
    if (std::fabs(std::abs(pattern.signs[i]) - 1.0) > 1e-12) throw InputError("indicator: signs must be unimodular");
    out.set(pattern.indices[i], pattern.signs[i]);
  }
  return out;
}

CoeffVector indicator(std::size_t dimension, const IndexSet& A) {
  return indicator(dimension, SignPattern{A, std::vector<Scalar>(A.size(), Scalar{1.0, 0.0})});
}

CoeffVector greedy_sum(const CoeffVector& f, std::size_t m, TiePolicy ties) {
  return projection(f, greedy_sets(f, m, ties).front().indices);
}

CoeffVector restricted_truncation(const CoeffVector& f, const IndexSet& A) {
  check_truncation_contract(f, A);
  CoeffVector out(f.dimension());
  if (A.empty()) return out;
  double level = std::numeric_limits<double>::infinity();
  for (std::size_t n : A) level = std::min(level, std::abs(f[n]));
  for (std::size_t n : A) {
    const Scalar s = unit_sign(f[n]);
    out.set(n, is_real(s) ? Scalar{level * s.real(), 0.0} : level * s);
  }
  return out;
}

CoeffVector truncation(const CoeffVector& f, const IndexSet& A) {
  CoeffVector out = restricted_truncation(f, A);
  std::size_t next = 0;
  for (std::size_t i = 0; i < f.dimension(); ++i) {
    if (next < A.size() && A[next] == i) {
      ++next;
      continue;
    }
    out.set(i, f[i]);
  }
  return out;
}

}  // namespace pgreedy
