#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "pgreedy/coeff_vector.hpp"

namespace pgreedy {

/// How ties in modulus are resolved when selecting greedy sets.
enum class TiePolicy {
  All,    // every set satisfying the greedy inequality
  First,  // the set taken by the lexicographically smallest greedy ordering
};

std::string_view to_string(TiePolicy ties) noexcept;
std::optional<TiePolicy> parse_tie_policy(std::string_view text) noexcept;

/// Unimodular signs over a finite index set; signs[i] belongs to indices[i].
struct SignPattern {
  IndexSet indices;
  std::vector<Scalar> signs;
};

struct GreedySet {
  IndexSet indices;
  std::size_t cardinality() const noexcept { return indices.size(); }
};

/// Greedy sets of order m for f. Zero coordinates are only picked when
/// m > |supp f|. Throws InputError when m > dimension.
std::vector<GreedySet> greedy_sets(const CoeffVector& f, std::size_t m, TiePolicy ties = TiePolicy::All);

/// min_{n in A} |f_n| >= max_{n not in A} |f_n|.
bool is_greedy_set(const CoeffVector& f, const IndexSet& A);

CoeffVector projection(const CoeffVector& f, const IndexSet& A);
/// Keeps the first k coordinates.
CoeffVector partial_sum(const CoeffVector& f, std::size_t k);
CoeffVector indicator(std::size_t dimension, const SignPattern& pattern);
/// Indicator with all signs equal to 1.
CoeffVector indicator(std::size_t dimension, const IndexSet& A);
/// Projection onto the first greedy set returned for (f, m, ties).
CoeffVector greedy_sum(const CoeffVector& f, std::size_t m, TiePolicy ties = TiePolicy::All);

/// min_{n in A} |f_n| * sum_{n in A} sgn(f_n) e_n.
/// A must be a greedy set of f contained in supp f (ContractError otherwise).
CoeffVector restricted_truncation(const CoeffVector& f, const IndexSet& A);
/// restricted_truncation(f, A) + projection of f onto the complement of A.
CoeffVector truncation(const CoeffVector& f, const IndexSet& A);

}  // namespace pgreedy
