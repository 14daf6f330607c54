#include "pgreedy/constants.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "pgreedy/errors.hpp"

namespace pgreedy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Best {
  bool has = false;
  double value = 0.0;
  std::size_t lead = 0;
  std::uint64_t seq = 0;
  Witness witness;
  std::uint64_t count = 0;
};

bool beats(const Best& a, const Best& b) {
  if (!a.has) return false;
  if (!b.has) return true;
  if (a.value != b.value) return a.value > b.value;
  return a.lead != b.lead ? a.lead < b.lead : a.seq < b.seq;
}

class Tracker {
 public:
  void start(std::size_t lead) noexcept {
    lead_ = lead;
    seq_ = 0;
  }

  /// num/den with 0/0 skipped and x/0 recorded as +inf.
  template <class Make>
  void offer(double num, double den, Make&& make) {
    ++best.count;
    ++seq_;
    if (den == 0.0) {
      if (num == 0.0) return;
      take(kInf, make);
      return;
    }
    take(num / den, make);
  }

  /// A ratio already resolved by the caller.
  template <class Make>
  void offer_ratio(double ratio, Make&& make) {
    ++best.count;
    ++seq_;
    take(ratio, make);
  }

  Best best;

 private:
  template <class Make>
  void take(double ratio, Make& make) {
    if (best.has && !(ratio > best.value)) return;
    best.has = true;
    best.value = ratio;
    best.lead = lead_;
    best.seq = seq_;
    best.witness = make();
  }

  std::size_t lead_ = 0;
  std::uint64_t seq_ = 0;
};

/// Runs body(lead, tracker) for lead in [0, leads) on `workers` threads
/// (strided assignment) and merges the local maxima.
template <class Body>
Best run_search(std::size_t leads, std::size_t workers, Body&& body) {
  workers = std::max<std::size_t>(1, std::min(workers, leads));
  std::vector<Tracker> trackers(workers);
  auto work = [&](std::size_t w) {
    for (std::size_t lead = w; lead < leads; lead += workers) {
      trackers[w].start(lead);
      body(lead, trackers[w]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  Best merged;
  std::uint64_t total = 0;
  for (Tracker& t : trackers) {
    total += t.best.count;
    if (beats(t.best, merged)) merged = std::move(t.best);
  }
  merged.count = total;
  return merged;
}

ConstantEstimate finish(ConstantKind kind, Best best, std::uint64_t grid_hash, TiePolicy ties = TiePolicy::All) {
  ConstantEstimate e;
  e.kind = kind;
  e.grid_hash = grid_hash;
  e.configurations = best.count;
  e.ties = ties;
  if (!best.has) {
    e.warning = "no admissible configuration on this grid";
    return e;
  }
  e.value = best.value;
  e.witness = std::move(best.witness);
  if (std::isinf(e.value)) e.warning = "zero denominator with nonzero numerator: the norm is degenerate";
  return e;
}

IndexSet free_positions(const CoeffVector& f) {
  IndexSet out;
  for (std::size_t i = 0; i < f.dimension(); ++i) {
    if (f[i] == Scalar{}) out.push_back(i);
  }
  return out;
}

/// Sign patterns of every length up to n, enumerated once.
std::vector<std::vector<std::vector<Scalar>>> sign_tables(const std::vector<Scalar>& signs, std::size_t n) {
  std::vector<std::vector<std::vector<Scalar>>> table(n + 1);
  for (std::size_t len = 0; len <= n; ++len) {
    for_each_sign_pattern(signs, len, [&](const std::vector<Scalar>& p) {
      table[len].push_back(p);
      return true;
    });
  }
  return table;
}

void add_indicator(CoeffVector& v, const IndexSet& A, const std::vector<Scalar>& eps, double t) {
  for (std::size_t j = 0; j < A.size(); ++j) v.set(A[j], t * eps[j]);
}

CoeffVector tail(const CoeffVector& f, std::size_t k) {
  CoeffVector out = f;
  for (std::size_t i = 0; i < k; ++i) out.set(i, Scalar{});
  return out;
}

std::size_t support_count_below(const CoeffVector& f, std::size_t k) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < k; ++i) c += f[i] != Scalar{} ? 1 : 0;
  return c;
}

// ---------------------------------------------------------------------------
// Estimators over an arbitrary norm

ConstantEstimate search_Cqg(const NormFn& N, const GridUniverse& U, std::size_t workers) {
  const auto& vs = U.vectors();
  Best best = run_search(vs.size(), workers, [&](std::size_t lead, Tracker& tr) {
    const CoeffVector& f = vs[lead];
    if (f.is_zero()) return;
    const double nf = N(f);
    for (std::size_t m = 1; m <= f.support_size(); ++m) {
      for (const GreedySet& A : greedy_sets(f, m, TiePolicy::All)) {
        tr.offer(N(projection(f, A.indices)), nf, [&] { return Witness{.f = f, .A = A.indices}; });
      }
    }
  });
  return finish(ConstantKind::Cqg, std::move(best), U.spec().hash());
}

ConstantEstimate search_Cql(const NormFn& N, const GridUniverse& U, std::size_t workers) {
  const auto& vs = U.vectors();
  const std::size_t n = U.spec().dimension;
  const auto signs = sign_tables(U.spec().signs, n);
  const std::vector<double> levels = U.spec().levels();
  Best best = run_search(vs.size(), workers, [&](std::size_t lead, Tracker& tr) {
    const CoeffVector& f = vs[lead];
    const double top = f.max_modulus();
    const auto sets = subsets_of(free_positions(f), n);
    for (double t : levels) {
      if (t < top) continue;
      for (const IndexSet& A : sets) {
        if (A.empty()) continue;
        for (const auto& eps : signs[A.size()]) {
          CoeffVector ind(n);
          add_indicator(ind, A, eps, t);
          tr.offer(N(ind), N(f + ind),
                   [&] { return Witness{.f = f, .A = A, .signs_A = eps, .level = t}; });
        }
      }
    }
  });
  return finish(ConstantKind::Cql, std::move(best), U.spec().hash());
}

ConstantEstimate search_Cpg(const NormFn& N, const GridUniverse& U, TiePolicy ties, std::size_t workers) {
  const auto& vs = U.vectors();
  const std::size_t n = U.spec().dimension;
  Best best = run_search(vs.size(), workers, [&](std::size_t lead, Tracker& tr) {
    const CoeffVector& f = vs[lead];
    if (f.is_zero()) return;
    // best_k[m] = argmin_{k <= m} ||f - S_k f||, first minimiser
    std::vector<double> remainder(n + 1);
    for (std::size_t k = 0; k <= n; ++k) remainder[k] = N(tail(f, k));
    std::vector<std::size_t> best_k(n + 1, 0);
    for (std::size_t m = 1; m <= n; ++m) {
      best_k[m] = remainder[m] < remainder[best_k[m - 1]] ? m : best_k[m - 1];
    }
    for (std::size_t m = 0; m <= f.support_size(); ++m) {
      const double den = remainder[best_k[m]];
      for (const GreedySet& A : greedy_sets(f, m, ties)) {
        const double num = N(f - projection(f, A.indices));
        auto make = [&] { return Witness{.f = f, .A = A.indices, .k = best_k[m]}; };
        if (num == 0.0 && den == 0.0) {
          tr.offer_ratio(1.0, make);
        } else {
          tr.offer(num, den, make);
        }
      }
    }
  });
  return finish(ConstantKind::Cpg, std::move(best), U.spec().hash(), ties);
}

ConstantEstimate search_D(const NormFn& N, const GridUniverse& U, std::size_t workers) {
  const auto& vs = U.vectors();
  const std::size_t n = U.spec().dimension;
  if (n > 24) throw SizeError("D search supports dimension <= 24");
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<std::uint32_t> mask(vs.size(), 0);
  std::vector<std::vector<std::size_t>> by_mask(std::size_t{1} << n);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (vs[i][j] != Scalar{}) mask[i] |= std::uint32_t{1} << j;
    }
    by_mask[mask[i]].push_back(i);
  }
  Best best = run_search(vs.size(), workers, [&](std::size_t lead, Tracker& tr) {
    const CoeffVector& f = vs[lead];
    if (f.is_zero()) return;
    const double nf = N(f);
    const double tau = f.max_modulus();
    const std::uint32_t free = full & ~mask[lead];
    // submasks of `free` in increasing order
    std::vector<std::uint32_t> subs;
    for (std::uint32_t s = free;; s = (s - 1) & free) {
      subs.push_back(s);
      if (s == 0) break;
    }
    std::reverse(subs.begin(), subs.end());
    for (std::uint32_t s : subs) {
      for (std::size_t zi : by_mask[s]) {
        const CoeffVector& z = vs[zi];
        std::size_t kmax = 0;
        if (s != 0) {
          if (z.min_modulus() < tau) continue;
          const auto first = static_cast<std::size_t>(std::countr_zero(s));
          kmax = std::min(first, static_cast<std::size_t>(std::popcount(s)));
        }
        for (std::size_t k = 0; k <= kmax; ++k) {
          tr.offer(nf, N(tail(f, k) + z), [&] { return Witness{.f = f, .k = k, .z = z}; });
        }
      }
    }
  });
  return finish(ConstantKind::D, std::move(best), U.spec().hash());
}

}  // namespace

// ---------------------------------------------------------------------------

std::span<const ConstantKind> all_constant_kinds() noexcept {
  static constexpr std::array kAll{ConstantKind::Cqg,    ConstantKind::Cql,    ConstantKind::Cpg,
                                   ConstantKind::D,      ConstantKind::Delta,  ConstantKind::DeltaS,
                                   ConstantKind::DeltaPl, ConstantKind::GammaU, ConstantKind::GammaT,
                                   ConstantKind::CThree};
  return kAll;
}

std::string_view symbol(ConstantKind kind) noexcept {
  switch (kind) {
    case ConstantKind::Cqg: return "C_qg";
    case ConstantKind::Cql: return "C_ql";
    case ConstantKind::Cpg: return "C_pg";
    case ConstantKind::D: return "D";
    case ConstantKind::Delta: return "Delta";
    case ConstantKind::DeltaS: return "Delta_s";
    case ConstantKind::DeltaPl: return "Delta_pl";
    case ConstantKind::GammaU: return "Gamma_u";
    case ConstantKind::GammaT: return "Gamma_t";
    case ConstantKind::CThree: return "C_three";
  }
  return "?";
}

std::string_view long_name(ConstantKind kind) noexcept {
  switch (kind) {
    case ConstantKind::Cqg: return "quasi-greedy";
    case ConstantKind::Cql: return "quasi-greedy for largest coefficients";
    case ConstantKind::Cpg: return "partially greedy";
    case ConstantKind::D: return "partial-sum remainder functional";
    case ConstantKind::Delta: return "conservative";
    case ConstantKind::DeltaS: return "super-conservative";
    case ConstantKind::DeltaPl: return "partially symmetric for largest coefficients";
    case ConstantKind::GammaU: return "restricted truncation";
    case ConstantKind::GammaT: return "truncation";
    case ConstantKind::CThree: return "tail plus indicator";
  }
  return "?";
}

std::optional<ConstantKind> parse_constant_kind(std::string_view text) noexcept {
  for (ConstantKind k : all_constant_kinds()) {
    if (symbol(k) == text) return k;
  }
  return std::nullopt;
}

GridSearch::GridSearch(const PSpace& space, const GridSpec& grid, SearchOptions options)
    : space_(space), universe_(grid, options.max_dimension), options_(options) {
  if (grid.dimension != space.dimension()) {
    throw InputError("grid dimension " + std::to_string(grid.dimension) + " does not match space dimension " +
                     std::to_string(space.dimension()));
  }
  if (space.field() == Field::Real) {
    for (Scalar s : grid.signs) {
      if (!is_real(s)) throw InputError("grid has complex signs but the space is real");
    }
  }
}

ConstantEstimate GridSearch::estimate(ConstantKind kind) const {
  switch (kind) {
    case ConstantKind::Cqg: return estimate_Cqg();
    case ConstantKind::Cql: return estimate_Cql();
    case ConstantKind::Cpg: return estimate_Cpg();
    case ConstantKind::D: return estimate_D();
    case ConstantKind::Delta:
    case ConstantKind::DeltaS: return estimate_conservative(kind);
    case ConstantKind::DeltaPl: return estimate_Delta_pl();
    case ConstantKind::GammaU:
    case ConstantKind::GammaT: return estimate_truncation(kind);
    case ConstantKind::CThree: return estimate_C_three();
  }
  throw InputError("unknown constant kind");
}

namespace {
NormFn space_norm(const PSpace& space) {
  return [&space](const CoeffVector& v) { return space.norm_unchecked(v.dense()); };
}
}  // namespace

ConstantEstimate GridSearch::estimate_Cqg() const {
  return search_Cqg(space_norm(space_), universe_, options_.workers);
}

ConstantEstimate GridSearch::estimate_Cql() const {
  return search_Cql(space_norm(space_), universe_, options_.workers);
}

ConstantEstimate GridSearch::estimate_Cpg(TiePolicy ties) const {
  return search_Cpg(space_norm(space_), universe_, ties, options_.workers);
}

ConstantEstimate GridSearch::estimate_D() const { return search_D(space_norm(space_), universe_, options_.workers); }

ConstantEstimate GridSearch::estimate_conservative(ConstantKind kind) const {
  if (kind != ConstantKind::Delta && kind != ConstantKind::DeltaS) {
    throw InputError("estimate_conservative: kind must be Delta or Delta_s");
  }
  const GridSpec& g = universe_.spec();
  const std::size_t n = g.dimension;
  const std::vector<Scalar> ones{Scalar{1.0, 0.0}};
  const auto signs = sign_tables(kind == ConstantKind::Delta ? ones : g.signs, n);
  IndexSet all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::vector<IndexSet> leads;
  for (IndexSet& B : subsets_of(all, g.max_support)) {
    if (!B.empty()) leads.push_back(std::move(B));
  }
  const NormFn N = space_norm(space_);
  Best best = run_search(leads.size(), options_.workers, [&](std::size_t lead, Tracker& tr) {
    const IndexSet& B = leads[lead];
    IndexSet before(B.front());
    for (std::size_t i = 0; i < B.front(); ++i) before[i] = i;
    const auto As = subsets_of(before, B.size());
    for (const auto& eb : signs[B.size()]) {
      CoeffVector vb(n);
      add_indicator(vb, B, eb, 1.0);
      const double den = N(vb);
      for (const IndexSet& A : As) {
        if (A.empty()) continue;
        for (const auto& ea : signs[A.size()]) {
          CoeffVector va(n);
          add_indicator(va, A, ea, 1.0);
          tr.offer(N(va), den, [&] { return Witness{.f = CoeffVector(n), .A = A, .B = B, .signs_A = ea, .signs_B = eb, .level = 1.0}; });
        }
      }
    }
  });
  return finish(kind, std::move(best), g.hash());
}

ConstantEstimate GridSearch::estimate_Delta_pl() const {
  const GridSpec& g = universe_.spec();
  const std::size_t n = g.dimension;
  const auto signs = sign_tables(g.signs, n);
  const std::vector<double> levels = g.levels();
  const auto& vs = universe_.vectors();
  const NormFn N = space_norm(space_);
  Best best = run_search(vs.size(), options_.workers, [&](std::size_t lead, Tracker& tr) {
    const CoeffVector& f = vs[lead];
    const double top = f.max_modulus();
    const IndexSet supp = f.support();
    const auto sets = subsets_of(free_positions(f), n);
    for (double t : levels) {
      if (t < top) continue;
      // value[s][e] = ||f + t 1_{eps S}|| for S = sets[s], eps = signs[|S|][e]
      std::vector<std::vector<double>> value(sets.size());
      for (std::size_t s = 0; s < sets.size(); ++s) {
        for (const auto& eps : signs[sets[s].size()]) {
          CoeffVector v = f;
          add_indicator(v, sets[s], eps, t);
          value[s].push_back(N(v));
        }
      }
      for (std::size_t b = 0; b < sets.size(); ++b) {
        const IndexSet& B = sets[b];
        std::size_t bound = n;  // min(supp f u B)
        if (!supp.empty()) bound = std::min(bound, supp.front());
        if (!B.empty()) bound = std::min(bound, B.front());
        for (std::size_t a = 0; a < sets.size(); ++a) {
          const IndexSet& A = sets[a];
          if (A.size() > B.size()) break;  // sets are ordered by size
          if (!A.empty() && A.back() >= bound) continue;
          if (!disjoint(A, B)) continue;
          for (std::size_t ea = 0; ea < value[a].size(); ++ea) {
            for (std::size_t eb = 0; eb < value[b].size(); ++eb) {
              tr.offer(value[a][ea], value[b][eb], [&] {
                return Witness{.f = f,
                               .A = A,
                               .B = B,
                               .signs_A = signs[A.size()][ea],
                               .signs_B = signs[B.size()][eb],
                               .level = t};
              });
            }
          }
        }
      }
    }
  });
  return finish(ConstantKind::DeltaPl, std::move(best), g.hash());
}

ConstantEstimate GridSearch::estimate_C_three() const {
  const GridSpec& g = universe_.spec();
  const std::size_t n = g.dimension;
  const auto signs = sign_tables(g.signs, n);
  const std::vector<double> levels = g.levels();
  const auto& vs = universe_.vectors();
  const NormFn N = space_norm(space_);
  Best best = run_search(vs.size(), options_.workers, [&](std::size_t lead, Tracker& tr) {
    const CoeffVector& f = vs[lead];
    const double top = f.max_modulus();
    const double nf = N(f);
    const auto sets = subsets_of(free_positions(f), n);
    for (double t : levels) {
      if (t < top) continue;
      for (const IndexSet& B : sets) {
        if (B.empty()) continue;
        for (const auto& eps : signs[B.size()]) {
          for (std::size_t k = 0; k <= B.front(); ++k) {
            // the partial sum kept out must not carry more coefficients than B
            if (support_count_below(f, k) > B.size()) break;
            CoeffVector v = tail(f, k);
            add_indicator(v, B, eps, t);
            tr.offer(nf, N(v), [&] { return Witness{.f = f, .B = B, .signs_B = eps, .k = k, .level = t}; });
          }
        }
      }
    }
  });
  return finish(ConstantKind::CThree, std::move(best), g.hash());
}

ConstantEstimate GridSearch::estimate_truncation(ConstantKind kind) const {
  if (kind != ConstantKind::GammaU && kind != ConstantKind::GammaT) {
    throw InputError("estimate_truncation: kind must be Gamma_u or Gamma_t");
  }
  const auto& vs = universe_.vectors();
  const NormFn N = space_norm(space_);
  const bool restricted = kind == ConstantKind::GammaU;
  Best best = run_search(vs.size(), options_.workers, [&](std::size_t lead, Tracker& tr) {
    const CoeffVector& f = vs[lead];
    if (f.is_zero()) return;
    const double nf = N(f);
    for (std::size_t m = 1; m <= f.support_size(); ++m) {
      for (const GreedySet& A : greedy_sets(f, m, TiePolicy::All)) {
        const CoeffVector image = restricted ? restricted_truncation(f, A.indices) : truncation(f, A.indices);
        tr.offer(N(image), nf, [&] { return Witness{.f = f, .A = A.indices}; });
      }
    }
  });
  return finish(kind, std::move(best), universe_.spec().hash());
}

ConstantEstimate estimate_Cpg_for_norm(const NormFn& norm, const GridUniverse& universe, TiePolicy ties,
                                       const SearchOptions& options) {
  return search_Cpg(norm, universe, ties, options.workers);
}

ConstantEstimate estimate_D_for_norm(const NormFn& norm, const GridUniverse& universe, const SearchOptions& options) {
  return search_D(norm, universe, options.workers);
}

// ---------------------------------------------------------------------------

double recompute_ratio(const PSpace& space, const ConstantEstimate& estimate) {
  return recompute_ratio(space_norm(space), estimate);
}

double recompute_ratio(const NormFn& N, const ConstantEstimate& estimate) {
  if (!estimate.witness) throw InputError("recompute_ratio: estimate has no witness");
  const Witness& w = *estimate.witness;
  auto ratio = [](double num, double den) { return den == 0.0 ? (num == 0.0 ? 1.0 : kInf) : num / den; };
  const std::size_t n = std::max(w.f.dimension(), w.z.dimension());
  auto ind = [&](const IndexSet& S, const std::vector<Scalar>& eps, std::size_t dim) {
    CoeffVector v(dim);
    add_indicator(v, S, eps, w.level);
    return v;
  };
  switch (estimate.kind) {
    case ConstantKind::Cqg: return ratio(N(projection(w.f, w.A)), N(w.f));
    case ConstantKind::Cql: {
      const CoeffVector v = ind(w.A, w.signs_A, n);
      return ratio(N(v), N(w.f + v));
    }
    case ConstantKind::Cpg: {
      double den = kInf;
      for (std::size_t k = 0; k <= w.A.size(); ++k) den = std::min(den, N(tail(w.f, k)));
      return ratio(N(w.f - projection(w.f, w.A)), den);
    }
    case ConstantKind::D: return ratio(N(w.f), N(tail(w.f, w.k) + w.z));
    case ConstantKind::Delta:
    case ConstantKind::DeltaS: return ratio(N(ind(w.A, w.signs_A, n)), N(ind(w.B, w.signs_B, n)));
    case ConstantKind::DeltaPl:
      return ratio(N(w.f + ind(w.A, w.signs_A, n)), N(w.f + ind(w.B, w.signs_B, n)));
    case ConstantKind::GammaU: return ratio(N(restricted_truncation(w.f, w.A)), N(w.f));
    case ConstantKind::GammaT: return ratio(N(truncation(w.f, w.A)), N(w.f));
    case ConstantKind::CThree: return ratio(N(w.f), N(tail(w.f, w.k) + ind(w.B, w.signs_B, n)));
  }
  throw InputError("recompute_ratio: unknown kind");
}

}  // namespace pgreedy
