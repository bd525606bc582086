#ifndef SPARSE_ATSP_ORACLE_HPP
#define SPARSE_ATSP_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "sparse_atsp/errors.hpp"
#include "sparse_atsp/graph.hpp"

namespace sparse_atsp {

enum class TourStatus { Optimal, Infeasible };

struct TourSolution {
  TourStatus status = TourStatus::Infeasible;
  std::int64_t weight = 0;    // meaningful iff Optimal
  std::vector<int> tour;      // cyclic vertex order, anchored at vertex 0; empty iff Infeasible

  bool optimal() const { return status == TourStatus::Optimal; }
};

// Re-evaluates a cyclic vertex order against the graph. Rejects anything that
// is not a Hamiltonian cycle of g.
inline std::int64_t tour_weight(const WeightedDigraph& g, const std::vector<int>& tour) {
  int n = g.vertex_count();
  if (static_cast<int>(tour.size()) != n) throw DomainError("tour length != vertex count");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : tour) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw DomainError("tour is not a permutation of the vertices");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  std::int64_t w = 0;
  for (int i = 0; i < n; ++i) {
    int u = tour[static_cast<std::size_t>(i)];
    int v = tour[static_cast<std::size_t>((i + 1) % n)];
    w = checked_add(w, g.weight(u, v));  // InvalidEdge if the arc is missing
  }
  return w;
}

namespace detail {
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
}

// Exact optimum by subset dynamic programming, anchored at vertex 0.
// Time and space O(2^n * n^2) / O(2^n * n); the cap guards against accidental
// exponential blowups, not against deliberate large runs.
inline TourSolution held_karp(const WeightedDigraph& g, int cap = 24) {
  int n = g.vertex_count();
  if (n > cap) throw TooLarge("held_karp: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (n == 1) return {};
  if (n == 2) {
    if (g.has_arc(0, 1) && g.has_arc(1, 0))
      return {TourStatus::Optimal, checked_add(g.weight(0, 1), g.weight(1, 0)), {0, 1}};
    return {};
  }

  int k = n - 1;  // vertices 1..n-1 <-> bits 0..k-1
  std::vector<std::vector<std::int64_t>> w(static_cast<std::size_t>(n),
                                           std::vector<std::int64_t>(static_cast<std::size_t>(n), detail::kInf));
  for (const Arc& a : g.arcs()) w[static_cast<std::size_t>(a.tail)][static_cast<std::size_t>(a.head)] = a.weight;

  std::size_t masks = std::size_t{1} << k;
  std::vector<std::int64_t> dp(masks * static_cast<std::size_t>(k), detail::kInf);
  auto at = [&](std::size_t mask, int j) -> std::int64_t& { return dp[mask * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)]; };

  for (int j = 0; j < k; ++j)
    at(std::size_t{1} << j, j) = w[0][static_cast<std::size_t>(j + 1)];

  for (std::size_t mask = 1; mask < masks; ++mask) {
    if ((mask & (mask - 1)) == 0) continue;  // singletons initialized above
    for (int j = 0; j < k; ++j) {
      if (!(mask >> j & 1)) continue;
      std::size_t rest = mask ^ (std::size_t{1} << j);
      std::int64_t best = detail::kInf;
      for (int i = 0; i < k; ++i) {
        if (!(rest >> i & 1)) continue;
        std::int64_t base = at(rest, i);
        std::int64_t step = w[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(j + 1)];
        if (base == detail::kInf || step == detail::kInf) continue;
        std::int64_t cand = checked_add(base, step);
        if (cand < best) best = cand;
      }
      at(mask, j) = best;
    }
  }

  std::size_t full = masks - 1;
  std::int64_t best = detail::kInf;
  int last = -1;
  for (int j = 0; j < k; ++j) {
    std::int64_t base = at(full, j);
    std::int64_t back = w[static_cast<std::size_t>(j + 1)][0];
    if (base == detail::kInf || back == detail::kInf) continue;
    std::int64_t cand = checked_add(base, back);
    if (cand < best) {
      best = cand;
      last = j;
    }
  }
  if (last < 0) return {};

  // Walk the table backwards to recover the witness.
  std::vector<int> rev;
  std::size_t mask = full;
  int j = last;
  while (true) {
    rev.push_back(j + 1);
    std::size_t rest = mask ^ (std::size_t{1} << j);
    if (rest == 0) break;
    std::int64_t need = at(mask, j);
    for (int i = 0; i < k; ++i) {
      if (!(rest >> i & 1)) continue;
      std::int64_t base = at(rest, i);
      std::int64_t step = w[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(j + 1)];
      if (base == detail::kInf || step == detail::kInf) continue;
      if (checked_add(base, step) == need) {
        mask = rest;
        j = i;
        break;
      }
    }
  }
  std::vector<int> tour{0};
  tour.insert(tour.end(), rev.rbegin(), rev.rend());
  return {TourStatus::Optimal, best, std::move(tour)};
}

// Exact optimum by enumerating all (n-1)! vertex orders. Independent of
// held_karp by construction; n <= 10.
inline TourSolution brute_force(const WeightedDigraph& g) {
  int n = g.vertex_count();
  if (n > 10) throw TooLarge("brute_force: n > 10");
  if (n == 1) return {};

  std::vector<int> perm(static_cast<std::size_t>(n - 1));
  std::iota(perm.begin(), perm.end(), 1);
  TourSolution best;
  do {
    std::int64_t w = 0;
    int prev = 0;
    bool ok = true;
    for (int v : perm) {
      if (!g.has_arc(prev, v)) {
        ok = false;
        break;
      }
      w = checked_add(w, g.weight(prev, v));
      prev = v;
    }
    if (ok && g.has_arc(prev, 0)) {
      w = checked_add(w, g.weight(prev, 0));
      if (!best.optimal() || w < best.weight) {
        best.status = TourStatus::Optimal;
        best.weight = w;
        best.tour.assign(1, 0);
        best.tour.insert(best.tour.end(), perm.begin(), perm.end());
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// All directed Hamiltonian cycles, one representative per rotation class,
// anchored at vertex 0, in lexicographic order. The default cap matches the
// contract; property suites on slightly larger sparse instances may raise it.
inline std::vector<std::vector<int>> enumerate_hamiltonian_cycles(const WeightedDigraph& g,
                                                                  int cap = 10) {
  int n = g.vertex_count();
  if (n > cap) throw TooLarge("enumerate_hamiltonian_cycles: n exceeds cap");
  std::vector<std::vector<int>> cycles;
  if (n == 1) return cycles;

  std::vector<int> path{0};
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  used[0] = 1;
  auto dfs = [&](auto&& self, int u) -> void {
    if (static_cast<int>(path.size()) == n) {
      if (g.has_arc(u, 0)) cycles.push_back(path);
      return;
    }
    for (auto [v, w] : g.out(u)) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      self(self, v);
      path.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  dfs(dfs, 0);
  return cycles;
}

}  // namespace sparse_atsp

#endif
