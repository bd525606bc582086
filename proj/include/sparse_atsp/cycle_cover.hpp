#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "sparse_atsp/errors.hpp"
#include "sparse_atsp/graph.hpp"
#include "sparse_atsp/oracle.hpp"

namespace sparse_atsp {

namespace detail {

// Can every vertex in [from, n) still be assigned a distinct unused head?
// Standard augmenting-path matching on the residual bipartite graph.
class CoverFeasibility {
 public:
  explicit CoverFeasibility(const WeightedDigraph& g) : g_(g) {
    match_to_.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    visited_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
  }

  bool check(int from, const std::vector<char>& head_used) {
    int n = g_.vertex_count();
    std::fill(match_to_.begin(), match_to_.end(), -1);
    for (int v = from; v < n; ++v) {
      std::fill(visited_.begin(), visited_.end(), 0);
      if (!augment(v, head_used)) return false;
    }
    return true;
  }

 private:
  bool augment(int v, const std::vector<char>& head_used) {
    for (const auto& [h, w] : g_.out(v)) {
      auto hi = static_cast<std::size_t>(h);
      if (head_used[hi] || visited_[hi]) continue;
      visited_[hi] = 1;
      if (match_to_[hi] < 0 || augment(match_to_[hi], head_used)) {
        match_to_[hi] = v;
        return true;
      }
    }
    return false;
  }

  const WeightedDigraph& g_;
  std::vector<int> match_to_;
  std::vector<char> visited_;
};

template <typename Visitor>
void enumerate_covers_from(const WeightedDigraph& g, int v, std::vector<int>& succ,
                           std::vector<char>& head_used, CoverFeasibility& feas,
                           Visitor& visit) {
  int n = g.vertex_count();
  if (v == n) {
    visit(std::as_const(succ));
    return;
  }
  for (const auto& [h, w] : g.out(v)) {
    auto hi = static_cast<std::size_t>(h);
    if (head_used[hi]) continue;
    head_used[hi] = 1;
    if (feas.check(v + 1, head_used)) {
      succ[static_cast<std::size_t>(v)] = h;
      enumerate_covers_from(g, v + 1, succ, head_used, feas, visit);
    }
    head_used[hi] = 0;
  }
}

}  // namespace detail

// Visits every cycle cover of g (equivalently, every perfect matching of the
// out/in split of g) exactly once, as a successor vector, in lexicographic
// order. Each branch is pruned by a matching feasibility test, so the gap
// between consecutive covers is polynomial and working space stays linear.
template <typename Visitor>
void enumerate_cycle_covers(const WeightedDigraph& g, Visitor&& visit) {
  int n = g.vertex_count();
  if (n == 0) return;
  std::vector<int> succ(static_cast<std::size_t>(n), -1);
  std::vector<char> head_used(static_cast<std::size_t>(n), 0);
  detail::CoverFeasibility feas(g);
  if (!feas.check(0, head_used)) return;
  detail::enumerate_covers_from(g, 0, succ, head_used, feas, visit);
}

struct CcStats {
  long long covers = 0;
};

// Exact minimum over cycle covers that form one cycle through all vertices.
inline TourSolution solve_enumcc(const WeightedDigraph& g, CcStats* stats = nullptr) {
  int n = g.vertex_count();
  TourSolution best;
  best.status = TourStatus::Infeasible;
  long long covers = 0;
  enumerate_cycle_covers(g, [&](const std::vector<int>& succ) {
    ++covers;
    int steps = 1;
    int at = succ[0];
    while (at != 0) {
      at = succ[static_cast<std::size_t>(at)];
      ++steps;
    }
    if (steps != n) return;
    std::int64_t w = 0;
    for (int v = 0; v < n; ++v) w = checked_add(w, g.weight(v, succ[static_cast<std::size_t>(v)]));
    if (best.status == TourStatus::Infeasible || w < best.weight) {
      best.status = TourStatus::Optimal;
      best.weight = w;
      best.tour.assign(static_cast<std::size_t>(n), 0);
      int u = 0;
      for (int i = 0; i < n; ++i) {
        best.tour[static_cast<std::size_t>(i)] = u;
        u = succ[static_cast<std::size_t>(u)];
      }
    }
  });
  if (stats) stats->covers = covers;
  return best;
}

// (⌊d⌋!)^{(⌊d⌋+1−d)/⌊d⌋} (⌈d⌉!)^{(d−⌊d⌋)/⌈d⌉}, the per-vertex matching-count
// factor at average outdegree d; reduces to (d!)^{1/d} at integers.
inline double mu(double d) {
  if (!(d >= 1.0)) throw DomainError("mu requires d >= 1");
  double fl = std::floor(d);
  double ce = std::ceil(d);
  double log_floor = std::lgamma(fl + 1.0);
  double log_ceil = std::lgamma(ce + 1.0);
  return std::exp((fl + 1.0 - d) / fl * log_floor + (d - fl) / ce * log_ceil);
}

// ∏_v (outdeg(v)!)^{1/outdeg(v)}; an upper bound on the number of cycle
// covers. A vertex with no out-edges forces the count (and the bound) to 0.
inline double bregman_bound(const WeightedDigraph& g) {
  double log_sum = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int d = g.outdeg(v);
    if (d == 0) return 0.0;
    log_sum += std::lgamma(d + 1.0) / d;
  }
  return std::exp(log_sum);
}

}  // namespace sparse_atsp
