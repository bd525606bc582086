#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sparse_atsp/errors.hpp"
#include "sparse_atsp/graph.hpp"
#include "sparse_atsp/oracle.hpp"
#include "sparse_atsp/switching.hpp"

namespace sparse_atsp {

struct Constants {
  double beta = std::log2(3.0) - 1.0;
  double alpha = 7.0 / 12.0 - 1.0 / (12.0 * (std::log2(3.0) - 1.0));
};

struct BranchStats {
  long long branch_nodes = 0;
  long long base_cases = 0;
  double bound = 0.0;
};

// 2^{(n - t1)/3 + beta*S}: the recursion-tree budget for the instance, with
// t1 the number of outdegree-1 vertices and S the outdegree surplus.
inline double branching_bound(const WeightedDigraph& g) {
  auto p = degree_profile(g);
  double t1 = p.t.size() > 1 ? static_cast<double>(p.t[1]) : 0.0;
  return std::exp2((p.n - t1) / 3.0 + Constants{}.beta * static_cast<double>(p.s_out));
}

enum class BaseSolver { HeldKarp, CircuitBranching };

struct BranchOptions {
  BaseSolver base = BaseSolver::HeldKarp;
  int held_karp_cap = 24;
  bool rule_d_enabled = true;
  bool check_claims = false;
  std::ostream* trace = nullptr;
};

namespace detail {

struct BranchCtx {
  const BranchOptions& opts;
  BranchStats& stats;
};

inline std::vector<int> lift_contracted_tour(const std::vector<int>& child_tour,
                                             const std::vector<int>& map, int u, int v) {
  int parent_n = static_cast<int>(map.size());
  std::vector<int> inverse(static_cast<std::size_t>(parent_n - 1), -1);
  for (int p = 0; p < parent_n; ++p)
    if (p != u && p != v) inverse[static_cast<std::size_t>(map[static_cast<std::size_t>(p)])] = p;
  int merged = map[static_cast<std::size_t>(u)];
  std::vector<int> out;
  out.reserve(child_tour.size() + 1);
  for (int c : child_tour) {
    if (c == merged) {
      out.push_back(u);
      out.push_back(v);
    } else {
      out.push_back(inverse[static_cast<std::size_t>(c)]);
    }
  }
  std::size_t zero = 0;
  while (out[zero] != 0) ++zero;
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(zero), out.end());
  return out;
}

TourSolution branch_rec(const WeightedDigraph& g, int depth, long long parent_s_out,
                        BranchCtx& ctx);

inline TourSolution forced_edge(const WeightedDigraph& g, int u, int v, int depth,
                                BranchCtx& ctx) {
  std::int64_t w = g.weight(u, v);
  auto [h, map] = contract_forced_edge(g, u, v);
  auto sub = branch_rec(h, depth + 1, degree_profile(g).s_out, ctx);
  if (sub.status != TourStatus::Optimal) return sub;
  TourSolution out;
  out.status = TourStatus::Optimal;
  out.weight = checked_add(w, sub.weight);
  out.tour = lift_contracted_tour(sub.tour, map, u, v);
  return out;
}

inline TourSolution pick_min(TourSolution a, TourSolution b) {
  if (a.status != TourStatus::Optimal) return b;
  if (b.status != TourStatus::Optimal) return a;
  return b.weight < a.weight ? b : a;
}

// Every combination of keeping the odd- or even-indexed half of each circuit
// yields a cycle cover; the optimum over single-cycle covers is exact here
// because at this point every interface has size exactly 2.
inline TourSolution circuit_base(const WeightedDigraph& g, const SwitchingDecomposition& dec) {
  int n = g.vertex_count();
  TourSolution best;
  best.status = TourStatus::Infeasible;
  std::vector<int> succ(static_cast<std::size_t>(n), -1);
  std::size_t k = dec.circuits.size();
  for (std::uint64_t choice = 0; choice < (1ULL << k); ++choice) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto& edges = dec.circuits[i].edges;
      for (std::size_t j = (choice >> i) & 1; j < edges.size(); j += 2)
        succ[static_cast<std::size_t>(edges[j].first)] = edges[j].second;
    }
    int steps = 1;
    for (int at = succ[0]; at != 0; at = succ[static_cast<std::size_t>(at)]) ++steps;
    if (steps != n) continue;
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
  }
  return best;
}

inline TourSolution branch_rec(const WeightedDigraph& g, int depth, long long parent_s_out,
                               BranchCtx& ctx) {
  auto trace = [&](char rule, auto&&... detail) {
    if (!ctx.opts.trace) return;
    *ctx.opts.trace << depth << ' ' << rule;
    ((*ctx.opts.trace << ' ' << detail), ...);
    *ctx.opts.trace << '\n';
  };

  if (ctx.opts.check_claims && degree_profile(g).s_out > parent_s_out)
    throw std::logic_error("outdegree surplus grew during a reduction step");

  int n = g.vertex_count();
  if (n == 2) {
    trace('a');
    TourSolution out;
    if (g.has_arc(0, 1) && g.has_arc(1, 0)) {
      out.status = TourStatus::Optimal;
      out.weight = checked_add(g.weight(0, 1), g.weight(1, 0));
      out.tour = {0, 1};
    } else {
      out.status = TourStatus::Infeasible;
    }
    return out;
  }

  for (int v = 0; v < n; ++v) {
    if (g.outdeg(v) == 0 || g.indeg(v) == 0) {
      trace('b', v);
      TourSolution out;
      out.status = TourStatus::Infeasible;
      return out;
    }
  }

  for (int v = 0; v < n; ++v) {
    if (g.outdeg(v) == 1) {
      int head = g.out(v)[0].first;
      trace('c', v, head);
      return forced_edge(g, v, head, depth, ctx);
    }
    if (g.indeg(v) == 1) {
      int tail = g.in(v)[0].first;
      trace('c', tail, v);
      return forced_edge(g, tail, v, depth, ctx);
    }
  }

  auto dec = switching_decomposition(g);

  if (ctx.opts.rule_d_enabled) {
    for (const auto& w : dec.walks) {
      if (!(w.start == w.end)) continue;
      const Interface iface = w.start.kind == InterfaceKind::Out
                                  ? out_interface(g, w.start.owner)
                                  : in_interface(g, w.start.owner);
      WeightedDigraph h = g;
      int removed = 0;
      for (const auto& e : iface.edges) {
        if (e == w.edges.front() || e == w.edges.back()) continue;
        h.remove_arc(e.first, e.second);
        ++removed;
      }
      trace('d', w.start.owner, w.start.kind == InterfaceKind::Out ? "out" : "in", removed);
      return branch_rec(h, depth + 1, degree_profile(g).s_out, ctx);
    }
  }

  for (const auto& w : dec.walks) {
    if (w.edges.size() % 2 != 0) continue;
    const auto& e1 = w.edges.front();
    const auto& e2k = w.edges.back();
    trace('e', e1.first, e1.second, e2k.first, e2k.second);
    ++ctx.stats.branch_nodes;
    return pick_min(forced_edge(g, e1.first, e1.second, depth, ctx),
                    forced_edge(g, e2k.first, e2k.second, depth, ctx));
  }

  int wide = -1;
  for (int v = 0; v < n && wide < 0; ++v)
    if (g.outdeg(v) >= 3) wide = v;

  if (wide < 0) {
    bool any_wide_in = false;
    for (int v = 0; v < n; ++v) any_wide_in |= g.indeg(v) >= 3;
    if (!any_wide_in) {
      trace('f', n);
      ++ctx.stats.base_cases;
      if (ctx.opts.base == BaseSolver::HeldKarp && n <= ctx.opts.held_karp_cap)
        return held_karp(g, ctx.opts.held_karp_cap);
      return circuit_base(g, dec);
    }
    // an oversized in-interface forces an oversized out-interface too when
    // every degree is >= 2; reaching here would mean the profile lied
    throw std::logic_error("in-interface of size >= 3 without an out-interface to branch on");
  }

  trace('g', wide, g.outdeg(wide));
  ++ctx.stats.branch_nodes;
  TourSolution best;
  best.status = TourStatus::Infeasible;
  auto heads = g.out(wide);
  for (const auto& [head, w] : heads) best = pick_min(best, forced_edge(g, wide, head, depth, ctx));
  return best;
}

}  // namespace detail

// Exact minimum-weight tour by interface branching. The recursion follows the
// rule ladder (a)-(g): trivial sizes, missing degrees, forced edges, walk
// pruning, even-walk 2-way branches, the all-degree-2 base case, and s-way
// branches on an out-interface of size s >= 3.
inline std::pair<TourSolution, BranchStats> solve_branching(const WeightedDigraph& g,
                                                            const BranchOptions& opts = {}) {
  if (g.vertex_count() < 2) throw PreconditionViolated("solve_branching needs n >= 2");
  BranchStats stats;
  stats.bound = branching_bound(g);
  detail::BranchCtx ctx{opts, stats};
  auto sol = detail::branch_rec(g, 0, degree_profile(g).s_out, ctx);
  return {sol, stats};
}

}  // namespace sparse_atsp
