#ifndef SPARSE_ATSP_TESTS_SUPPORT_HPP
#define SPARSE_ATSP_TESTS_SUPPORT_HPP

// Independent reference implementations used only by the test suites. These
// are deliberately naive: they share no code with the library paths they
// check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "sparse_atsp/graph.hpp"
#include "sparse_atsp/reductions.hpp"

namespace test_support {

using sparse_atsp::WeightedDigraph;

inline WeightedDigraph make_c3() {
  WeightedDigraph g(3);
  g.add_arc(0, 1, 1);
  g.add_arc(1, 2, 2);
  g.add_arc(2, 0, 3);
  return g;
}

inline WeightedDigraph make_b3() {
  WeightedDigraph g(3);
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v)
      if (u != v) g.add_arc(u, v, 1);
  return g;
}

inline WeightedDigraph make_k4() {
  WeightedDigraph g(4);
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v)
      if (u != v) g.add_arc(u, v, 1);
  return g;
}

// Bidirected 4-cycle 0-1-2-3-0, unit weights.
inline WeightedDigraph make_square() {
  WeightedDigraph g(4);
  int ring[4] = {0, 1, 2, 3};
  for (int i = 0; i < 4; ++i) {
    g.add_arc(ring[i], ring[(i + 1) % 4], 1);
    g.add_arc(ring[(i + 1) % 4], ring[i], 1);
  }
  return g;
}

// The square plus both chords through 0-2: vertices 0 and 2 get out- and
// in-interfaces of size 3.
inline WeightedDigraph make_square_chords() {
  WeightedDigraph g = make_square();
  g.add_arc(0, 2, 1);
  g.add_arc(2, 0, 1);
  return g;
}

// Permanent of the 0/1 adjacency matrix by permutation expansion (n <= 8).
inline long long permanent_adjacency(const WeightedDigraph& g) {
  int n = g.vertex_count();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  long long count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = g.has_arc(i, perm[static_cast<std::size_t>(i)]);
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Minimum-weight Hamiltonian cycle of an undirected graph given as sorted
// adjacency lists; plain backtracking from node 0.
inline std::optional<std::int64_t> undirected_min_tour(
    const std::vector<std::vector<std::pair<int, std::int64_t>>>& adj) {
  int n = static_cast<int>(adj.size());
  if (n < 3) return std::nullopt;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  used[0] = 1;
  std::optional<std::int64_t> best;
  auto dfs = [&](auto&& self, int u, int depth, std::int64_t acc) -> void {
    if (depth == n) {
      for (auto [v, w] : adj[static_cast<std::size_t>(u)])
        if (v == 0 && (!best || acc + w < *best)) best = acc + w;
      return;
    }
    for (auto [v, w] : adj[static_cast<std::size_t>(u)]) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = 1;
      self(self, v, depth + 1, acc + w);
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  dfs(dfs, 0, 1, 0);
  return best;
}

// All Hamiltonian cycles of an undirected graph as canonical edge sets
// (deduplicates rotations and reflections).
inline std::set<std::set<std::pair<int, int>>> undirected_ham_cycles(
    const std::vector<std::vector<std::pair<int, std::int64_t>>>& adj) {
  int n = static_cast<int>(adj.size());
  std::set<std::set<std::pair<int, int>>> cycles;
  if (n < 3) return cycles;
  std::vector<int> path{0};
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  used[0] = 1;
  auto dfs = [&](auto&& self, int u) -> void {
    if (static_cast<int>(path.size()) == n) {
      for (auto [v, w] : adj[static_cast<std::size_t>(u)]) {
        if (v != 0) continue;
        std::set<std::pair<int, int>> edges;
        for (std::size_t i = 0; i < path.size(); ++i) {
          int a = path[i], b = path[(i + 1) % path.size()];
          edges.insert({std::min(a, b), std::max(a, b)});
        }
        cycles.insert(std::move(edges));
      }
      return;
    }
    for (auto [v, w] : adj[static_cast<std::size_t>(u)]) {
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

// Minimum-weight admissible tour of a BFM instance: a Hamiltonian cycle of
// the bipartite graph containing every matching edge. The matching membership
// forces strict alternation: leave through the matching partner unless you
// arrived through it.
inline std::optional<std::int64_t> bfm_min_tour(const sparse_atsp::BfmInstance& b) {
  int n2 = b.node_count();
  if (n2 < 4) return std::nullopt;
  std::vector<char> used(static_cast<std::size_t>(n2), 0);
  std::optional<std::int64_t> best;
  // start along the matching edge of vertex 0: 0_out(id 0) -> 0_in(id n)
  used[0] = 1;
  auto dfs = [&](auto&& self, int u, bool arrived_via_matching, int depth, std::int64_t acc) -> void {
    if (depth == n2) {
      // close back to node 0; the closing edge plus the first edge must still
      // respect the per-vertex rule, and the first edge was the matching edge
      // of vertex 0, so any edge back to 0 works.
      for (auto [v, w] : b.adj[static_cast<std::size_t>(u)]) {
        if (v != 0) continue;
        if (!arrived_via_matching && !b.is_matching_edge(u, 0)) continue;
        if (!best || acc + w < *best) best = acc + w;
      }
      return;
    }
    for (auto [v, w] : b.adj[static_cast<std::size_t>(u)]) {
      if (used[static_cast<std::size_t>(v)]) continue;
      bool via_matching = b.is_matching_edge(u, v);
      if (!arrived_via_matching && !via_matching) continue;  // must leave via matching edge
      used[static_cast<std::size_t>(v)] = 1;
      self(self, v, via_matching, depth + 1, acc + w);
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  // first step: matching edge 0 -> n+0 (weight 0)
  used[static_cast<std::size_t>(b.n)] = 1;
  dfs(dfs, b.n, true, 2, 0);
  return best;
}

}  // namespace test_support

#endif
