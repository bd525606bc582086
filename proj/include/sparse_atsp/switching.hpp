#ifndef SPARSE_ATSP_SWITCHING_HPP
#define SPARSE_ATSP_SWITCHING_HPP

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "sparse_atsp/errors.hpp"
#include "sparse_atsp/graph.hpp"

namespace sparse_atsp {

enum class InterfaceKind { Out, In };

struct InterfaceRef {
  int owner = 0;
  InterfaceKind kind = InterfaceKind::Out;
  friend bool operator==(const InterfaceRef&, const InterfaceRef&) = default;
};

struct Interface {
  int owner = 0;
  InterfaceKind kind = InterfaceKind::Out;
  std::vector<std::pair<int, int>> edges;  // arcs as (tail, head)
  int size() const { return static_cast<int>(edges.size()); }
};

inline Interface out_interface(const WeightedDigraph& g, int v) {
  Interface it{v, InterfaceKind::Out, {}};
  for (auto [w, wt] : g.out(v)) it.edges.emplace_back(v, w);
  return it;
}

inline Interface in_interface(const WeightedDigraph& g, int v) {
  Interface it{v, InterfaceKind::In, {}};
  for (auto [u, wt] : g.in(v)) it.edges.emplace_back(u, v);
  return it;
}

// Bipartite view of the digraph: one node per out-interface (ids 0..n-1) and
// one per in-interface (ids n..2n-1), one edge per arc. Degrees mirror the
// out-/indegrees, so the degree-2 chain structure of this graph is exactly the
// switching structure of the digraph.
struct InterfaceGraph {
  int n = 0;
  int edge_count = 0;
  std::vector<std::vector<std::pair<int, int>>> adj;  // incident arcs per node

  int node_count() const { return 2 * n; }
  int degree(int node) const { return static_cast<int>(adj[static_cast<std::size_t>(node)].size()); }
};

inline InterfaceGraph interface_graph(const WeightedDigraph& g) {
  InterfaceGraph ig;
  ig.n = g.vertex_count();
  ig.edge_count = g.arc_count();
  ig.adj.assign(static_cast<std::size_t>(2 * ig.n), {});
  for (const Arc& a : g.arcs()) {
    ig.adj[static_cast<std::size_t>(a.tail)].emplace_back(a.tail, a.head);
    ig.adj[static_cast<std::size_t>(ig.n + a.head)].emplace_back(a.tail, a.head);
  }
  return ig;  // adjacency inherits the sorted arc order
}

struct SwitchingWalk {
  InterfaceRef start;
  InterfaceRef end;
  std::vector<std::pair<int, int>> edges;  // e1..ek; consecutive edges share a size-2 interface
};

struct SwitchingCircuit {
  std::vector<std::pair<int, int>> edges;  // closed, every interface on it has size 2
};

struct SwitchingDecomposition {
  std::vector<SwitchingWalk> walks;
  std::vector<SwitchingCircuit> circuits;
};

namespace detail {

inline InterfaceRef node_interface(int node, int n) {
  return node < n ? InterfaceRef{node, InterfaceKind::Out} : InterfaceRef{node - n, InterfaceKind::In};
}

// The endpoint of arc e other than `from`.
inline int other_endpoint(const std::pair<int, int>& e, int from, int n) {
  int tail_node = e.first;
  int head_node = n + e.second;
  return from == tail_node ? head_node : tail_node;
}

inline std::pair<int, int> other_edge_at(const InterfaceGraph& ig, int node,
                                         const std::pair<int, int>& e) {
  const auto& inc = ig.adj[static_cast<std::size_t>(node)];
  return inc[0] == e ? inc[1] : inc[0];
}

}  // namespace detail

// Unique partition of the arc set into switching walks (endpoints at
// interfaces of size > 2, interior interfaces of size exactly 2) and circuits
// (closed chains of size-2 interfaces). Requires every interface to have size
// at least 2; smaller interfaces belong to the branching rules upstream.
inline SwitchingDecomposition switching_decomposition(const WeightedDigraph& g) {
  int n = g.vertex_count();
  for (int v = 0; v < n; ++v)
    if (g.outdeg(v) <= 1 || g.indeg(v) <= 1)
      throw PreconditionViolated("interface of size <= 1 at vertex " + std::to_string(v) +
                                 "; apply degree rules first");

  InterfaceGraph ig = interface_graph(g);
  std::set<std::pair<int, int>> used;
  SwitchingDecomposition dec;

  // Walks: start from every node of degree >= 3.
  for (int x = 0; x < ig.node_count(); ++x) {
    if (ig.degree(x) < 3) continue;
    for (const auto& first : ig.adj[static_cast<std::size_t>(x)]) {
      if (used.count(first)) continue;
      SwitchingWalk w;
      w.start = detail::node_interface(x, n);
      std::pair<int, int> cur = first;
      int prev = x;
      used.insert(cur);
      w.edges.push_back(cur);
      for (;;) {
        int y = detail::other_endpoint(cur, prev, n);
        if (ig.degree(y) >= 3) {
          w.end = detail::node_interface(y, n);
          break;
        }
        cur = detail::other_edge_at(ig, y, cur);
        used.insert(cur);
        w.edges.push_back(cur);
        prev = y;
      }
      // canonical direction: lexicographically smaller edge sequence
      std::vector<std::pair<int, int>> rev(w.edges.rbegin(), w.edges.rend());
      if (rev < w.edges) {
        w.edges = std::move(rev);
        std::swap(w.start, w.end);
      }
      dec.walks.push_back(std::move(w));
    }
  }

  // Circuits: whatever remains lies on cycles of degree-2 nodes.
  for (const Arc& a : g.arcs()) {
    std::pair<int, int> first{a.tail, a.head};
    if (used.count(first)) continue;
    SwitchingCircuit c;
    std::pair<int, int> cur = first;
    int prev = cur.first;  // start tracing from the tail-side node
    used.insert(cur);
    c.edges.push_back(cur);
    for (;;) {
      int y = detail::other_endpoint(cur, prev, n);
      std::pair<int, int> nxt = detail::other_edge_at(ig, y, cur);
      if (nxt == first) break;
      used.insert(nxt);
      c.edges.push_back(nxt);
      prev = y;
      cur = nxt;
    }
    // canonical form: already starts at its lexicographically smallest edge
    // (arcs are visited in sorted order), so only the direction needs fixing.
    if (c.edges.size() > 2) {
      std::vector<std::pair<int, int>> rev;
      rev.push_back(c.edges[0]);
      rev.insert(rev.end(), c.edges.rbegin(), c.edges.rend() - 1);
      if (rev < c.edges) c.edges = std::move(rev);
    }
    dec.circuits.push_back(std::move(c));
  }

  std::sort(dec.walks.begin(), dec.walks.end(),
            [](const SwitchingWalk& a, const SwitchingWalk& b) { return a.edges < b.edges; });
  std::sort(dec.circuits.begin(), dec.circuits.end(),
            [](const SwitchingCircuit& a, const SwitchingCircuit& b) { return a.edges < b.edges; });
  return dec;
}

}  // namespace sparse_atsp

#endif
