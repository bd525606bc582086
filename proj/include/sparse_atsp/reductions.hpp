#ifndef SPARSE_ATSP_REDUCTIONS_HPP
#define SPARSE_ATSP_REDUCTIONS_HPP

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sparse_atsp/errors.hpp"
#include "sparse_atsp/graph.hpp"

namespace sparse_atsp {

// Bipartite undirected graph on V_out + V_in with the forced matching
// M = { v_in - v_out }. Node ids: v_out = v, v_in = n + v. Every non-matching
// edge joins some u_out to some v_in and carries the arc weight w(u,v); the
// matching edges weigh 0 and must all lie on any admissible tour.
struct BfmInstance {
  int n = 0;
  std::vector<std::vector<std::pair<int, std::int64_t>>> adj;  // undirected, sorted

  int node_count() const { return 2 * n; }

  int edge_count() const {
    std::size_t twice = 0;
    for (const auto& v : adj) twice += v.size();
    return static_cast<int>(twice / 2);
  }

  int degree(int node) const { return static_cast<int>(adj[static_cast<std::size_t>(node)].size()); }

  bool is_matching_edge(int x, int y) const {
    if (x > y) std::swap(x, y);
    return y == x + n && x < n;
  }
};

inline BfmInstance atsp_to_bfm(const WeightedDigraph& g) {
  BfmInstance b;
  b.n = g.vertex_count();
  b.adj.assign(static_cast<std::size_t>(2 * b.n), {});
  for (int v = 0; v < b.n; ++v) {
    b.adj[static_cast<std::size_t>(v)].emplace_back(b.n + v, 0);
    b.adj[static_cast<std::size_t>(b.n + v)].emplace_back(v, 0);
  }
  for (const Arc& a : g.arcs()) {
    b.adj[static_cast<std::size_t>(a.tail)].emplace_back(b.n + a.head, a.weight);
    b.adj[static_cast<std::size_t>(b.n + a.head)].emplace_back(a.tail, a.weight);
  }
  for (auto& lst : b.adj) std::sort(lst.begin(), lst.end());
  return b;
}

// Plain undirected TSP on 3n nodes: each matching edge becomes the path
// v_in - v_mid - v_out (zero weights), so v_mid having degree 2 forces the
// path onto every tour. Node ids: v_in = v, v_mid = n + v, v_out = 2n + v.
struct TspInstance {
  int n = 0;
  std::vector<std::vector<std::pair<int, std::int64_t>>> adj;

  int node_count() const { return 3 * n; }

  int edge_count() const {
    std::size_t twice = 0;
    for (const auto& v : adj) twice += v.size();
    return static_cast<int>(twice / 2);
  }

  int degree(int node) const { return static_cast<int>(adj[static_cast<std::size_t>(node)].size()); }
};

inline TspInstance bfm_to_tsp(const BfmInstance& b) {
  TspInstance t;
  t.n = b.n;
  t.adj.assign(static_cast<std::size_t>(3 * b.n), {});
  auto link = [&](int x, int y, std::int64_t w) {
    t.adj[static_cast<std::size_t>(x)].emplace_back(y, w);
    t.adj[static_cast<std::size_t>(y)].emplace_back(x, w);
  };
  for (int v = 0; v < b.n; ++v) {
    link(v, b.n + v, 0);           // v_in - v_mid
    link(b.n + v, 2 * b.n + v, 0); // v_mid - v_out
  }
  for (int node = 0; node < b.node_count(); ++node) {
    if (node >= b.n) continue;  // visit each non-matching edge once, from its out-side
    for (auto [nb, w] : b.adj[static_cast<std::size_t>(node)]) {
      if (b.is_matching_edge(node, nb)) continue;
      link(2 * b.n + node, nb - b.n, w);  // u_out - v_in
    }
  }
  for (auto& lst : t.adj) std::sort(lst.begin(), lst.end());
  return t;
}

// Splits each vertex of a (2,2)-graph into an out-copy and an in-copy joined
// by a zero-weight arc, yielding a digraph of maximum total degree 3 with the
// same tours. Out-copy of v = v, in-copy = n + v.
inline WeightedDigraph orient_22_to_totdeg3(const WeightedDigraph& g) {
  int n = g.vertex_count();
  for (int v = 0; v < n; ++v)
    if (g.outdeg(v) > 2 || g.indeg(v) > 2)
      throw PreconditionViolated("orient_22_to_totdeg3 requires out- and indegrees <= 2");
  WeightedDigraph h(2 * n);
  for (const Arc& a : g.arcs()) h.add_arc(a.tail, n + a.head, a.weight);
  for (int v = 0; v < n; ++v) h.add_arc(n + v, v, 0);
  return h;
}

struct ContractionStep {
  int u = 0;                 // forced arc (u,v), ids in the pre-step graph
  int v = 0;
  std::int64_t weight = 0;   // arc weight, added to contracted_weight
  std::vector<int> mapping;  // pre-step id -> post-step id
};

struct Reduce22Result {
  bool feasible = false;
  WeightedDigraph graph;                // valid iff feasible
  std::vector<ContractionStep> trace;
  std::int64_t contracted_weight = 0;
  std::vector<int> vertex_map;          // original id -> final id (iff feasible)

  // Lifts a tour of `graph` back to a tour of the original digraph by undoing
  // the contractions in reverse order.
  std::vector<int> lift_tour(std::vector<int> tour) const {
    for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
      const ContractionStep& st = *it;
      int merged = st.mapping[static_cast<std::size_t>(st.u)];
      std::vector<int> inv(st.mapping.size(), -1);
      for (int old = 0; old < static_cast<int>(st.mapping.size()); ++old)
        if (old != st.u && old != st.v) inv[static_cast<std::size_t>(st.mapping[static_cast<std::size_t>(old)])] = old;
      std::vector<int> pre;
      pre.reserve(tour.size() + 1);
      for (int c : tour) {
        if (c == merged) {
          pre.push_back(st.u);  // in-arcs of the merged vertex were u's
          pre.push_back(st.v);  // out-arcs were v's
        } else {
          pre.push_back(inv[static_cast<std::size_t>(c)]);
        }
      }
      tour = std::move(pre);
    }
    auto zero = std::find(tour.begin(), tour.end(), 0);
    std::rotate(tour.begin(), zero, tour.end());
    return tour;
  }
};

// Exhaustively contracts forced arcs (the out-arc of an outdegree-1 vertex,
// the in-arc of an indegree-1 vertex) of a total-degree-3 digraph. Any in- or
// outdegree hitting 0 along the way proves there is no tour.
inline Reduce22Result totdeg3_to_22(const WeightedDigraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.outdeg(v) + g.indeg(v) > 3)
      throw PreconditionViolated("totdeg3_to_22 requires total degree <= 3");

  Reduce22Result r;
  r.vertex_map.resize(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) r.vertex_map[static_cast<std::size_t>(v)] = v;

  WeightedDigraph cur = g;
  for (;;) {
    int n = cur.vertex_count();
    for (int v = 0; v < n; ++v)
      if (cur.outdeg(v) == 0 || cur.indeg(v) == 0) return r;  // infeasible

    if (n < 3) break;
    int fu = -1, fv = -1;
    for (int v = 0; v < n && fu < 0; ++v)
      if (cur.outdeg(v) == 1) {
        fu = v;
        fv = cur.out(v)[0].first;
      }
    for (int v = 0; v < n && fu < 0; ++v)
      if (cur.indeg(v) == 1) {
        fu = cur.in(v)[0].first;
        fv = v;
      }
    if (fu < 0) break;  // all degrees are exactly 2

    ContractionStep st;
    st.u = fu;
    st.v = fv;
    st.weight = cur.weight(fu, fv);
    auto [next, mapping] = contract_forced_edge(cur, fu, fv);
    st.mapping = mapping;
    r.contracted_weight = checked_add(r.contracted_weight, st.weight);
    for (int& id : r.vertex_map) id = mapping[static_cast<std::size_t>(id)];
    r.trace.push_back(std::move(st));
    cur = std::move(next);
  }

  r.feasible = true;
  r.graph = std::move(cur);
  return r;
}

// ---- debug serializers for test fixtures -------------------------------------

inline std::string serialize_bfm(const BfmInstance& b) {
  std::ostringstream os;
  os << "p bfm " << b.node_count() << ' ' << b.edge_count() << '\n';
  for (int x = 0; x < b.node_count(); ++x)
    for (auto [y, w] : b.adj[static_cast<std::size_t>(x)])
      if (x < y) os << "e " << x + 1 << ' ' << y + 1 << ' ' << w << '\n';
  return os.str();
}

inline std::string serialize_tsp(const TspInstance& t) {
  std::ostringstream os;
  os << "p tsp " << t.node_count() << ' ' << t.edge_count() << '\n';
  for (int x = 0; x < t.node_count(); ++x)
    for (auto [y, w] : t.adj[static_cast<std::size_t>(x)])
      if (x < y) os << "e " << x + 1 << ' ' << y + 1 << ' ' << w << '\n';
  return os.str();
}

}  // namespace sparse_atsp

#endif
