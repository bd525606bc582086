#ifndef SPARSE_ATSP_GRAPH_HPP
#define SPARSE_ATSP_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sparse_atsp/errors.hpp"

namespace sparse_atsp {

struct Arc {
  int tail = 0;
  int head = 0;
  std::int64_t weight = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Simple weighted digraph. Vertices are 0..n-1 internally; the file format is
// 1-based. Adjacency lists are kept sorted so iteration order (and therefore
// every enumeration built on top) is deterministic.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  explicit WeightedDigraph(int n) : n_(n), out_(n), in_(n) {
    if (n <= 0) throw DomainError("vertex count must be positive");
  }

  int vertex_count() const { return n_; }
  int arc_count() const { return m_; }

  void add_arc(int u, int v, std::int64_t w) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw SelfLoop(u);
    auto pos = lower_bound(out_[u], v);
    if (pos != out_[u].end() && pos->first == v) throw DuplicateEdge(u, v);
    out_[u].insert(pos, {v, w});
    auto ipos = lower_bound(in_[v], u);
    in_[v].insert(ipos, {u, w});
    ++m_;
  }

  void remove_arc(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    auto pos = lower_bound(out_[u], v);
    if (pos == out_[u].end() || pos->first != v) throw InvalidEdge(u, v);
    out_[u].erase(pos);
    in_[v].erase(lower_bound(in_[v], u));
    --m_;
  }

  bool has_arc(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
    auto pos = lower_bound(out_[u], v);
    return pos != out_[u].end() && pos->first == v;
  }

  std::int64_t weight(int u, int v) const {
    check_vertex(u);
    auto pos = lower_bound(out_[u], v);
    if (pos == out_[u].end() || pos->first != v) throw InvalidEdge(u, v);
    return pos->second;
  }

  // (head, weight) pairs sorted by head.
  const std::vector<std::pair<int, std::int64_t>>& out(int v) const {
    check_vertex(v);
    return out_[v];
  }

  // (tail, weight) pairs sorted by tail.
  const std::vector<std::pair<int, std::int64_t>>& in(int v) const {
    check_vertex(v);
    return in_[v];
  }

  int outdeg(int v) const {
    check_vertex(v);
    return static_cast<int>(out_[v].size());
  }

  int indeg(int v) const {
    check_vertex(v);
    return static_cast<int>(in_[v].size());
  }

  std::vector<Arc> arcs() const {
    std::vector<Arc> a;
    a.reserve(m_);
    for (int u = 0; u < n_; ++u)
      for (auto [v, w] : out_[u]) a.push_back({u, v, w});
    return a;
  }

  friend bool operator==(const WeightedDigraph&, const WeightedDigraph&) = default;

 private:
  static std::vector<std::pair<int, std::int64_t>>::iterator lower_bound(
      std::vector<std::pair<int, std::int64_t>>& vec, int key) {
    return std::lower_bound(vec.begin(), vec.end(), key,
                            [](const std::pair<int, std::int64_t>& p, int k) { return p.first < k; });
  }
  static std::vector<std::pair<int, std::int64_t>>::const_iterator lower_bound(
      const std::vector<std::pair<int, std::int64_t>>& vec, int key) {
    return std::lower_bound(vec.begin(), vec.end(), key,
                            [](const std::pair<int, std::int64_t>& p, int k) { return p.first < k; });
  }

  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw DomainError("vertex id " + std::to_string(v) + " out of range");
  }

  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<std::pair<int, std::int64_t>>> out_;
  std::vector<std::vector<std::pair<int, std::int64_t>>> in_;
};

// Degree statistics. t[i] counts vertices of outdegree i (index 0 included so
// the histogram identities hold on any input); s_out/s_in sum the excess over
// 2 across vertices of out-/indegree >= 2.
struct DegreeProfile {
  int n = 0;
  int m = 0;
  std::vector<int> t;
  long long s_out = 0;
  long long s_in = 0;

  double d() const { return n == 0 ? 0.0 : static_cast<double>(m) / n; }
  // exact rational m/n as a pair
  std::pair<int, int> d_ratio() const { return {m, n}; }
};

inline DegreeProfile degree_profile(const WeightedDigraph& g) {
  DegreeProfile p;
  p.n = g.vertex_count();
  p.m = g.arc_count();
  p.t.assign(static_cast<std::size_t>(p.n), 0);
  for (int v = 0; v < p.n; ++v) {
    int od = g.outdeg(v);
    int id = g.indeg(v);
    ++p.t[static_cast<std::size_t>(od)];
    if (od >= 2) p.s_out += od - 2;
    if (id >= 2) p.s_in += id - 2;
  }
  return p;
}

// ---- contraction ------------------------------------------------------------

// Forces the arc e = (u,v) onto the tour: removes (v,u) and every other arc
// leaving u or entering v, then merges u and v into one vertex whose out-arcs
// are v's and in-arcs are u's. The mapping sends old ids to new ids; u and v
// map to the same id. The caller accounts for w(e).
inline std::pair<WeightedDigraph, std::vector<int>> contract_forced_edge(const WeightedDigraph& g,
                                                                         int u, int v) {
  if (!g.has_arc(u, v)) throw InvalidEdge(u, v);
  int n = g.vertex_count();
  if (n < 3) throw PreconditionViolated("contraction requires at least 3 vertices");

  int a = std::min(u, v);
  int b = std::max(u, v);
  std::vector<int> map(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) {
    if (w == u || w == v)
      map[static_cast<std::size_t>(w)] = a;
    else
      map[static_cast<std::size_t>(w)] = w < b ? w : w - 1;
  }

  WeightedDigraph h(n - 1);
  for (const Arc& arc : g.arcs()) {
    if (arc.tail == u) continue;                      // (u, x) including e itself
    if (arc.head == v) continue;                      // (x, v)
    if (arc.tail == v && arc.head == u) continue;     // the reverse arc
    h.add_arc(map[static_cast<std::size_t>(arc.tail)], map[static_cast<std::size_t>(arc.head)],
              arc.weight);
  }
  return {std::move(h), std::move(map)};
}

// ---- instance text format ----------------------------------------------------
//
//   c <comment>
//   p atsp <n> <m>
//   a <tail> <head> <weight>     (m lines, vertices 1-based)

inline WeightedDigraph parse_instance(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  int n = 0;
  long long m = 0, seen = 0;
  WeightedDigraph g;

  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;  // blank line
    if (kind == "c") continue;
    if (kind == "p") {
      if (have_header) throw ParseError(lineno, "duplicate problem line");
      std::string fmt;
      if (!(ls >> fmt >> n >> m) || fmt != "atsp")
        throw ParseError(lineno, "expected 'p atsp <n> <m>'");
      if (n <= 0) throw ParseError(lineno, "vertex count must be positive");
      if (m < 0) throw ParseError(lineno, "negative edge count");
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing tokens on problem line");
      g = WeightedDigraph(n);
      have_header = true;
    } else if (kind == "a") {
      if (!have_header) throw ParseError(lineno, "arc before problem line");
      long long t = 0, h = 0, w = 0;
      if (!(ls >> t >> h >> w)) throw ParseError(lineno, "expected 'a <tail> <head> <weight>'");
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing tokens on arc line");
      if (t < 1 || t > n || h < 1 || h > n) throw ParseError(lineno, "vertex id out of range");
      if (++seen > m) throw ParseError(lineno, "more arcs than declared");
      g.add_arc(static_cast<int>(t - 1), static_cast<int>(h - 1), w);  // SelfLoop/DuplicateEdge propagate
    } else {
      throw ParseError(lineno, "unknown line type '" + kind + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing problem line");
  if (seen != m) throw ParseError(lineno, "declared " + std::to_string(m) + " arcs, found " +
                                              std::to_string(seen));
  return g;
}

inline std::string serialize_instance(const WeightedDigraph& g) {
  std::ostringstream os;
  os << "p atsp " << g.vertex_count() << ' ' << g.arc_count() << '\n';
  for (const Arc& a : g.arcs())
    os << "a " << a.tail + 1 << ' ' << a.head + 1 << ' ' << a.weight << '\n';
  return os.str();
}

}  // namespace sparse_atsp

#endif
