#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "sparse_atsp/errors.hpp"
#include "sparse_atsp/graph.hpp"
#include "sparse_atsp/oracle.hpp"

namespace sparse_atsp {

struct LightPath {
  std::vector<int> vertices;
  std::int64_t weight = 0;
  long long inner_outdeg_sum = 0;
};

struct PathFamily {
  int origin = 0;
  int l = 0;
  long long D = 0;
  std::vector<LightPath> paths;
};

// ⌊d⌋^{⌊d⌋+1−d} (⌊d⌋+1)^{d−⌊d⌋}: the per-step branching factor of the light
// path search at average outdegree d; equals d at integers, never exceeds d.
inline double tau(double d) {
  if (!(d >= 1.0)) throw DomainError("tau requires d >= 1");
  double fl = std::floor(d);
  return std::pow(fl, fl + 1.0 - d) * std::pow(fl + 1.0, d - fl);
}

namespace detail {

template <typename Sink>
void generate_paths_rec(const WeightedDigraph& g, std::vector<int>& path,
                        std::vector<char>& on_path, int l, long long budget, std::int64_t w,
                        long long inner, Sink& sink) {
  int u = path.back();
  for (const auto& [v1, wt] : g.out(u)) {
    if (on_path[static_cast<std::size_t>(v1)]) continue;
    if (l == 1) {
      path.push_back(v1);
      sink(path, checked_add(w, wt), inner);
      path.pop_back();
    } else if (g.outdeg(v1) + (l - 2) <= budget) {
      path.push_back(v1);
      on_path[static_cast<std::size_t>(v1)] = 1;
      generate_paths_rec(g, path, on_path, l - 1, budget - g.outdeg(v1), checked_add(w, wt),
                         inner + g.outdeg(v1), sink);
      on_path[static_cast<std::size_t>(v1)] = 0;
      path.pop_back();
    }
  }
}

}  // namespace detail

// All simple paths of length exactly l from v whose inner vertices have
// outdegree sum at most D. A candidate next vertex x is expanded only when
// outdeg(x) + (l-2) still fits the remaining budget, i.e. when completing the
// path with outdegree-1 vertices could stay within D; the output is exactly
// the light family.
inline PathFamily generate_paths(const WeightedDigraph& g, int v, int l, long long D) {
  if (v < 0 || v >= g.vertex_count()) throw DomainError("generate_paths: bad origin");
  if (l < 1 || D < 1) throw PreconditionViolated("generate_paths needs l >= 1 and D >= 1");
  PathFamily family;
  family.origin = v;
  family.l = l;
  family.D = D;
  std::vector<int> path{v};
  std::vector<char> on_path(static_cast<std::size_t>(g.vertex_count()), 0);
  on_path[static_cast<std::size_t>(v)] = 1;
  auto sink = [&](const std::vector<int>& p, std::int64_t w, long long inner) {
    family.paths.push_back({p, w, inner});
  };
  detail::generate_paths_rec(g, path, on_path, l, D, 0, 0, sink);
  return family;
}

// Cuts a Hamiltonian cycle into two edge-disjoint halves of length n/2 whose
// inner outdegree sums are both at most m/2. Scans the window sums S_i of n/2
// consecutive outdegrees along the cycle; the differences R_i = S_i - S_{i+k}
// flip sign somewhere because R_k = -R_0, and cutting at the flip does it.
inline std::pair<LightPath, LightPath> split_hamiltonian(const WeightedDigraph& g,
                                                         const std::vector<int>& tour) {
  int n = g.vertex_count();
  if (n < 2 || n % 2 != 0) throw PreconditionViolated("split needs an even vertex count");
  try {
    tour_weight(g, tour);
  } catch (const std::exception&) {
    throw PreconditionViolated("split needs a closed tour of the graph");
  }

  int k = n / 2;
  auto at = [&](int i) { return tour[static_cast<std::size_t>(i % n)]; };
  std::vector<long long> s(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) s[static_cast<std::size_t>(i)] += g.outdeg(at(i + j));
  auto r = [&](int i) {
    return s[static_cast<std::size_t>(i % n)] - s[static_cast<std::size_t>((i + k) % n)];
  };
  int j = 0;
  while (r(j) * r(j + 1) > 0) ++j;
  int cut = r(j) <= 0 ? j : j + k;

  auto take = [&](int from) {
    LightPath p;
    for (int i = 0; i <= k; ++i) p.vertices.push_back(at(from + i));
    for (int i = 0; i < k; ++i)
      p.weight = checked_add(p.weight, g.weight(at(from + i), at(from + i + 1)));
    for (int i = 1; i < k; ++i) p.inner_outdeg_sum += g.outdeg(at(from + i));
    return p;
  };
  return {take(cut), take(cut + k)};
}

struct MimOptions {
  long long max_dict_entries = 0;  // 0 means no cap
};

struct MimStats {
  long long dict_entries = 0;
  double family_bound_ratio = 0.0;
};

namespace detail {

inline WeightedDigraph split_vertex_zero(const WeightedDigraph& g) {
  int n = g.vertex_count();
  WeightedDigraph h(n + 1);
  for (const Arc& a : g.arcs()) h.add_arc(a.tail == 0 ? n : a.tail, a.head, a.weight);
  h.add_arc(0, n, 0);
  return h;
}

}  // namespace detail

// Exact optimum by meeting in the middle: every tour splits into two light
// half-paths, so joining all light half-paths from u1 to u2 with those from
// u2 back to u1 over complementary vertex sets finds it. Odd orders first
// split vertex 0 into an in-half and an out-half joined by a weight-0 edge.
inline TourSolution solve_mim(const WeightedDigraph& g, const MimOptions& opts = {},
                              MimStats* stats = nullptr) {
  int n0 = g.vertex_count();
  if (n0 < 3) throw PreconditionViolated("solve_mim needs n >= 3");
  if (n0 + (n0 % 2) > 64) throw TooLarge("solve_mim handles at most 64 vertices");
  const bool odd = n0 % 2 != 0;
  const WeightedDigraph h = odd ? detail::split_vertex_zero(g) : g;
  const int n = h.vertex_count();
  const int l = n / 2;
  const long long D = h.arc_count() / 2;

  MimStats local;
  TourSolution best;
  best.status = TourStatus::Infeasible;
  if (D < 1) {
    if (stats) *stats = local;
    return best;
  }

  std::vector<PathFamily> families;
  families.reserve(static_cast<std::size_t>(n));
  long long max_family = 0;
  for (int v = 0; v < n; ++v) {
    families.push_back(generate_paths(h, v, l, D));
    max_family = std::max(max_family, static_cast<long long>(families.back().paths.size()));
  }
  if (l >= 2 && D >= l - 1) {
    double bound = n * std::pow(tau(static_cast<double>(D) / (l - 1)), l - 1);
    local.family_bound_ratio = static_cast<double>(max_family) / bound;
  }

  const std::uint64_t full = n == 64 ? ~0ULL : (1ULL << n) - 1;
  auto key_of = [](const std::vector<int>& vs) {
    std::uint64_t k = 0;
    for (int v : vs) k |= 1ULL << v;
    return k;
  };

  std::vector<std::vector<std::vector<const LightPath*>>> by_end(
      static_cast<std::size_t>(n), std::vector<std::vector<const LightPath*>>(
                                       static_cast<std::size_t>(n)));
  for (int v = 0; v < n; ++v)
    for (const LightPath& p : families[static_cast<std::size_t>(v)].paths)
      by_end[static_cast<std::size_t>(v)][static_cast<std::size_t>(p.vertices.back())]
          .push_back(&p);

  std::vector<int> best_join;
  for (int u1 = 0; u1 < n; ++u1) {
    for (int u2 = u1 + 1; u2 < n; ++u2) {
      const auto& fwd = by_end[static_cast<std::size_t>(u1)][static_cast<std::size_t>(u2)];
      const auto& rev = by_end[static_cast<std::size_t>(u2)][static_cast<std::size_t>(u1)];
      if (fwd.empty() || rev.empty()) continue;
      std::map<std::uint64_t, const LightPath*> dict;
      for (const LightPath* p : fwd) {
        auto [it, inserted] = dict.try_emplace(key_of(p->vertices), p);
        if (!inserted && p->weight < it->second->weight) it->second = p;
      }
      local.dict_entries = std::max(local.dict_entries, static_cast<long long>(dict.size()));
      if (opts.max_dict_entries > 0 &&
          static_cast<long long>(dict.size()) > opts.max_dict_entries)
        throw MemoryBudgetExceeded("half-tour dictionary exceeded the configured cap");
      for (const LightPath* p : rev) {
        std::uint64_t probe = (full & ~key_of(p->vertices)) | (1ULL << u1) | (1ULL << u2);
        auto it = dict.find(probe);
        if (it == dict.end()) continue;
        std::int64_t w = checked_add(it->second->weight, p->weight);
        if (best.status == TourStatus::Infeasible || w < best.weight) {
          best.status = TourStatus::Optimal;
          best.weight = w;
          best_join = it->second->vertices;
          best_join.insert(best_join.end(), p->vertices.begin() + 1, p->vertices.end() - 1);
        }
      }
    }
  }

  if (best.status == TourStatus::Optimal) {
    std::vector<int> tour;
    tour.reserve(static_cast<std::size_t>(n0));
    for (int v : best_join)
      if (v < n0) tour.push_back(v);
    std::size_t zero = 0;
    while (tour[zero] != 0) ++zero;
    std::rotate(tour.begin(), tour.begin() + static_cast<std::ptrdiff_t>(zero), tour.end());
    best.tour = std::move(tour);
  }
  if (stats) *stats = local;
  return best;
}

}  // namespace sparse_atsp
