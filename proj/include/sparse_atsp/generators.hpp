#ifndef SPARSE_ATSP_GENERATORS_HPP
#define SPARSE_ATSP_GENERATORS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "sparse_atsp/errors.hpp"
#include "sparse_atsp/graph.hpp"
#include "sparse_atsp/reductions.hpp"
#include "sparse_atsp/rng.hpp"

namespace sparse_atsp {

struct WeightRange {
  std::int64_t lo = 1;
  std::int64_t hi = 10;
};

namespace detail {

inline std::vector<int> random_permutation(int n, SplitMix64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(p[static_cast<std::size_t>(i)], p[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  return p;
}

// Draws `count` distinct elements from `pool` by a partial Fisher-Yates pass.
inline void draw_prefix(std::vector<std::pair<int, int>>& pool, std::size_t count, SplitMix64& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
}

}  // namespace detail

// m distinct arcs uniform over all ordered pairs; weights uniform in range.
inline WeightedDigraph gen_random(int n, long long m, WeightRange wr, std::uint64_t seed) {
  if (n < 1) throw DomainError("gen_random: n must be positive");
  long long max_m = static_cast<long long>(n) * (n - 1);
  if (m > max_m) throw TooDense("gen_random: m exceeds n(n-1)");
  SplitMix64 rng(seed);
  std::vector<std::pair<int, int>> pool;
  pool.reserve(static_cast<std::size_t>(max_m));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) pool.emplace_back(u, v);
  detail::draw_prefix(pool, static_cast<std::size_t>(m), rng);
  std::sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
  WeightedDigraph g(n);
  for (long long i = 0; i < m; ++i) {
    auto [u, v] = pool[static_cast<std::size_t>(i)];
    g.add_arc(u, v, rng.in_range(wr.lo, wr.hi));
  }
  return g;
}

// Superposes up to two random permutation digraphs, dropping self-loops and
// collisions, so every out- and indegree is at most 2.
inline WeightedDigraph gen_22(int n, std::uint64_t seed, WeightRange wr = {}) {
  if (n < 2) throw DomainError("gen_22: n must be at least 2");
  SplitMix64 rng(seed);
  std::vector<int> p1 = detail::random_permutation(n, rng);
  std::vector<int> p2 = detail::random_permutation(n, rng);
  WeightedDigraph g(n);
  for (int v = 0; v < n; ++v) {
    int h = p1[static_cast<std::size_t>(v)];
    if (h != v) g.add_arc(v, h, rng.in_range(wr.lo, wr.hi));
  }
  for (int v = 0; v < n; ++v) {
    int h = p2[static_cast<std::size_t>(v)];
    if (h != v && !g.has_arc(v, h)) g.add_arc(v, h, rng.in_range(wr.lo, wr.hi));
  }
  return g;
}

// A random Hamiltonian cycle plus extra_m further arcs; guaranteed feasible.
inline WeightedDigraph gen_planted(int n, long long extra_m, WeightRange wr, std::uint64_t seed) {
  if (n < 2) throw DomainError("gen_planted: n must be at least 2");
  long long spare = static_cast<long long>(n) * (n - 1) - n;
  if (extra_m > spare) throw TooDense("gen_planted: extra_m exceeds n(n-1) - n");
  SplitMix64 rng(seed);
  std::vector<int> order = detail::random_permutation(n, rng);
  WeightedDigraph g(n);
  for (int i = 0; i < n; ++i)
    g.add_arc(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>((i + 1) % n)],
              rng.in_range(wr.lo, wr.hi));
  if (extra_m > 0) {
    std::vector<std::pair<int, int>> pool;
    pool.reserve(static_cast<std::size_t>(spare));
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && !g.has_arc(u, v)) pool.emplace_back(u, v);
    detail::draw_prefix(pool, static_cast<std::size_t>(extra_m), rng);
    std::sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(extra_m));
    for (long long i = 0; i < extra_m; ++i) {
      auto [u, v] = pool[static_cast<std::size_t>(i)];
      g.add_arc(u, v, rng.in_range(wr.lo, wr.hi));
    }
  }
  return g;
}

// Total-degree-3 instances: a random (2,2)-graph on n/2 vertices run through
// the orientation splitting.
inline WeightedDigraph gen_totdeg3(int n, std::uint64_t seed, WeightRange wr = {}) {
  if (n % 2 != 0 || n < 4) throw OddN("gen_totdeg3: n must be even and >= 4");
  return orient_22_to_totdeg3(gen_22(n / 2, seed, wr));
}

}  // namespace sparse_atsp

#endif
