#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparse_atsp/errors.hpp"
#include "sparse_atsp/gf64.hpp"
#include "sparse_atsp/graph.hpp"
#include "sparse_atsp/reductions.hpp"
#include "sparse_atsp/rng.hpp"

namespace sparse_atsp {

// Decision sieve for directed Hamiltonicity, working on the bipartite double
// cover from atsp_to_bfm: rows are the out-copies 0..n-1, columns the
// in-copies n..2n-1, and the forced matching pairs v with n+v. Each edge
// carries one field value shared by both traversal directions, except the
// matching edge of vertex 0 whose two directions get independent values. Over
// a field of characteristic two every non-Hamiltonian cover term cancels
// against the one with its first unforced cycle reversed, while the two
// orientations of a Hamiltonian cycle survive as distinct monomials thanks to
// that one asymmetric edge.
struct SieveInstance {
  BfmInstance bfm;
  std::vector<std::vector<Gf64>> z;  // z[u][v]: edge (u, n+v), shared both ways
  Gf64 z_star_fwd;                   // matching edge of vertex 0, out -> in
  Gf64 z_star_rev;                   // matching edge of vertex 0, in -> out
  std::vector<std::vector<Gf64>> a;  // a[j][k]: edge (n+j, k), column side first

  int n() const { return bfm.n; }

  Gf64 z_edge(int out_v, int in_v, bool out_to_in) const {
    if (out_v == 0 && in_v == 0) return out_to_in ? z_star_fwd : z_star_rev;
    return z[static_cast<std::size_t>(out_v)][static_cast<std::size_t>(in_v)];
  }
};

// Random values for every edge variable; `a` starts all-zero, which the
// decision procedure keeps (the surviving terms carry no a-variables, so any
// fixed choice gives the same sum).
inline SieveInstance make_sieve_instance(const WeightedDigraph& g, SplitMix64& rng) {
  SieveInstance inst;
  inst.bfm = atsp_to_bfm(g);
  int n = inst.bfm.n;
  inst.z.assign(static_cast<std::size_t>(n), std::vector<Gf64>(static_cast<std::size_t>(n)));
  inst.a.assign(static_cast<std::size_t>(n), std::vector<Gf64>(static_cast<std::size_t>(n)));
  for (int u = 0; u < n; ++u)
    for (auto [x, w] : inst.bfm.adj[static_cast<std::size_t>(u)])
      if (!(u == 0 && x == n))
        inst.z[static_cast<std::size_t>(u)][static_cast<std::size_t>(x - n)] = Gf64(rng.next());
  inst.z_star_fwd = Gf64(rng.next());
  inst.z_star_rev = Gf64(rng.next());
  return inst;
}

// Entry (i,j) pairs the edge into column j with the edge leaving it: for a
// matching edge the exit ranges over the other row vertices adjacent to j,
// otherwise the exit is forced through j's matching partner. Absent edges
// leave the entry zero.
inline std::vector<std::vector<Gf64>> build_matrix(const SieveInstance& inst,
                                                   const std::vector<int>& x) {
  int n = inst.n();
  if (static_cast<int>(x.size()) != n)
    throw DimensionMismatch("x must assign one bit per row vertex");
  std::vector<std::vector<Gf64>> m(static_cast<std::size_t>(n),
                                   std::vector<Gf64>(static_cast<std::size_t>(n)));
  for (int j = 0; j < n; ++j) {
    const auto& nbrs = inst.bfm.adj[static_cast<std::size_t>(n + j)];
    for (auto [i, w] : nbrs) {
      if (i == j) {
        Gf64 sum;
        for (auto [k, wk] : nbrs) {
          if (k == i) continue;
          sum += inst.z_edge(k, j, false) *
                 (inst.a[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] +
                  Gf64(x[static_cast<std::size_t>(k)] ? 1 : 0));
        }
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            inst.z_edge(i, j, true) * sum;
      } else {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            inst.z_edge(i, j, true) * inst.z_edge(j, j, false) *
            (inst.a[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] +
             Gf64(x[static_cast<std::size_t>(j)] ? 1 : 0));
      }
    }
  }
  return m;
}

// The sieve polynomial at one evaluation point: the determinant summed over
// all 2^n assignments of the row indicator x.
inline Gf64 sieve_sum(const SieveInstance& inst) {
  int n = inst.n();
  if (n > 24) throw TooLarge("sieve summation runs 2^n determinants");
  std::vector<int> x(static_cast<std::size_t>(n));
  Gf64 acc;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = (mask >> k) & 1;
    acc += gf64_det(build_matrix(inst, x));
  }
  return acc;
}

enum class Decision { Yes, No };

// One-sided Monte Carlo test for a directed Hamiltonian cycle. Graphs without
// one always answer No (the polynomial is identically zero); Hamiltonian
// graphs answer Yes per trial with probability at least 1 - 2n/2^64. Arc
// weights play no role.
inline Decision decide_hamiltonicity(const WeightedDigraph& g, int trials,
                                     std::uint64_t seed = 0, int cap = 14) {
  int n = g.vertex_count();
  if (n > cap)
    throw TooLarge("hamiltonicity sieve capped at " + std::to_string(cap) + " vertices");
  if (trials < 1) throw DomainError("trials must be positive");
  SplitMix64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    SieveInstance inst = make_sieve_instance(g, rng);
    if (!sieve_sum(inst).is_zero()) return Decision::Yes;
  }
  return Decision::No;
}

}  // namespace sparse_atsp
