#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <numeric>
#include <vector>

#include "sparse_atsp/algebraic.hpp"
#include "sparse_atsp/generators.hpp"
#include "sparse_atsp/gf64.hpp"
#include "sparse_atsp/oracle.hpp"
#include "sparse_atsp/rng.hpp"
#include "support.hpp"

using namespace sparse_atsp;
using test_support::make_b3;
using test_support::make_c3;
using test_support::make_k4;

namespace {

using Matrix = std::vector<std::vector<Gf64>>;

Matrix random_matrix(int n, SplitMix64& rng) {
  Matrix m(static_cast<std::size_t>(n), std::vector<Gf64>(static_cast<std::size_t>(n)));
  for (auto& row : m)
    for (auto& e : row) e = Gf64(rng.next());
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  std::size_t n = a.size();
  Matrix c(n, std::vector<Gf64>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Characteristic two makes the determinant equal the permanent, so the
// reference is a plain permutation expansion.
Gf64 permutation_det(const Matrix& m) {
  std::vector<int> p(m.size());
  std::iota(p.begin(), p.end(), 0);
  Gf64 acc;
  do {
    Gf64 t(1);
    for (std::size_t i = 0; i < m.size(); ++i) t *= m[i][static_cast<std::size_t>(p[i])];
    acc += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

// The sum the sieve is supposed to collapse to: one monomial pair per
// directed Hamiltonian cycle, the pair differing only in the direction value
// of the distinguished matching edge.
Gf64 ham_monomials(const WeightedDigraph& g, const SieveInstance& inst) {
  Gf64 total;
  for (const auto& cyc : enumerate_hamiltonian_cycles(g, 12)) {
    Gf64 term = inst.z_star_fwd + inst.z_star_rev;
    for (int v = 1; v < g.vertex_count(); ++v) term *= inst.z_edge(v, v, true);
    for (std::size_t i = 0; i < cyc.size(); ++i)
      term *= inst.z_edge(cyc[i], cyc[(i + 1) % cyc.size()], true);
    total += term;
  }
  return total;
}

WeightedDigraph c3_missing_closing_arc() {
  WeightedDigraph g(3);
  g.add_arc(0, 1, 1);
  g.add_arc(1, 2, 2);
  return g;
}

}  // namespace

TEST_CASE("field arithmetic") {
  SECTION("axioms on random elements") {
    SplitMix64 rng(41);
    for (int i = 0; i < 200; ++i) {
      Gf64 a(rng.next()), b(rng.next()), c(rng.next());
      CHECK(a + b == b + a);
      CHECK(a + a == Gf64(0));
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * Gf64(1) == a);
      CHECK(a * Gf64(0) == Gf64(0));
    }
  }

  SECTION("reduction by the modulus") {
    CHECK(Gf64(1ULL << 63) * Gf64(2) == Gf64(0x1b));
    CHECK(gf64_pow(Gf64(2), 64) == Gf64(0x1b));
  }

  SECTION("multiplicative group") {
    SplitMix64 rng(42);
    for (int i = 0; i < 50; ++i) {
      Gf64 a(rng.next());
      if (a.is_zero()) continue;
      CHECK(gf64_pow(a, ~0ULL) == Gf64(1));
      CHECK(a * gf64_inv(a) == Gf64(1));
    }
    CHECK(gf64_inv(Gf64(1)) == Gf64(1));
    CHECK_THROWS_AS(gf64_inv(Gf64(0)), DomainError);
  }

  SECTION("hardware and portable multiply agree") {
    SplitMix64 rng(43);
    for (int i = 0; i < 200; ++i) {
      std::uint64_t a = rng.next(), b = rng.next();
      CHECK(detail::gf64_mul(a, b) == detail::gf64_mul_portable(a, b));
    }
  }
}

TEST_CASE("determinant over the field") {
  SECTION("identity and singular") {
    Matrix id(4, std::vector<Gf64>(4));
    for (int i = 0; i < 4; ++i) id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Gf64(1);
    CHECK(gf64_det(id) == Gf64(1));
    SplitMix64 rng(7);
    Matrix s = random_matrix(4, rng);
    s[3] = s[1];
    CHECK(gf64_det(s) == Gf64(0));
  }

  SECTION("matches permutation expansion") {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
      int n = 2 + trial % 4;
      Matrix m = random_matrix(n, rng);
      if (trial % 5 == 0) m[0] = m[static_cast<std::size_t>(n - 1)];
      CHECK(gf64_det(m) == permutation_det(m));
    }
  }

  SECTION("multiplicative") {
    SplitMix64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix a = random_matrix(4, rng), b = random_matrix(4, rng);
      CHECK(gf64_det(matmul(a, b)) == gf64_det(a) * gf64_det(b));
    }
  }

  SECTION("rejects ragged input") {
    Matrix bad{{Gf64(1), Gf64(2)}, {Gf64(3)}};
    CHECK_THROWS_AS(gf64_det(bad), DimensionMismatch);
  }
}

TEST_CASE("sieve matrix construction") {
  SplitMix64 rng(11);
  SieveInstance inst = make_sieve_instance(make_c3(), rng);

  SECTION("annihilating assignment") {
    Matrix m = build_matrix(inst, {0, 0, 0});
    for (const auto& row : m)
      for (Gf64 e : row) CHECK(e == Gf64(0));
  }

  SECTION("x size is checked") {
    CHECK_THROWS_AS(build_matrix(inst, {0, 0}), DimensionMismatch);
    CHECK_THROWS_AS(build_matrix(inst, {0, 0, 0, 0}), DimensionMismatch);
  }

  SECTION("triangle collapses to one monomial pair") {
    for (int trial = 0; trial < 20; ++trial) {
      SieveInstance t = make_sieve_instance(make_c3(), rng);
      Gf64 expected = (t.z_star_fwd + t.z_star_rev) * t.z_edge(1, 1, true) *
                      t.z_edge(2, 2, true) * t.z_edge(0, 1, true) * t.z_edge(1, 2, true) *
                      t.z_edge(2, 0, true);
      CHECK(sieve_sum(t) == expected);
    }
  }

  SECTION("a vertex with no incoming arcs zeroes its column") {
    SieveInstance t = make_sieve_instance(c3_missing_closing_arc(), rng);
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
      Matrix m = build_matrix(
          t, {static_cast<int>(mask & 1), static_cast<int>((mask >> 1) & 1),
              static_cast<int>((mask >> 2) & 1)});
      for (int i = 0; i < 3; ++i) CHECK(m[static_cast<std::size_t>(i)][0] == Gf64(0));
    }
    CHECK(sieve_sum(t) == Gf64(0));
  }
}

TEST_CASE("sieve polynomial identity") {
  SplitMix64 rng(2024);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    int n = 2 + static_cast<int>(seed % 6);
    WeightedDigraph g =
        seed % 3 == 2
            ? gen_planted(n, static_cast<long long>(seed % n), {1, 5}, seed)
            : gen_random(n,
                         std::min<long long>(static_cast<long long>(n) * (n - 1),
                                             2 * n + static_cast<long long>(seed % 5)),
                         {1, 5}, seed);
    for (int trial = 0; trial < 20; ++trial) {
      SieveInstance inst = make_sieve_instance(g, rng);
      CHECK(sieve_sum(inst) == ham_monomials(g, inst));
    }
  }
}

TEST_CASE("sieve sum ignores the a-variables") {
  SplitMix64 rng(2025);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    int n = 2 + static_cast<int>(seed % 5);
    WeightedDigraph g = gen_random(
        n,
        std::min<long long>(static_cast<long long>(n) * (n - 1),
                            2 * n + static_cast<long long>(seed % 5)),
        {1, 5}, seed * 3 + 1);
    SieveInstance inst = make_sieve_instance(g, rng);
    Gf64 reference = sieve_sum(inst);
    for (int redraw = 0; redraw < 5; ++redraw) {
      for (auto& row : inst.a)
        for (Gf64& e : row) e = Gf64(rng.next());
      CHECK(sieve_sum(inst) == reference);
    }
  }
}

TEST_CASE("hamiltonicity decisions") {
  SECTION("named instances") {
    CHECK(decide_hamiltonicity(make_c3(), 1) == Decision::Yes);
    CHECK(decide_hamiltonicity(c3_missing_closing_arc(), 3) == Decision::No);
    CHECK(decide_hamiltonicity(make_b3(), 1) == Decision::Yes);
    CHECK(decide_hamiltonicity(make_k4(), 1) == Decision::Yes);
  }

  SECTION("size cap") {
    CHECK_THROWS_AS(decide_hamiltonicity(WeightedDigraph(15), 1), TooLarge);
    CHECK_THROWS_AS(decide_hamiltonicity(make_k4(), 1, 0, 3), TooLarge);
    CHECK_THROWS_AS(decide_hamiltonicity(make_c3(), 0), DomainError);
  }

  SECTION("never claims a cycle where none exists") {
    int rejected = 0;
    for (std::uint64_t seed = 0; rejected < 100 && seed < 2000; ++seed) {
      int n = 4 + static_cast<int>(seed % 7);
      WeightedDigraph g =
          gen_random(n, n + static_cast<long long>(seed % n), {1, 5}, seed);
      if (held_karp(g).optimal()) continue;
      CHECK(decide_hamiltonicity(g, 1, seed) == Decision::No);
      ++rejected;
    }
    CHECK(rejected == 100);
  }

  SECTION("agrees with the reference solver") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      int n = 3 + static_cast<int>(seed % 10);
      WeightedDigraph g =
          seed % 4 == 3
              ? gen_planted(n, static_cast<long long>(seed % n), {1, 9}, seed)
              : gen_random(n,
                           std::min<long long>(static_cast<long long>(n) * (n - 1),
                                               2 * n + static_cast<long long>(seed % 7)),
                           {1, 9}, seed);
      Decision expect = held_karp(g).optimal() ? Decision::Yes : Decision::No;
      CHECK(decide_hamiltonicity(g, 1, seed) == expect);
    }
  }
}
