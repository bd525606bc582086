#include <catch2/catch_amalgamated.hpp>

#include "sparse_atsp/generators.hpp"
#include "sparse_atsp/oracle.hpp"

using namespace sparse_atsp;

TEST_CASE("random instances") {
  SECTION("shape and weight bounds") {
    auto g = gen_random(8, 20, {-5, 5}, 42);
    CHECK(g.vertex_count() == 8);
    CHECK(g.arc_count() == 20);
    for (const Arc& a : g.arcs()) {
      CHECK(a.weight >= -5);
      CHECK(a.weight <= 5);
    }
  }
  SECTION("dense end is the complete digraph") {
    auto g = gen_random(5, 20, {1, 1}, 7);
    CHECK(g.arc_count() == 20);
    for (int u = 0; u < 5; ++u)
      for (int v = 0; v < 5; ++v)
        if (u != v) CHECK(g.has_arc(u, v));
  }
  SECTION("density cap") {
    CHECK_THROWS_AS(gen_random(4, 13, {1, 2}, 0), TooDense);
    CHECK_NOTHROW(gen_random(4, 12, {1, 2}, 0));
  }
  SECTION("determinism and seed sensitivity") {
    CHECK(gen_random(9, 30, {1, 99}, 5) == gen_random(9, 30, {1, 99}, 5));
    CHECK_FALSE(gen_random(9, 30, {1, 99}, 5) == gen_random(9, 30, {1, 99}, 6));
  }
}

TEST_CASE("bounded-degree instances") {
  SECTION("degree caps") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      auto g = gen_22(6 + static_cast<int>(seed % 5), seed);
      for (int v = 0; v < g.vertex_count(); ++v) {
        CHECK(g.outdeg(v) <= 2);
        CHECK(g.indeg(v) <= 2);
      }
      auto p = degree_profile(g);
      CHECK(p.s_out == 0);
      CHECK(p.s_in == 0);
    }
  }
  SECTION("determinism") {
    CHECK(gen_22(12, 3) == gen_22(12, 3));
  }
  SECTION("default weights") {
    auto g = gen_22(10, 11);
    for (const Arc& a : g.arcs()) {
      CHECK(a.weight >= 1);
      CHECK(a.weight <= 10);
    }
  }
}

TEST_CASE("planted instances always have a tour") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    int n = 4 + static_cast<int>(seed % 5);
    long long extra = static_cast<long long>(seed % 7);
    auto g = gen_planted(n, extra, {1, 9}, seed);
    CHECK(g.arc_count() == n + extra);
    CHECK(held_karp(g).status == TourStatus::Optimal);
  }
  CHECK_THROWS_AS(gen_planted(3, 4, {1, 2}, 0), TooDense);
  CHECK(gen_planted(7, 10, {1, 5}, 8) == gen_planted(7, 10, {1, 5}, 8));
}

TEST_CASE("low-total-degree instances") {
  CHECK_THROWS_AS(gen_totdeg3(7, 0), OddN);
  CHECK_THROWS_AS(gen_totdeg3(2, 0), OddN);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    int n = 8 + 2 * static_cast<int>(seed % 5);
    auto g = gen_totdeg3(n, seed);
    CHECK(g.vertex_count() == n);
    for (int v = 0; v < n; ++v) CHECK(g.outdeg(v) + g.indeg(v) <= 3);
  }
  CHECK(gen_totdeg3(14, 9) == gen_totdeg3(14, 9));
}
