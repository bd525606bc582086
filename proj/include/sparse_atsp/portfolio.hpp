#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sparse_atsp/branching.hpp"
#include "sparse_atsp/cycle_cover.hpp"
#include "sparse_atsp/graph.hpp"
#include "sparse_atsp/mim.hpp"

namespace sparse_atsp {

enum class Algo { BranchPlus, EnumCC, Mim, Algebraic, HeldKarpFallback };
enum class Mode { AtspPolySpace, AtspExpSpace, HamPolySpace, HamExpSpace };

inline const char* algo_name(Algo a) {
  switch (a) {
    case Algo::BranchPlus: return "branch+";
    case Algo::EnumCC: return "enumcc";
    case Algo::Mim: return "mim";
    case Algo::Algebraic: return "algebraic";
    case Algo::HeldKarpFallback: return "held-karp-fallback";
  }
  return "?";
}

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::AtspPolySpace: return "atsp-polyspace";
    case Mode::AtspExpSpace: return "atsp-expspace";
    case Mode::HamPolySpace: return "ham-polyspace";
    case Mode::HamExpSpace: return "ham-expspace";
  }
  return "?";
}

inline std::optional<Mode> mode_from_name(const std::string& s) {
  if (s == "atsp-polyspace") return Mode::AtspPolySpace;
  if (s == "atsp-expspace") return Mode::AtspExpSpace;
  if (s == "ham-polyspace") return Mode::HamPolySpace;
  if (s == "ham-expspace") return Mode::HamExpSpace;
  return std::nullopt;
}

// Each mode is a step function of the average outdegree d = m/n with two
// breakpoints: strictly below the lower one the brancher wins, between them
// (inclusive on both ends) the middle algorithm, above the upper one the
// tail algorithm. Breakpoints are stored in thousandths so selection can
// compare 1000*m against breakpoint*n in exact integer arithmetic.
struct PortfolioPolicy {
  Mode mode = Mode::AtspPolySpace;
  long long low_thousandths = 0;
  long long high_thousandths = 0;
  Algo below = Algo::BranchPlus;
  Algo mid = Algo::BranchPlus;
  Algo above = Algo::BranchPlus;
};

inline PortfolioPolicy policy_for(Mode mode) {
  switch (mode) {
    case Mode::AtspPolySpace:
      return {mode, 2746, 8627, Algo::BranchPlus, Algo::EnumCC, Algo::HeldKarpFallback};
    case Mode::AtspExpSpace:
      return {mode, 2398, 3999, Algo::BranchPlus, Algo::Mim, Algo::HeldKarpFallback};
    case Mode::HamPolySpace:
      return {mode, 2746, 3203, Algo::BranchPlus, Algo::EnumCC, Algo::Algebraic};
    case Mode::HamExpSpace:
      return {mode, 2398, 3734, Algo::BranchPlus, Algo::Mim, Algo::Algebraic};
  }
  return {};
}

inline Algo select_algorithm(const WeightedDigraph& g, Mode mode) {
  PortfolioPolicy p = policy_for(mode);
  long long lhs = 1000LL * g.arc_count();
  long long n = g.vertex_count();
  if (lhs < p.low_thousandths * n) return p.below;
  if (lhs <= p.high_thousandths * n) return p.mid;
  return p.above;
}

// ---- crossover calculator ----------------------------------------------------

// Per-algorithm base b of the O*(b^n) running-time bound, as a function of
// the average outdegree. The last two are the cited external algorithms the
// portfolio hands off to; their sub-exponential corrections are dropped, so
// they enter as flat constants.
enum class BaseCurve { BranchPlus, EnumCC, Mim, Bjorklund, GurevichShelah, CyganPilipczuk };

inline const char* curve_name(BaseCurve c) {
  switch (c) {
    case BaseCurve::BranchPlus: return "branch+";
    case BaseCurve::EnumCC: return "enumcc";
    case BaseCurve::Mim: return "mim";
    case BaseCurve::Bjorklund: return "bjorklund";
    case BaseCurve::GurevichShelah: return "gurevich-shelah";
    case BaseCurve::CyganPilipczuk: return "cygan-pilipczuk";
  }
  return "?";
}

inline double curve_base(BaseCurve c, double d) {
  switch (c) {
    case BaseCurve::BranchPlus: return std::exp2(Constants{}.alpha * (d - 1.0));
    case BaseCurve::EnumCC: return mu(d);
    case BaseCurve::Mim: return std::sqrt(tau(d));
    case BaseCurve::Bjorklund: return 2.0 - std::exp2(-d);
    case BaseCurve::GurevichShelah: return 4.0;
    case BaseCurve::CyganPilipczuk: return 2.0;
  }
  return 0.0;
}

struct Crossover {
  BaseCurve cheap_below;
  BaseCurve cheap_above;
  double d = 0.0;
};

namespace detail {

// All six pairs start with the first curve strictly cheaper at d slightly
// above 1 and cross exactly once before d = 12; scan for the sign change,
// then bisect it down to 1e-6.
inline double crossover_of(BaseCurve a, BaseCurve b) {
  auto f = [&](double d) { return curve_base(a, d) - curve_base(b, d); };
  double lo = 1.05;
  double hi = lo;
  for (double d = lo + 0.05; d <= 12.0; d += 0.05) {
    if (f(d) >= 0.0) {
      hi = d;
      break;
    }
    lo = d;
  }
  while (hi - lo > 1e-7) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

inline std::vector<Crossover> compute_crossovers() {
  using C = BaseCurve;
  std::vector<Crossover> table;
  for (auto [a, b] : {std::pair{C::BranchPlus, C::Mim}, {C::BranchPlus, C::EnumCC},
                      {C::EnumCC, C::Bjorklund}, {C::Mim, C::Bjorklund},
                      {C::Mim, C::CyganPilipczuk}, {C::EnumCC, C::GurevichShelah}})
    table.push_back({a, b, detail::crossover_of(a, b)});
  return table;
}

}  // namespace sparse_atsp
