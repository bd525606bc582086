#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparse_atsp/errors.hpp"

#ifdef __PCLMUL__
#include <immintrin.h>
#endif

namespace sparse_atsp {

// GF(2^64) with the irreducible modulus x^64 + x^4 + x^3 + x + 1. Addition is
// xor; multiplication is a carry-less product folded back through the modulus.

namespace detail {

constexpr std::uint64_t kGf64Modulus = 0x1b;  // low bits of x^64 + x^4 + x^3 + x + 1

inline void clmul_portable(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                           std::uint64_t& lo) {
  hi = 0;
  lo = 0;
  for (int i = 0; i < 64; ++i) {
    if ((b >> i) & 1) {
      lo ^= a << i;
      if (i) hi ^= a >> (64 - i);
    }
  }
}

#ifdef __PCLMUL__
inline void clmul_hw(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  __m128i p = _mm_clmulepi64_si128(_mm_cvtsi64_si128(static_cast<long long>(a)),
                                   _mm_cvtsi64_si128(static_cast<long long>(b)), 0x00);
  lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(p));
  hi = static_cast<std::uint64_t>(_mm_extract_epi64(p, 1));
}
#endif

inline void clmul(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
#ifdef __PCLMUL__
  clmul_hw(a, b, hi, lo);
#else
  clmul_portable(a, b, hi, lo);
#endif
}

// Folds a 128-bit carry-less product into the field: the overflow times the
// modulus tail is degree <= 67, so one more fold of its (at most 4-bit)
// overflow finishes the reduction.
inline std::uint64_t gf64_reduce(std::uint64_t hi, std::uint64_t lo) {
  std::uint64_t h2, l2;
  clmul(hi, kGf64Modulus, h2, l2);
  lo ^= l2;
  std::uint64_t h3, l3;
  clmul(h2, kGf64Modulus, h3, l3);
  return lo ^ l3;
}

inline std::uint64_t gf64_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t hi, lo;
  clmul(a, b, hi, lo);
  return gf64_reduce(hi, lo);
}

inline std::uint64_t gf64_mul_portable(std::uint64_t a, std::uint64_t b) {
  std::uint64_t hi, lo;
  clmul_portable(a, b, hi, lo);
  std::uint64_t h2, l2;
  clmul_portable(hi, kGf64Modulus, h2, l2);
  lo ^= l2;
  std::uint64_t h3, l3;
  clmul_portable(h2, kGf64Modulus, h3, l3);
  return lo ^ l3;
}

}  // namespace detail

class Gf64 {
 public:
  constexpr Gf64() = default;
  constexpr explicit Gf64(std::uint64_t bits) : v_(bits) {}

  std::uint64_t bits() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  Gf64& operator+=(Gf64 o) {
    v_ ^= o.v_;
    return *this;
  }
  Gf64& operator*=(Gf64 o) {
    v_ = detail::gf64_mul(v_, o.v_);
    return *this;
  }
  friend Gf64 operator+(Gf64 a, Gf64 b) { return Gf64(a.v_ ^ b.v_); }
  friend Gf64 operator*(Gf64 a, Gf64 b) { return Gf64(detail::gf64_mul(a.v_, b.v_)); }
  friend bool operator==(Gf64, Gf64) = default;

 private:
  std::uint64_t v_ = 0;
};

inline Gf64 gf64_pow(Gf64 base, std::uint64_t e) {
  Gf64 acc(1);
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline Gf64 gf64_inv(Gf64 a) {
  if (a.is_zero()) throw DomainError("zero has no inverse");
  return gf64_pow(a, ~0ULL - 1);  // a^(2^64 - 2)
}

// Determinant by Gaussian elimination; row swaps cost nothing in
// characteristic two, so no sign tracking.
inline Gf64 gf64_det(std::vector<std::vector<Gf64>> m) {
  std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw DimensionMismatch("determinant needs a square matrix");
  Gf64 det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Gf64(0);
    if (p != c) std::swap(m[p], m[c]);
    det *= m[c][c];
    Gf64 ip = gf64_inv(m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      Gf64 f = m[r][c] * ip;
      for (std::size_t k = c; k < n; ++k) m[r][k] += f * m[c][k];
    }
  }
  return det;
}

}  // namespace sparse_atsp
