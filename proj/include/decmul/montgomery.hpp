#pragma once

#include <cassert>

#include "decmul/words.hpp"

namespace decmul {

// Montgomery context for an odd prime p with 2 < p < 2^63, R = 2^64.
// p_prime satisfies p * p_prime == -1 (mod 2^64).
struct MontCtx {
  Word p = 0;
  Word p_prime = 0;
  Word r_mod_p = 0;   // R mod p: the Montgomery form of 1
  Word r2_mod_p = 0;  // R^2 mod p: to_mont multiplier
  AdjustStrategy strategy = AdjustStrategy::kConditionalSelect;
};

// Validates p (odd, > 2, < 2^63) and derives p_prime by extended Euclid;
// throws std::invalid_argument otherwise.
MontCtx make_ctx(Word p, AdjustStrategy strategy = AdjustStrategy::kConditionalSelect);

// a < p * 2^64. Returns a * R^{-1} mod p, canonical in [0, p).
// One operand of the product forming `a` may be unadjusted (in [0, 2p)):
// since p < 2^63, (2p-1)(p-1) < p * 2^64 still holds.
template <AdjustStrategy S>
inline Word mont_reduce(Word p, Word p_prime, u128 a) {
  assert(Word(a >> 64) < p);
  Word m = Word(a) * p_prime;   // ((a mod 2^64) * p') mod 2^64
  u128 t = a + u128(m) * p;     // low word cancels exactly
  assert(Word(t) == 0);
  Word r = Word(t >> 64);       // t / 2^64, exact; r < 2p
  return adjust<S>(r, p);
}

template <AdjustStrategy S>
inline Word redc(Word p, Word p_prime, Word x, Word y) {
  return mont_reduce<S>(p, p_prime, u128(x) * y);
}

inline Word mont_reduce(const MontCtx& c, u128 a) {
  return c.strategy == AdjustStrategy::kBitWizardry
             ? mont_reduce<AdjustStrategy::kBitWizardry>(c.p, c.p_prime, a)
             : mont_reduce<AdjustStrategy::kConditionalSelect>(c.p, c.p_prime, a);
}
inline Word mont_reduce(const MontCtx& c, WidePair a) { return mont_reduce(c, a.value()); }

// redc(x, y) = x * y * R^{-1} mod p.
inline Word redc(const MontCtx& c, Word x, Word y) { return mont_reduce(c, u128(x) * y); }

inline Word to_mont(const MontCtx& c, Word x) { return redc(c, x, c.r2_mod_p); }
inline Word from_mont(const MontCtx& c, Word x) { return mont_reduce(c, u128(x)); }

// base in Montgomery form; returns base^e in Montgomery form (square and multiply).
Word mont_pow(const MontCtx& c, Word base, Word e);

// (a * b) mod p via widening multiply and two-word-by-one-word division.
inline Word naive_modmul(Word p, Word a, Word b) { return Word(u128(a) * b % p); }

// p = 2^64 - 2^32 + 1 admits the reduction map r(2^64*x1 + x0) = 2^32*x1 - x1 + x0.
inline constexpr Word kSolinasPrime = 0xffffffff00000001ull;

constexpr u128 solinas_round(u128 x) {
  u128 hi = x >> 64;
  Word lo = Word(x);
  return (hi << 32) - hi + lo;  // 2^32*hi >= hi, so never negative
}

// Any 128-bit x: two rounds bring the value below 2p, then one conditional
// subtraction (round 1: < 2^96; round 2: < 2^65 - 2^33 < 2p).
constexpr Word solinas_reduce(WidePair x) {
  u128 v = solinas_round(solinas_round(x.value()));
  if (v >= kSolinasPrime) v -= kSolinasPrime;
  return Word(v);
}

inline Word solinas_modmul(Word a, Word b) { return solinas_reduce(wide_mul(a, b)); }

}  // namespace decmul
