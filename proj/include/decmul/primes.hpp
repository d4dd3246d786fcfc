#pragma once

#include <vector>

#include "decmul/montgomery.hpp"

namespace decmul {

// Deterministic Miller-Rabin over the first twelve prime bases; exact for all n < 2^64.
bool is_prime(Word n);

// Largest primes p = psi * 2^n + 1 <= p_max with psi an odd multiple of 3,
// scanning psi downward in steps of 6. At most ell results, descending.
std::vector<Word> find_primes_for_n(unsigned n, Word p_max, unsigned ell);

// Union of find_primes_for_n over n in [n_min, w-2] with p_max = 2^(w-1) - 1,
// reduced to the ell largest, descending. Only w = 64 is supported.
// Throws std::runtime_error if fewer than ell primes exist.
std::vector<Word> find_primes(unsigned w, unsigned n_min, unsigned ell);

struct PrimePair {
  Word p1, p2;  // p1 < p2
};

// Sized so one pair serves operands up to 2^25 limbs: smallest n with 3*2^n >= 2^25.
inline constexpr unsigned kProductionNMin = 24;

// The two largest primes below 2^63 of the form c*3*2^n + 1, c odd, n >= kProductionNMin
// (what find_primes(64, kProductionNMin, 2) yields); re-verified at first use.
inline constexpr Word kProductionP1 = 9223372036015915009ull;  // 91625968973  * 3 * 2^25 + 1
inline constexpr Word kProductionP2 = 9223372036166909953ull;  // 183251937949 * 3 * 2^24 + 1

// Embedded pair above after primality/form verification (throws std::logic_error
// if the constants were ever corrupted). Cached; cheap after the first call.
const PrimePair& production_primes();

// Montgomery form of a primitive n-th root of unity mod ctx.p, for n = 2^k or
// 3*2^k dividing p-1. Deterministic: candidates g = 2, 3, 5, 7, ... (odd numbers
// after 2); xi = g^((p-1)/n) accepted once xi^(n/2) != 1 and, when 3 | n,
// xi^(n/3) != 1. Throws std::invalid_argument when n does not divide p-1.
Word primitive_root_of_unity(const MontCtx& ctx, Word n);

}  // namespace decmul
