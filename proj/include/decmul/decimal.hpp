#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "decmul/montgomery.hpp"
#include "decmul/primes.hpp"
#include "decmul/words.hpp"

namespace decmul {

// Raised when no supported limb base keeps the convolution coefficients
// representable, or when no supported transform length can hold the operands.
struct OperandTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-negative integer as a canonical ASCII digit string, most-significant
// digit first: "0", or digits with no leading zero.
class DecimalNumber {
 public:
  DecimalNumber() = default;
  static DecimalNumber parse(std::string_view text);  // throws std::invalid_argument

  const std::string& text() const { return text_; }
  std::size_t digit_count() const { return text_.size(); }
  bool is_zero() const { return text_ == "0"; }

 private:
  explicit DecimalNumber(std::string t) : text_(std::move(t)) {}
  std::string text_ = "0";
};

// Little-endian limbs in base 10^base_exp; every limb < 10^base_exp.
struct PackedOperand {
  unsigned base_exp = 0;
  std::vector<Word> limbs;
};

inline constexpr unsigned kMinBaseExp = 14;
inline constexpr unsigned kMaxBaseExp = 17;

constexpr Word pow10(unsigned e) {
  Word b = 1;
  for (unsigned i = 0; i < e; ++i) b *= 10;
  return b;
}

// Largest digits-per-limb n such that (10^n - 1)^2 * limb_bound, the worst
// convolution coefficient, stays below (2^(word_bits - 1))^words_per_coeff.
// Returns 0 when not even one digit per limb is safe.
unsigned max_digits_per_limb(unsigned words_per_coeff, std::uint64_t limb_bound,
                             unsigned word_bits);

struct BasePlan {
  unsigned base_exp = 0;   // limb base is 10^base_exp
  std::size_t length = 0;  // transform length, 2^k or 3*2^k
};

// Picks the largest base_exp in [kMinBaseExp, kMaxBaseExp] whose coefficient
// bound (B-1)^2 * min{limbs} fits below p1*p2, then the smallest transform
// length >= limbs_x + limbs_y supported by both primes. A nonzero
// forced_base_exp skips the base scan (testing/benchmark knob) but is still
// checked against the safety inequality.
BasePlan select_base_and_length(std::size_t n_digits_x, std::size_t n_digits_y,
                                const PrimePair& pair, unsigned forced_base_exp = 0);

// Smallest N of form 2^k or 3*2^k with N >= need and N | p-1 for both primes;
// 0 if no supported length is large enough.
std::size_t smallest_supported_length(std::size_t need, const PrimePair& pair);

// Groups consecutive base_exp decimal digits into little-endian limbs.
PackedOperand pack(const DecimalNumber& x, unsigned base_exp);

// Most-significant-first digit string; trailing zero limbs are trimmed.
std::string to_decimal(const PackedOperand& x);

// ---- two-word division by the constant limb base ----

struct DivByConstB {
  Word base = 0;       // B
  unsigned shift = 0;  // normalization shift
  Word d_norm = 0;     // B << shift, top bit set
  Word recip = 0;      // floor((2^128 - 1) / d_norm) - 2^64
};

constexpr DivByConstB make_div_by_const(Word base) {
  if (base < 2) throw std::invalid_argument("make_div_by_const: base must be >= 2");
  DivByConstB d;
  d.base = base;
  d.shift = unsigned(std::countl_zero(base));
  d.d_norm = base << d.shift;
  d.recip = Word(~u128(0) / d.d_norm - (u128(1) << 64));
  return d;
}

// Divides u1*2^64 + u0 by normalized d using the precomputed reciprocal v;
// requires u1 < d. The +1 folded into the high word and the unsigned wraps
// below are part of the reciprocal scheme, not sloppiness.
constexpr void udiv_2by1(Word u1, Word u0, Word d, Word v, Word& q, Word& r) {
  const u128 t = u128(v) * u1 + ((u128(u1) + 1) << 64) + u0;
  Word q1 = Word(t >> 64);
  const Word q0 = Word(t);
  Word rr = u0 - q1 * d;
  if (rr > q0) {
    --q1;
    rr += d;
  }
  if (rr >= d) {
    ++q1;
    rr -= d;
  }
  q = q1;
  r = rr;
}

struct DivModResult {
  WidePair quotient;
  Word remainder = 0;
};

// Exact quotient/remainder of a two-word value by the constant base.
constexpr DivModResult divmod_base(const DivByConstB& d, WidePair x) {
  const u128 value = x.value();
  const unsigned sh = d.shift;
  Word n0, n1, n2;
  if (sh == 0) {
    n0 = Word(value);
    n1 = Word(value >> 64);
    n2 = 0;
  } else {
    n0 = Word(value) << sh;
    n1 = Word(value >> (64 - sh));
    n2 = Word(value >> (128 - sh));
  }
  Word q_hi, r_mid, q_lo, r_lo;
  udiv_2by1(n2, n1, d.d_norm, d.recip, q_hi, r_mid);
  udiv_2by1(r_mid, n0, d.d_norm, d.recip, q_lo, r_lo);
  return {WidePair::from((u128(q_hi) << 64) | q_lo), r_lo >> sh};
}

// ---- CRT recombination of the two prime-field convolutions ----

struct CrtCtx {
  Word p1 = 0;
  MontCtx ctx2;       // field of the larger prime p2
  Word r_tilde = 0;   // Montgomery form of p1^{-1} mod p2
};

CrtCtx make_crt_ctx(const PrimePair& pair, AdjustStrategy strategy);

// Unique m < p1*p2 with m = a1 (mod p1), m = a2 (mod p2):
// m = a1 + p1 * ((a2 - a1) * p1^{-1} mod p2), the inner product via one REDC.
WidePair crt2(const CrtCtx& ctx, Word a1, Word a2);

// Carry propagation z_i = (s + c_i) mod B, s' = (s + c_i) div B over the CRT
// outputs; trailing limbs are emitted until the final carry is consumed.
// min_limbs is min{limbs_x, limbs_y}; the analytic bounds c_i <= (B-1)^2 *
// min_limbs and s < (B-1) * min_limbs are enforced unconditionally — a
// violation means the convolution was corrupted upstream.
PackedOperand recover_digits(std::span<const WidePair> c, unsigned base_exp,
                             std::size_t min_limbs);

struct MultiplyOptions {
  AdjustStrategy strategy = AdjustStrategy::kConditionalSelect;
  unsigned forced_base_exp = 0;  // 0 = automatic selection
};

// Exact decimal product; x and y may alias (squaring saves one transform).
DecimalNumber multiply(const DecimalNumber& x, const DecimalNumber& y,
                       const MultiplyOptions& opt = {});

}  // namespace decmul
