#pragma once

#include <cstdint>

namespace decmul {

using Word = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr int kWordBits = 64;

// Two-word little-endian value: hi*2^64 + lo.
struct WidePair {
  Word lo = 0;
  Word hi = 0;

  static constexpr WidePair from(u128 v) {
    return {static_cast<Word>(v), static_cast<Word>(v >> 64)};
  }
  constexpr u128 value() const { return (u128(hi) << 64) | lo; }

  friend constexpr bool operator==(const WidePair&, const WidePair&) = default;
};

constexpr WidePair wide_mul(Word a, Word b) { return WidePair::from(u128(a) * b); }

// How values are folded back into [0, p). Both strategies produce identical
// values; they differ only in codegen (mask arithmetic vs conditional move).
enum class AdjustStrategy { kBitWizardry, kConditionalSelect };

// All-ones mask when the top bit of x is set (x negative as int64), else zero.
constexpr Word extract_sign(Word x) {
  return static_cast<Word>(static_cast<std::int64_t>(x) >> (kWordBits - 1));
}

// x is a two's-complement value in [-p, p); returns x mod p in [0, p).
// Requires p < 2^63 so the sign bit of x is unambiguous.
template <AdjustStrategy S>
constexpr Word adjust_signed(Word x, Word p) {
  if constexpr (S == AdjustStrategy::kBitWizardry) {
    return x + (p & extract_sign(x));
  } else {
    return static_cast<std::int64_t>(x) < 0 ? x + p : x;
  }
}

// a, b in [0, p) -> (a + b) mod p.
template <AdjustStrategy S>
constexpr Word mod_add(Word a, Word b, Word p) {
  return adjust_signed<S>(a + b - p, p);
}

// a, b in [0, p) -> (a - b) mod p.
template <AdjustStrategy S>
constexpr Word mod_sub(Word a, Word b, Word p) {
  return adjust_signed<S>(a - b, p);
}

// a in [0, 2p) -> a mod p.
template <AdjustStrategy S>
constexpr Word adjust(Word a, Word p) {
  return adjust_signed<S>(a - p, p);
}

constexpr Word adjust_signed(Word x, Word p, AdjustStrategy s) {
  return s == AdjustStrategy::kBitWizardry
             ? adjust_signed<AdjustStrategy::kBitWizardry>(x, p)
             : adjust_signed<AdjustStrategy::kConditionalSelect>(x, p);
}
constexpr Word mod_add(Word a, Word b, Word p, AdjustStrategy s) {
  return adjust_signed(a + b - p, p, s);
}
constexpr Word mod_sub(Word a, Word b, Word p, AdjustStrategy s) {
  return adjust_signed(a - b, p, s);
}
constexpr Word adjust(Word a, Word p, AdjustStrategy s) {
  return adjust_signed(a - p, p, s);
}

}  // namespace decmul
