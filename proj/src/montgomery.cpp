#include "decmul/montgomery.hpp"

#include <stdexcept>
#include <utility>

namespace decmul {

namespace {

// c1 with c1 * p == 1 (mod 2^64), p odd, via extended Euclid on (p, 2^64).
Word inv_mod_2_64(Word p) {
  using i128 = __int128;
  i128 a = i128(p), b = i128(1) << 64;
  i128 x0 = 1, x1 = 0;  // running coefficients of p
  while (b != 0) {
    i128 q = a / b;
    a -= q * b;
    std::swap(a, b);
    x0 -= q * x1;
    std::swap(x0, x1);
  }
  // a == gcd(p, 2^64) == 1, x0 * p == 1 (mod 2^64)
  return Word(u128(x0));
}

}  // namespace

MontCtx make_ctx(Word p, AdjustStrategy strategy) {
  if (p <= 2) throw std::invalid_argument("make_ctx: p must exceed 2");
  if ((p & 1) == 0) throw std::invalid_argument("make_ctx: p must be odd");
  if (p >= (Word(1) << 63)) throw std::invalid_argument("make_ctx: p must be below 2^63");

  MontCtx c;
  c.p = p;
  c.p_prime = Word(0) - inv_mod_2_64(p);  // p * p_prime == -1 (mod 2^64)
  if (c.p_prime * p != Word(0) - 1) throw std::logic_error("make_ctx: p_prime check failed");
  c.r_mod_p = (Word(0) - p) % p;  // 2^64 mod p
  c.r2_mod_p = Word(u128(c.r_mod_p) * c.r_mod_p % p);
  c.strategy = strategy;
  return c;
}

Word mont_pow(const MontCtx& c, Word base, Word e) {
  Word result = c.r_mod_p;
  Word b = base;
  while (e != 0) {
    if (e & 1) result = redc(c, result, b);
    b = redc(c, b, b);
    e >>= 1;
  }
  return result;
}

}  // namespace decmul
