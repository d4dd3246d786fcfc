#include "decmul/primes.hpp"

#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace decmul {

namespace {

constexpr Word kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

Word mul_mod(Word a, Word b, Word n) { return Word(u128(a) * b % n); }

Word pow_mod(Word a, Word e, Word n) {
  Word r = 1 % n;
  a %= n;
  while (e != 0) {
    if (e & 1) r = mul_mod(r, a, n);
    a = mul_mod(a, a, n);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(Word n) {
  if (n < 2) return false;
  for (Word b : kMrBases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  // n odd, n > 37: write n-1 = d * 2^s
  Word d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  for (Word b : kMrBases) {
    Word x = pow_mod(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<Word> find_primes_for_n(unsigned n, Word p_max, unsigned ell) {
  std::vector<Word> r;
  if (n >= 63 || p_max < 2 || ell == 0) return r;
  std::int64_t psi = std::int64_t((p_max - 1) >> n);
  if (psi % 2 == 0) psi -= 1;
  while (psi > 0 && psi % 3 != 0) psi -= 2;
  if (psi <= 0 || psi % 3 != 0) return r;
  while (psi > 0 && r.size() < ell) {
    Word p = (Word(psi) << n) + 1;
    if (is_prime(p)) r.push_back(p);
    psi -= 6;
  }
  return r;
}

std::vector<Word> find_primes(unsigned w, unsigned n_min, unsigned ell) {
  if (w != 64) throw std::invalid_argument("find_primes: only w = 64 is supported");
  const Word p_max = (Word(1) << 63) - 1;
  std::set<Word> all;
  for (unsigned n = n_min; n <= w - 2; ++n) {
    for (Word p : find_primes_for_n(n, p_max, ell)) all.insert(p);
  }
  if (all.size() < ell) throw std::runtime_error("find_primes: not enough primes of the required form");
  std::vector<Word> r(all.rbegin(), all.rend());
  r.resize(ell);
  return r;
}

const PrimePair& production_primes() {
  static const PrimePair pair = [] {
    for (Word p : {kProductionP1, kProductionP2}) {
      if (p >= (Word(1) << 63) || !is_prime(p))
        throw std::logic_error("production_primes: embedded constant is not a valid prime");
      Word t = p - 1;
      unsigned n = unsigned(std::countr_zero(t));
      t >>= n;
      if (n < kProductionNMin || t % 3 != 0 || (t / 3) % 2 == 0)
        throw std::logic_error("production_primes: embedded prime has the wrong form");
    }
    return PrimePair{kProductionP1, kProductionP2};
  }();
  return pair;
}

Word primitive_root_of_unity(const MontCtx& ctx, Word n) {
  const Word p = ctx.p;
  if (n == 0 || (p - 1) % n != 0)
    throw std::invalid_argument("primitive_root_of_unity: n must divide p-1");
  if (n == 1) return ctx.r_mod_p;
  const Word one = ctx.r_mod_p;
  for (Word g = 2; g < p; g = (g == 2 ? 3 : g + 2)) {
    Word xi = mont_pow(ctx, to_mont(ctx, g), (p - 1) / n);
    if (n % 2 == 0 && mont_pow(ctx, xi, n / 2) == one) continue;
    if (n % 3 == 0 && mont_pow(ctx, xi, n / 3) == one) continue;
    return xi;
  }
  throw std::logic_error("primitive_root_of_unity: no generator found");  // unreachable for prime p
}

}  // namespace decmul
