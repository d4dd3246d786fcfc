#include "decmul/bench.hpp"

#include <chrono>
#include <random>
#include <stdexcept>

#include "decmul/decimal.hpp"
#include "decmul/montgomery.hpp"
#include "decmul/primes.hpp"

namespace decmul {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point t0, Clock::time_point t1) {
  return std::chrono::duration<double>(t1 - t0).count();
}

// The ten chained multiplications per iteration, spelled out so the unroll
// does not depend on optimizer behavior.
template <class Step>
[[gnu::noinline]] Word chain_loop(std::uint64_t n, Word acc, const Word (&k)[10], Step step) {
  for (std::uint64_t i = 0; i < n; ++i) {
    acc = step(acc, k[0]);
    acc = step(acc, k[1]);
    acc = step(acc, k[2]);
    acc = step(acc, k[3]);
    acc = step(acc, k[4]);
    acc = step(acc, k[5]);
    acc = step(acc, k[6]);
    acc = step(acc, k[7]);
    acc = step(acc, k[8]);
    acc = step(acc, k[9]);
  }
  return acc;
}

Word splitmix64(Word& state) {
  Word z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

BenchReport bench_modmul(ModmulVariant variant, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("bench_modmul: n must be >= 1");

  const Word p = variant == ModmulVariant::kSolinas ? kSolinasPrime : production_primes().p1;
  Word seed = 0x243f6a8885a308d3ull;
  Word k[10];
  for (Word& v : k) v = splitmix64(seed) % (p - 1) + 1;  // in [1, p-1]
  Word acc = splitmix64(seed) % p;

  BenchReport rep;
  rep.iterations = n;
  Clock::time_point t0, t1;
  switch (variant) {
    case ModmulVariant::kNaive: {
      rep.variant = "naive";
      t0 = Clock::now();
      acc = chain_loop(n, acc, k, [p](Word a, Word b) { return naive_modmul(p, a, b); });
      t1 = Clock::now();
      break;
    }
    case ModmulVariant::kMontgomery: {
      rep.variant = "montgomery";
      const MontCtx ctx = make_ctx(p);
      Word km[10];
      for (int i = 0; i < 10; ++i) km[i] = to_mont(ctx, k[i]);
      const Word pp = ctx.p_prime;
      t0 = Clock::now();
      acc = chain_loop(n, acc, km, [p, pp](Word a, Word b) {
        return redc<AdjustStrategy::kConditionalSelect>(p, pp, a, b);
      });
      t1 = Clock::now();
      break;
    }
    case ModmulVariant::kSolinas: {
      rep.variant = "solinas";
      t0 = Clock::now();
      acc = chain_loop(n, acc, k, [](Word a, Word b) { return solinas_modmul(a, b); });
      t1 = Clock::now();
      break;
    }
  }
  rep.checksum = acc;
  rep.seconds = elapsed_seconds(t0, t1);
  rep.ns_per_modmul = rep.seconds * 1e9 / (10.0 * double(n));
  return rep;
}

std::uint64_t auto_mul_iterations(std::size_t digits) {
  if (digits < 1) throw std::invalid_argument("auto_mul_iterations: digits must be >= 1");
  const std::uint64_t k = 80000000ull / digits;
  return k > 0 ? k : 1;
}

MulBenchReport bench_mul(std::size_t digits, std::uint64_t iterations, AdjustStrategy strategy,
                         std::uint64_t seed) {
  if (digits < 1) throw std::invalid_argument("bench_mul: digits must be >= 1");
  if (iterations < 1) throw std::invalid_argument("bench_mul: iterations must be >= 1");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> lead(1, 9), any(0, 9);
  const auto random_digits = [&](std::size_t len) {
    std::string s(len, '0');
    s[0] = char('0' + lead(rng));
    for (std::size_t i = 1; i < len; ++i) s[i] = char('0' + any(rng));
    return s;
  };
  const DecimalNumber x = DecimalNumber::parse(random_digits(digits));
  const DecimalNumber y = DecimalNumber::parse(random_digits(digits));

  MulBenchReport rep;
  rep.digits = digits;
  rep.iterations = iterations;
  const BasePlan bp = select_base_and_length(digits, digits, production_primes());
  rep.base_exp = bp.base_exp;
  rep.length = bp.length;

  const MultiplyOptions opt{strategy, 0};
  multiply(x, y, opt);  // warm the plan cache outside the timed region
  const auto t0 = Clock::now();
  for (std::uint64_t i = 0; i < iterations; ++i) {
    const DecimalNumber z = multiply(x, y, opt);
    rep.product_digits = z.digit_count();
  }
  const auto t1 = Clock::now();
  rep.seconds = elapsed_seconds(t0, t1);
  rep.seconds_per_mul = rep.seconds / double(iterations);
  return rep;
}

}  // namespace decmul
