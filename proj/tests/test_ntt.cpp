#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "decmul/ntt.hpp"
#include "decmul/primes.hpp"
#include "oracle.hpp"

using namespace decmul;

namespace {

std::vector<Word> dif_of(const NttPlan& plan, std::vector<Word> a) {
  dif_forward_no_bitrev(plan, a);
  return a;
}

}  // namespace

TEST_CASE("root-power table layout, checked against a hand computation") {
  // p = 17: 2^64 = (2^8)^8 = 1 mod 17, so Montgomery form equals plain value.
  const MontCtx c = make_ctx(17);
  REQUIRE(c.r_mod_p == 1);
  const NttPlan plan = build_plan_with_root(c, 4, 4);  // 4^2 = 16 != 1, 4^4 = 1
  CHECK(plan.log2n == 2);
  CHECK(plan.fwd == std::vector<Word>{1, 1, 4});    // stages: [4^0], [4^0, 4^1]
  CHECK(plan.inv == std::vector<Word>{1, 1, 13});   // 4^{-1} = 13
  CHECK(plan.root == 4);

  const NttPlan one = build_plan(c, 1);
  CHECK(one.fwd.empty());
  CHECK(one.inv.empty());
  CHECK(one.log2n == 0);
}

TEST_CASE("table layout per stage for a larger plan") {
  const Word p = 193;
  const MontCtx c = make_ctx(p);
  const NttPlan plan = build_plan(c, 64);
  REQUIRE(plan.fwd.size() == 63);
  REQUIRE(plan.inv.size() == 63);
  const Word root = plan.root;
  const Word root_inv = oracle::inv_mod(root, p);
  for (unsigned s = 1; s <= plan.log2n; ++s) {
    const std::size_t half = std::size_t(1) << (s - 1);
    for (std::size_t j = 0; j < half; ++j) {
      const Word e = Word(j) << (plan.log2n - s);
      CHECK(from_mont(c, plan.fwd[half - 1 + j]) == oracle::pow_mod(root, e, p));
      CHECK(from_mont(c, plan.inv[half - 1 + j]) == oracle::pow_mod(root_inv, e, p));
    }
  }
}

TEST_CASE("plan validation") {
  const MontCtx c = make_ctx(17);
  CHECK_THROWS_AS(build_plan_with_root(c, 3, 1), std::invalid_argument);   // not 2^k
  CHECK_THROWS_AS(build_plan_with_root(c, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_plan(c, 32), std::invalid_argument);               // 32 does not divide 16
  CHECK_THROWS_AS(build_plan_with_root(c, 4, 16), std::invalid_argument);  // order 2, not primitive
  CHECK_THROWS_AS(build_plan_with_root(c, 4, 2), std::invalid_argument);   // 2^4 = 16 != 1
}

TEST_CASE("psi and psi_prime invariants") {
  for (Word p : {Word(17), Word(97), kProductionP1, kProductionP2}) {
    const MontCtx c = make_ctx(p);
    for (std::size_t n = 1; n <= 64 && (n == 1 || (p - 1) % n == 0); n *= 2) {
      const NttPlan plan = build_plan(c, n);
      // psi = R * n^{-1}: multiplying the Montgomery form of n by it gives 1's form.
      CHECK(redc(c, plan.psi, to_mont(c, Word(n % p))) == c.r_mod_p);
      CHECK(from_mont(c, plan.psi) == oracle::inv_mod(Word(n % p), p));
      // psi_prime = R^2 * n^{-1}: one REDC against plain n lands back on R mod p.
      CHECK(redc(c, plan.psi_prime, Word(n % p)) == c.r_mod_p);
      CHECK(plan.psi_prime == to_mont(c, plan.psi));  // one more factor of R
    }
  }
}

TEST_CASE("dif hand example: p = 17, N = 4, impulse at index 1") {
  const MontCtx c = make_ctx(17);
  const NttPlan plan = build_plan_with_root(c, 4, 4);
  // Spectrum of the shifted impulse is [1, 4, 16, 13]; output is bit-reversed.
  CHECK(dif_of(plan, {0, 1, 0, 0}) == std::vector<Word>{1, 16, 4, 13});
  CHECK(dif_of(plan, {1, 0, 0, 0}) == std::vector<Word>{1, 1, 1, 1});
  CHECK(dif_of(plan, {1, 1, 1, 1}) == std::vector<Word>{4, 0, 0, 0});
}

TEST_CASE("dif equals naive DFT composed with bit reversal") {
  std::mt19937_64 rng(41);
  for (Word p : {Word(17), Word(97), Word(193), kProductionP1, kProductionP2}) {
    const MontCtx c = make_ctx(p);
    for (std::size_t n = 1; n <= 64; n *= 2) {
      if (n > 1 && (p - 1) % n != 0) continue;
      const NttPlan plan = build_plan(c, n);
      const Word root = from_mont(c, n == 1 ? c.r_mod_p : primitive_root_of_unity(c, n));
      REQUIRE(root == (n == 1 ? 1 : plan.root));
      for (int rep = 0; rep < 10; ++rep) {
        const std::vector<Word> x = oracle::random_residues(rng, n, p);
        std::vector<Word> got = x;
        dif_forward_no_bitrev(plan, got);
        std::vector<Word> want = x;
        if (n > 1) {
          const std::vector<Word> spec = oracle::naive_dft(x, root, p);
          for (std::size_t k = 0; k < n; ++k)
            want[k] = spec[oracle::bit_reverse(k, plan.log2n)];
        }
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("dit undoes dif up to the factor n; psi makes it exact") {
  std::mt19937_64 rng(43);
  for (Word p : {Word(193), kProductionP1, kProductionP2}) {
    const MontCtx c = make_ctx(p);
    for (std::size_t n : {std::size_t(2), std::size_t(4), std::size_t(64),
                          std::size_t(1024), std::size_t(16384)}) {
      if ((p - 1) % n != 0) continue;
      const NttPlan plan = build_plan(c, n);
      const std::vector<Word> x = oracle::random_residues(rng, n, p);
      std::vector<Word> a = x;
      dif_forward_no_bitrev(plan, a);
      dit_inverse_no_bitrev(plan, a);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(a[i] == oracle::mul_mod(x[i], Word(n % p), p));  // unscaled inverse
        CHECK(redc(c, a[i], plan.psi) == x[i]);                // folding psi is exact
      }
    }
  }
}

TEST_CASE("kernel convolution path: dif, pointwise REDC, dit, psi_prime") {
  std::mt19937_64 rng(47);
  for (Word p : {Word(17), Word(97), Word(193), kProductionP1}) {
    const MontCtx c = make_ctx(p);
    for (std::size_t n = 1; n <= 64; n *= 2) {
      if (n > 1 && (p - 1) % n != 0) continue;
      const NttPlan plan = build_plan(c, n);
      const std::vector<Word> x = oracle::random_residues(rng, n, p);
      const std::vector<Word> y = oracle::random_residues(rng, n, p);
      std::vector<Word> a = x, b = y;
      dif_forward_no_bitrev(plan, a);
      dif_forward_no_bitrev(plan, b);
      for (std::size_t i = 0; i < n; ++i) a[i] = redc(c, a[i], b[i]);
      dit_inverse_no_bitrev(plan, a);
      scale_by_psi_prime(plan, a);  // repays both n and the pointwise R^{-1}
      CHECK(a == oracle::naive_convolve(x, y, p));
    }
  }
}

TEST_CASE("scale_by_psi_prime on a length-1 plan is to_mont") {
  const MontCtx c = make_ctx(kProductionP1);
  const NttPlan plan = build_plan(c, 1);
  std::vector<Word> a{123456789};
  scale_by_psi_prime(plan, a);
  CHECK(a[0] == to_mont(c, 123456789));
}

TEST_CASE("strategy choice never changes transform values") {
  std::mt19937_64 rng(53);
  for (std::size_t n : {std::size_t(8), std::size_t(256)}) {
    const MontCtx cb = make_ctx(kProductionP2, AdjustStrategy::kBitWizardry);
    const MontCtx cs = make_ctx(kProductionP2, AdjustStrategy::kConditionalSelect);
    const NttPlan pb = build_plan(cb, n), ps = build_plan(cs, n);
    CHECK(pb.fwd == ps.fwd);
    CHECK(pb.inv == ps.inv);
    const std::vector<Word> x = oracle::random_residues(rng, n, kProductionP2);
    std::vector<Word> a = x, b = x;
    dif_forward_no_bitrev(pb, a);
    dif_forward_no_bitrev(ps, b);
    CHECK(a == b);
    dit_inverse_no_bitrev(pb, a);
    dit_inverse_no_bitrev(ps, b);
    CHECK(a == b);
  }
}

TEST_CASE("bit_rev_permute") {
  std::vector<Word> a{0, 1, 2, 3, 4, 5, 6, 7};
  bit_rev_permute(a);
  CHECK(a == std::vector<Word>{0, 4, 2, 6, 1, 5, 3, 7});

  std::vector<Word> tiny{9};
  bit_rev_permute(tiny);
  CHECK(tiny == std::vector<Word>{9});
  std::vector<Word> two{3, 5};
  bit_rev_permute(two);
  CHECK(two == std::vector<Word>{3, 5});

  std::mt19937_64 rng(59);
  std::vector<Word> big(1 << 16);
  for (Word& w : big) w = rng();
  std::vector<Word> copy = big;
  bit_rev_permute(big);
  for (std::size_t k = 0; k < big.size(); ++k)
    CHECK(big[k] == copy[oracle::bit_reverse(k, 16)]);
  bit_rev_permute(big);  // involution
  CHECK(big == copy);
}
