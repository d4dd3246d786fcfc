#include "decmul/selftest.hpp"

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "decmul/conv.hpp"
#include "decmul/decimal.hpp"
#include "decmul/montgomery.hpp"
#include "decmul/primes.hpp"

namespace decmul {

namespace {

struct Suite {
  const char* name;
  int checks = 0;
  int failures = 0;

  void expect(bool ok) {
    ++checks;
    if (!ok) ++failures;
  }
  int report() const {
    std::printf("suite=%s checks=%d failures=%d\n", name, checks, failures);
    return failures;
  }
};

std::vector<Word> random_residues(std::mt19937_64& rng, std::size_t n, Word p) {
  std::uniform_int_distribution<Word> dist(0, p - 1);
  std::vector<Word> v(n);
  for (Word& w : v) w = dist(rng);
  return v;
}

// Direct double-loop cyclic convolution; quadratic, small n only.
std::vector<Word> direct_cyclic(const std::vector<Word>& x, const std::vector<Word>& y, Word p) {
  const std::size_t n = x.size();
  std::vector<Word> out(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    u128 sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += u128(x[i]) * y[(k + n - i) % n] % p;
    out[k] = Word(sum % p);
  }
  return out;
}

// Digit-string schoolbook product, independent of the transform pipeline.
std::string schoolbook(const std::string& a, const std::string& b) {
  if (a == "0" || b == "0") return "0";
  std::vector<unsigned> acc(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      acc[i + j + 1] += unsigned(a[i] - '0') * unsigned(b[j] - '0');
  for (std::size_t k = acc.size(); k-- > 1;) {
    acc[k - 1] += acc[k] / 10;
    acc[k] %= 10;
  }
  std::string s;
  std::size_t i = 0;
  while (i + 1 < acc.size() && acc[i] == 0) ++i;
  for (; i < acc.size(); ++i) s += char('0' + acc[i]);
  return s;
}

std::string random_decimal(std::mt19937_64& rng, std::size_t len) {
  std::uniform_int_distribution<int> lead(1, 9), any(0, 9);
  std::string s(len, '0');
  s[0] = char('0' + lead(rng));
  for (std::size_t i = 1; i < len; ++i) s[i] = char('0' + any(rng));
  return s;
}

}  // namespace

int run_selftest(AdjustStrategy strategy, bool corrupt_a_table) {
  int total_failures = 0;
  std::mt19937_64 rng(0xdecu);
  const PrimePair& pair = production_primes();
  const MontCtx ctx1 = make_ctx(pair.p1, strategy);
  const MontCtx ctx2 = make_ctx(pair.p2, strategy);

  {
    Suite s{"field_identities"};
    for (const MontCtx& c : {ctx1, ctx2}) {
      s.expect(to_mont(c, 1) == c.r_mod_p);
      s.expect(from_mont(c, c.r_mod_p) == 1);
      std::uniform_int_distribution<Word> dist(0, c.p - 1);
      for (int i = 0; i < 200; ++i) {
        const Word x = dist(rng), y = dist(rng);
        s.expect(from_mont(c, to_mont(c, x)) == x);
        s.expect(redc(c, to_mont(c, x), y) == naive_modmul(c.p, x, y));
      }
      s.expect(mont_pow(c, to_mont(c, 5), c.p - 1) == c.r_mod_p);  // Fermat
    }
    total_failures += s.report();
  }

  {
    Suite s{"transform_roundtrip"};
    for (const MontCtx& c : {ctx1, ctx2}) {
      for (std::size_t n : {2u, 4u, 16u, 64u, 256u, 3u, 6u, 48u, 192u, 768u}) {
        const ConvPlan plan = build_conv_plan(c, n);
        const std::vector<Word> x = random_residues(rng, n, c.p);
        std::vector<Word> v = x;
        forward_transform(plan, v);
        inverse_transform(plan, v);
        s.expect(v == x);
      }
      // composite shapes forced at small sizes
      for (std::size_t n : {64u, 192u}) {
        const ConvPlan plan = build_conv_plan(c, n, /*six_step_threshold=*/4);
        const std::vector<Word> x = random_residues(rng, n, c.p);
        std::vector<Word> v = x;
        forward_transform(plan, v);
        inverse_transform(plan, v);
        s.expect(v == x);
      }
    }
    total_failures += s.report();
  }

  {
    Suite s{"convolution_vs_direct"};
    for (const MontCtx& c : {ctx1, ctx2}) {
      for (std::size_t n : {4u, 8u, 12u, 16u, 24u}) {
        const ConvPlan plan = build_conv_plan(c, n);
        const std::vector<Word> x = random_residues(rng, n, c.p);
        const std::vector<Word> y = random_residues(rng, n, c.p);
        s.expect(convolve_mod_p(plan, x, y) == direct_cyclic(x, y, c.p));
      }
    }
    total_failures += s.report();
  }

  {
    Suite s{"crt_recompose"};
    const CrtCtx crt = make_crt_ctx(pair, strategy);
    std::uniform_int_distribution<Word> lo(0, ~Word(0)), hi(0, Word((u128(pair.p1) * pair.p2 - 1) >> 64));
    for (int i = 0; i < 1000; ++i) {
      u128 x = (u128(hi(rng)) << 64) | lo(rng);
      if (x >= u128(pair.p1) * pair.p2) x -= u128(pair.p1) * pair.p2;
      const WidePair m = crt2(crt, Word(x % pair.p1), Word(x % pair.p2));
      s.expect(m.value() == x);
    }
    total_failures += s.report();
  }

  {
    Suite s{"base_division"};
    for (unsigned e = kMinBaseExp; e <= kMaxBaseExp; ++e) {
      const DivByConstB d = make_div_by_const(pow10(e));
      std::uniform_int_distribution<Word> lo(0, ~Word(0)), hi(0, (Word(1) << 62) - 1);
      for (int i = 0; i < 1000; ++i) {
        const u128 x = (u128(hi(rng)) << 64) | lo(rng);  // < 2^126
        const DivModResult r = divmod_base(d, WidePair::from(x));
        s.expect(r.remainder < d.base);
        s.expect(r.quotient.value() * d.base + r.remainder == x);
      }
    }
    total_failures += s.report();
  }

  {
    Suite s{"carry_recovery"};
    const std::vector<WidePair> c = {WidePair::from(3), WidePair::from(10), WidePair::from(8),
                                     WidePair::from(0)};
    const PackedOperand z = recover_digits(c, 1, 2);
    s.expect(z.limbs == std::vector<Word>({3, 0, 9, 0}));
    s.expect(to_decimal(z) == "903");
    const std::vector<WidePair> zero(6);
    s.expect(to_decimal(recover_digits(zero, 14, 1)) == "0");
    total_failures += s.report();
  }

  {
    Suite s{"small_products"};
    const MultiplyOptions opt{strategy, 0};
    const auto mul = [&](const std::string& a, const std::string& b) {
      return multiply(DecimalNumber::parse(a), DecimalNumber::parse(b), opt).text();
    };
    s.expect(mul("12", "34") == "408");
    s.expect(mul("21", "43") == "903");
    s.expect(mul("0", "999") == "0");
    s.expect(mul("1", "1") == "1");
    for (int i = 0; i < 100; ++i) {
      std::uniform_int_distribution<std::size_t> len(1, 60);
      const std::string a = random_decimal(rng, len(rng));
      const std::string b = random_decimal(rng, len(rng));
      s.expect(mul(a, b) == schoolbook(a, b));
    }
    const DecimalNumber sq = DecimalNumber::parse(random_decimal(rng, 40));
    s.expect(multiply(sq, sq, opt).text() == schoolbook(sq.text(), sq.text()));
    total_failures += s.report();
  }

  if (corrupt_a_table) {
    // Flip one root-table entry in a locally built plan; the round trip and
    // the convolution identity over that plan must now fail, proving the
    // checks are sensitive to table corruption.
    Suite s{"fault_injection"};
    ConvPlan plan = build_conv_plan(ctx1, 64);
    plan.direct.fwd[5] ^= 1;
    const std::vector<Word> x = random_residues(rng, 64, ctx1.p);
    const std::vector<Word> y = random_residues(rng, 64, ctx1.p);
    std::vector<Word> v = x;
    forward_transform(plan, v);
    inverse_transform(plan, v);
    s.expect(v == x);
    s.expect(convolve_mod_p(plan, x, y) == direct_cyclic(x, y, ctx1.p));
    total_failures += s.report();
  }

  std::printf("selftest_failures=%d\n", total_failures);
  return total_failures;
}

}  // namespace decmul
