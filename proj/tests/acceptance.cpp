// Acceptance gate: ten go/no-go checks over the assembled engine, one line
// each. Exits nonzero if any check fails. Tolerances are pinned here as
// constants next to the check that uses them.

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "decmul/bench.hpp"
#include "decmul/conv.hpp"
#include "decmul/decimal.hpp"
#include "decmul/ntt.hpp"
#include "decmul/primes.hpp"
#include "decmul/transpose.hpp"
#include "oracle.hpp"

using namespace decmul;

namespace {

constexpr double kMontgomerySpeedupMin = 2.0;   // vs naive division, 10^8 modmuls
constexpr double kScalingRatioMax = 2.5;        // t(2n)/t(n) for doubling digit sizes
constexpr double kMillionDigitBudget = 10.0;    // seconds for one 10^6-digit product

int failures = 0;

void report(int idx, bool ok, const char* label, const std::string& detail = "") {
  std::printf("[%s] %2d %s%s%s\n", ok ? "PASS" : "FAIL", idx, label,
              detail.empty() ? "" : ": ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string mul_text(const std::string& a, const std::string& b,
                     const MultiplyOptions& opt = {}) {
  return multiply(DecimalNumber::parse(a), DecimalNumber::parse(b), opt).text();
}

// 1. Exact products against the quadratic oracle, plus the all-nines pair.
void criterion_exactness() {
  std::mt19937_64 rng(1001);
  bool ok = true;
  std::string detail;
  for (std::size_t n : {std::size_t(1), std::size_t(10), std::size_t(100),
                        std::size_t(1000), std::size_t(10000), std::size_t(20000)}) {
    for (int rep = 0; rep < 100 && ok; ++rep) {
      const std::string a = oracle::random_decimal(rng, n);
      const std::string b = oracle::random_decimal(rng, n);
      if (mul_text(a, b) != oracle::schoolbook_multiply(a, b)) {
        ok = false;
        detail = "mismatch at " + std::to_string(n) + " digits";
      }
    }
    const std::string nines(n, '9');
    if (ok && mul_text(nines, nines) != oracle::all_nines_square(n)) {
      ok = false;
      detail = "all-nines mismatch at " + std::to_string(n) + " digits";
    }
  }
  if (ok) detail = "600 random pairs + all-nines, 1..20000 digits, string-equal";
  report(1, ok, "exact products vs schoolbook oracle", detail);
}

// 2. Digits-per-limb function reproduces the full 24-cell reference grid.
void criterion_lambda_table() {
  const unsigned t64[3][4] = {{7, 16, 26, 35}, {6, 15, 25, 34}, {5, 15, 24, 34}};
  const unsigned t32[3][4] = {{2, 7, 11, 16}, {1, 6, 10, 15}, {0, 5, 10, 14}};
  const std::uint64_t bounds[3] = {1ull << 15, 1ull << 20, 1ull << 25};
  bool ok = true;
  for (int m = 0; m < 3 && ok; ++m)
    for (unsigned ell = 1; ell <= 4 && ok; ++ell)
      ok = max_digits_per_limb(ell, bounds[m], 64) == t64[m][ell - 1] &&
           max_digits_per_limb(ell, bounds[m], 32) == t32[m][ell - 1];
  report(2, ok, "digits-per-limb reference grid", "24/24 cells exact");
}

// 3. Inverse transform undoes the forward transform at every supported length.
void criterion_round_trips() {
  std::mt19937_64 rng(1003);
  bool ok = true;
  std::string detail;
  int count = 0;
  for (Word p : {kProductionP1, kProductionP2}) {
    const MontCtx c = make_ctx(p);
    std::vector<std::size_t> lengths;
    for (unsigned k = 2; k <= 14; ++k) lengths.push_back(std::size_t(1) << k);
    for (unsigned k = 1; k <= 13; ++k) lengths.push_back(std::size_t(3) << k);
    for (std::size_t n : lengths) {
      const ConvPlan plan = build_conv_plan(c, n);
      for (int rep = 0; rep < 10; ++rep) {
        const std::vector<Word> x = oracle::random_residues(rng, n, p);
        std::vector<Word> a = x;
        forward_transform(plan, a);
        inverse_transform(plan, a);
        ++count;
        if (a != x && ok) {
          ok = false;
          detail = "n=" + std::to_string(n) + " p=" + std::to_string(p);
        }
      }
    }
  }
  if (ok) detail = std::to_string(count) + " round trips, 2^2..2^14 and 3*2^1..3*2^13, exact";
  report(3, ok, "transform round trips", detail);
}

// 4. Small-length convolutions and bare kernels against the naive references.
void criterion_small_oracle() {
  std::mt19937_64 rng(1004);
  bool ok = true;
  std::string detail;
  for (Word p : {Word(97), Word(193), kProductionP1, kProductionP2}) {
    const MontCtx c = make_ctx(p);
    for (std::size_t n : {std::size_t(4), std::size_t(8), std::size_t(12),
                          std::size_t(16), std::size_t(24), std::size_t(32)}) {
      if ((p - 1) % n != 0) continue;
      const ConvPlan plan = build_conv_plan(c, n);
      for (int rep = 0; rep < 100 && ok; ++rep) {
        const std::vector<Word> x = oracle::random_residues(rng, n, p);
        const std::vector<Word> y = oracle::random_residues(rng, n, p);
        if (convolve_mod_p(plan, x, y) != oracle::naive_convolve(x, y, p)) {
          ok = false;
          detail = "convolution n=" + std::to_string(n) + " p=" + std::to_string(p);
        }
      }
      if (n % 3 == 0 || !ok) continue;
      // Bare kernels: forward = bit-reversed DFT; scaled inverse = IDFT.
      const NttPlan kern = build_plan(c, n);
      const std::vector<Word> x = oracle::random_residues(rng, n, p);
      const std::vector<Word> spec = oracle::naive_dft(x, kern.root, p);
      std::vector<Word> a = x;
      dif_forward_no_bitrev(kern, a);
      for (std::size_t k = 0; k < n && ok; ++k)
        if (a[k] != spec[oracle::bit_reverse(k, kern.log2n)]) {
          ok = false;
          detail = "dif kernel n=" + std::to_string(n);
        }
      dit_inverse_no_bitrev(kern, a);  // consumes its own bit-reversed output
      const std::vector<Word> back = oracle::naive_idft(spec, kern.root, p);
      for (std::size_t i = 0; i < n && ok; ++i)
        if (redc(c, a[i], kern.psi) != back[i] || back[i] != x[i]) {
          ok = false;
          detail = "dit kernel n=" + std::to_string(n);
        }
    }
  }
  if (ok) detail = "n in {4,8,12,16,24,32} over 4 primes, 100 pairs each, exact";
  report(4, ok, "small-N oracle equivalence", detail);
}

// 5. Rectangular transposes equal the out-of-place reference and round-trip.
void criterion_transpose() {
  std::mt19937_64 rng(1005);
  bool ok = true;
  for (std::size_t n = 1; n <= 64 && ok; ++n) {
    std::vector<Word> a(n * 2 * n), scratch(2 * n);
    for (Word& w : a) w = rng();
    const std::vector<Word> orig = a;
    std::vector<Word> expect(a.size());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < 2 * n; ++j) expect[j * n + i] = orig[i * 2 * n + j];
    transpose_n_x_2n(a.data(), n, scratch.data());
    if (a != expect) ok = false;
    transpose_2n_x_n(a.data(), n, scratch.data());
    if (a != orig) ok = false;
  }
  report(5, ok, "in-place n x 2n transposition", "n = 1..64 vs oracle, round trip exact");
}

// 6. Montgomery must beat naive division by the pinned factor at 10^8 modmuls.
void criterion_modmul_bench() {
  const std::uint64_t n = 10000000;  // 10 modmuls per iteration
  const BenchReport naive = bench_modmul(ModmulVariant::kNaive, n);
  const BenchReport mont = bench_modmul(ModmulVariant::kMontgomery, n);
  const BenchReport sol = bench_modmul(ModmulVariant::kSolinas, n);
  const double speedup = naive.seconds / mont.seconds;
  const bool ok = speedup >= kMontgomerySpeedupMin;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "naive %.2fs, montgomery %.2fs (%.2fx, need >= %.1fx), solinas %.2fs informational",
                naive.seconds, mont.seconds, speedup, kMontgomerySpeedupMin, sol.seconds);
  report(6, ok, "modular multiplication character", buf);
}

// 7. N log N scaling shape and the absolute 10^6-digit budget.
void criterion_scaling() {
  const auto strategy = AdjustStrategy::kConditionalSelect;
  std::vector<std::size_t> sizes;
  for (std::size_t d = 10000; d <= 640000; d *= 2) sizes.push_back(d);
  std::vector<double> per_mul;
  for (std::size_t d : sizes) {
    const std::uint64_t iters = d <= 100000 ? 3 : (d <= 400000 ? 2 : 1);
    per_mul.push_back(bench_mul(d, iters, strategy).seconds_per_mul);
  }
  bool ok = true;
  double worst = 0;
  for (std::size_t i = 0; i + 1 < per_mul.size(); ++i) {
    const double ratio = per_mul[i + 1] / per_mul[i];
    worst = std::max(worst, ratio);
    if (ratio >= kScalingRatioMax) ok = false;
  }
  const MulBenchReport million = bench_mul(1000000, 1, strategy);
  if (million.seconds_per_mul >= kMillionDigitBudget) ok = false;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "10^4..6.4*10^5 digits: worst doubling ratio %.2f (< %.1f), 10^6 digits %.2fs (< %.0fs)",
                worst, kScalingRatioMax, million.seconds_per_mul, kMillionDigitBudget);
  report(7, ok, "near-linear scaling", buf);
}

// 8. Primality testing vs a sieve; production primes have the stated form.
void criterion_primality() {
  const std::size_t limit = 1000000;
  std::vector<bool> composite(limit + 1, false);
  composite[0] = composite[1] = true;
  for (std::size_t i = 2; i * i <= limit; ++i)
    if (!composite[i])
      for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
  bool ok = true;
  for (std::size_t n = 0; n <= limit && ok; ++n)
    if (is_prime(n) == composite[n]) ok = false;

  const PrimePair& pair = production_primes();
  for (Word p : {pair.p1, pair.p2}) {
    if (!is_prime(p) || p >= (Word(1) << 63)) ok = false;
    const Word m = p - 1;
    if (m % (Word(3) << kProductionNMin) != 0) ok = false;            // 3*2^24 | p-1
    if (((m >> std::countr_zero(m)) / 3) % 2 == 0) ok = false;        // c odd
  }
  report(8, ok, "primality and production-prime form",
         "sieve agreement to 10^6; c odd, p < 2^63, 3*2^24 | p-1");
}

// 9. Both adjustment strategies yield byte-identical products and transforms.
void criterion_strategy_equivalence() {
  std::mt19937_64 rng(1009);
  bool ok = true;
  for (std::size_t d : {std::size_t(1), std::size_t(37), std::size_t(999),
                        std::size_t(12345), std::size_t(100000)}) {
    const std::string a = oracle::random_decimal(rng, d);
    const std::string b = oracle::random_decimal(rng, d);
    const std::string bit = mul_text(a, b, {AdjustStrategy::kBitWizardry, 0});
    const std::string sel = mul_text(a, b, {AdjustStrategy::kConditionalSelect, 0});
    if (bit != sel) ok = false;
    for (unsigned be = kMinBaseExp; be <= kMaxBaseExp && ok && d <= 1000; ++be)
      if (mul_text(a, b, {AdjustStrategy::kBitWizardry, be}) !=
          mul_text(a, b, {AdjustStrategy::kConditionalSelect, be}))
        ok = false;
  }
  for (std::size_t n : {std::size_t(256), std::size_t(768)}) {
    const MontCtx cb = make_ctx(kProductionP2, AdjustStrategy::kBitWizardry);
    const MontCtx cs = make_ctx(kProductionP2, AdjustStrategy::kConditionalSelect);
    const ConvPlan pb = build_conv_plan(cb, n, 64), ps = build_conv_plan(cs, n, 64);
    const std::vector<Word> x = oracle::random_residues(rng, n, kProductionP2);
    const std::vector<Word> y = oracle::random_residues(rng, n, kProductionP2);
    if (convolve_mod_p(pb, x, y) != convolve_mod_p(ps, x, y)) ok = false;
  }
  report(9, ok, "strategy equivalence", "products and convolutions byte-identical");
}

std::size_t mem_available_bytes() {
  std::ifstream f("/proc/meminfo");
  std::string key, unit;
  std::size_t kb = 0;
  while (f >> key >> kb >> unit)
    if (key == "MemAvailable:") return kb * 1024;
  return std::size_t(4) << 30;
}

// (10^n - 1)^2 = 10^2n - 2*10^n + 1 without materializing the reference string.
bool matches_all_nines_square(const std::string& z, std::size_t n) {
  if (z.size() != 2 * n) return false;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (z[i] != '9' || z[n + i] != '0') return false;
  return z[n - 1] == '8' && z[2 * n - 1] == '1';
}

// 10. All-nines inputs at the largest size each base supports: the carry-bound
// assertions inside recover_digits must stay quiet and the closed-form product
// must come back exactly. The per-base ceiling is the smaller of the
// coefficient-safety cap and half the largest transform both primes support;
// on small machines the run is additionally capped by available memory.
void criterion_carry_bounds() {
  const PrimePair& pair = production_primes();
  const u128 modulus = u128(pair.p1) * pair.p2;
  const std::size_t capacity = smallest_supported_length(std::size_t(3) << 24, pair) / 2;
  // Peak footprint is ~140 bytes per operand limb (transforms, CRT pairs,
  // digit strings); leave headroom for the rest of the process.
  const std::size_t avail = mem_available_bytes();
  const std::size_t headroom = std::size_t(768) << 20;
  const std::size_t mem_limbs =
      avail > 2 * headroom ? (avail - headroom) / 140 : std::size_t(1) << 20;
  bool ok = true;
  std::string detail;
  for (unsigned be = kMaxBaseExp; be >= kMinBaseExp && ok; --be) {
    const Word top = pow10(be) - 1;
    const std::size_t safety = std::size_t((modulus - 1) / (u128(top) * top));
    const std::size_t limbs = std::min({safety, capacity, mem_limbs});
    const std::size_t digits = limbs * be;
    try {
      const std::string nines(digits, '9');
      const DecimalNumber x = DecimalNumber::parse(nines);
      const DecimalNumber z = multiply(x, x, {AdjustStrategy::kConditionalSelect, be});
      if (!matches_all_nines_square(z.text(), digits)) {
        ok = false;
        detail = "wrong product at base 10^" + std::to_string(be);
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = "base 10^" + std::to_string(be) + ": " + e.what();
    }
    if (ok)
      detail += (detail.empty() ? "" : ", ") + std::to_string(be) + ":" +
                std::to_string(limbs) + " limbs";
  }
  report(10, ok, "carry bounds at maximal all-nines inputs", detail);
}

}  // namespace

int main() {
  criterion_exactness();
  criterion_lambda_table();
  criterion_round_trips();
  criterion_small_oracle();
  criterion_transpose();
  criterion_modmul_bench();
  criterion_scaling();
  criterion_primality();
  criterion_strategy_equivalence();
  criterion_carry_bounds();
  std::printf("acceptance_failures=%d\n", failures);
  return failures == 0 ? 0 : 1;
}
