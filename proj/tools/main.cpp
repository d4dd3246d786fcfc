#include <bit>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "decmul/bench.hpp"
#include "decmul/decimal.hpp"
#include "decmul/primes.hpp"
#include "decmul/selftest.hpp"

namespace {

using namespace decmul;

std::string read_operand_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  if (!s.empty() && s.back() == '\n') s.pop_back();  // optional trailing newline
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

AdjustStrategy strategy_from_name(const std::string& name) {
  return name == "bitwise" ? AdjustStrategy::kBitWizardry : AdjustStrategy::kConditionalSelect;
}

int cmd_mul(const std::vector<std::string>& operands, bool from_files, AdjustStrategy strategy) {
  std::string a = operands[0], b = operands[1];
  if (from_files) {
    a = read_operand_file(a);
    b = read_operand_file(b);
  }
  const DecimalNumber x = DecimalNumber::parse(a);
  const DecimalNumber y = DecimalNumber::parse(b);
  const DecimalNumber z = multiply(x, y, MultiplyOptions{strategy, 0});
  std::fputs(z.text().c_str(), stdout);
  std::fputc('\n', stdout);
  return 0;
}

int cmd_bench_modmul(const std::string& variant, std::uint64_t n) {
  ModmulVariant v;
  if (variant == "naive")
    v = ModmulVariant::kNaive;
  else if (variant == "montgomery")
    v = ModmulVariant::kMontgomery;
  else if (variant == "solinas")
    v = ModmulVariant::kSolinas;
  else
    throw std::invalid_argument("unknown variant: " + variant);
  const BenchReport r = bench_modmul(v, n);
  std::printf("bench=modmul variant=%s n=%" PRIu64 " total_modmuls=%" PRIu64
              " seconds=%.6f ns_per_modmul=%.4f checksum=%" PRIu64 "\n",
              r.variant.c_str(), r.iterations, 10 * r.iterations, r.seconds, r.ns_per_modmul,
              r.checksum);
  std::printf("# %s: %" PRIu64 " x 10 chained modmuls in %.3f s (%.3f ns each)\n",
              r.variant.c_str(), r.iterations, r.seconds, r.ns_per_modmul);
  return 0;
}

int cmd_bench_mul(const std::vector<std::uint64_t>& digit_sizes, std::uint64_t iters,
                  AdjustStrategy strategy) {
  for (std::uint64_t digits : digit_sizes) {
    const std::uint64_t k = iters > 0 ? iters : auto_mul_iterations(digits);
    const MulBenchReport r = bench_mul(digits, k, strategy);
    std::printf("bench=mul digits=%zu iters=%" PRIu64 " base_exp=%u length=%zu seconds=%.6f"
                " seconds_per_mul=%.9f product_digits=%zu\n",
                r.digits, r.iterations, r.base_exp, r.length, r.seconds, r.seconds_per_mul,
                r.product_digits);
  }
  return 0;
}

int cmd_primes(unsigned n_min, unsigned count) {
  const std::vector<Word> primes = find_primes(64, n_min, count);
  for (Word p : primes) {
    const Word t = p - 1;
    const unsigned n = unsigned(std::countr_zero(t));
    const Word c = (t >> n) / 3;
    std::printf("prime=%" PRIu64 " c=%" PRIu64 " n=%u form=c*3*2^n+1 verified=%d\n", p, c, n,
                int(is_prime(p) && c % 2 == 1 && (t >> n) % 3 == 0));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact decimal multiplication via dual-prime 64-bit transforms"};
  app.require_subcommand(1);
  std::string strategy_name = "cselect";
  app.add_option("--adjust-strategy", strategy_name, "Canonicalization codegen flavor")
      ->check(CLI::IsMember({"bitwise", "cselect"}));

  // mul
  auto* mul = app.add_subcommand("mul", "Multiply two non-negative decimal integers");
  std::vector<std::string> operands;
  bool from_files = false;
  mul->add_option("operands", operands, "Two decimal strings (or paths with --file)")
      ->expected(2);
  mul->add_flag("--file", from_files, "Treat operands as file paths (ASCII digits, optional trailing newline)");

  // bench
  auto* bench = app.add_subcommand("bench", "Micro- and scaling benchmarks");
  bench->require_subcommand(1);
  auto* bmod = bench->add_subcommand("modmul", "Chained modular-multiplication benchmark");
  std::string variant = "montgomery";
  std::uint64_t bench_n = 10000000ull;
  bmod->add_option("--variant", variant, "naive | montgomery | solinas")
      ->check(CLI::IsMember({"naive", "montgomery", "solinas"}));
  bmod->add_option("--n", bench_n, "Loop iterations (10 modmuls each)")
      ->check(CLI::PositiveNumber);
  auto* bmul = bench->add_subcommand("mul", "Multiplication scaling benchmark");
  std::vector<std::uint64_t> digit_sizes;
  std::uint64_t mul_iters = 0;
  bmul->add_option("--digits", digit_sizes, "Operand size(s) in digits; repeatable for a sweep")
      ->required();
  bmul->add_option("--iters", mul_iters, "Iterations per size (default: floor(8e7/digits))");

  // primes
  auto* primes = app.add_subcommand("primes", "Search the working prime moduli");
  unsigned n_min = kProductionNMin;
  unsigned prime_count = 2;
  primes->add_option("--nmin", n_min, "Minimum power-of-two exponent in c*3*2^n+1");
  primes->add_option("--count", prime_count, "How many of the largest matches to print");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Fast internal consistency sweep");
  bool inject_fault = false;
  selftest->add_flag("--inject-fault", inject_fault, "Corrupt a root table to prove detection")
      ->group("");  // hidden

  CLI11_PARSE(app, argc, argv);

  try {
    const AdjustStrategy strategy = strategy_from_name(strategy_name);
    if (mul->parsed()) return cmd_mul(operands, from_files, strategy);
    if (bmod->parsed()) return cmd_bench_modmul(variant, bench_n);
    if (bmul->parsed()) return cmd_bench_mul(digit_sizes, mul_iters, strategy);
    if (primes->parsed()) return cmd_primes(n_min, prime_count);
    if (selftest->parsed()) return run_selftest(strategy, inject_fault) == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
