#pragma once

#include <cstdint>
#include <string>

#include "decmul/words.hpp"

namespace decmul {

enum class ModmulVariant { kNaive, kMontgomery, kSolinas };

struct BenchReport {
  std::string variant;
  std::uint64_t iterations = 0;  // n: total modular multiplications = 10*n
  double seconds = 0.0;
  double ns_per_modmul = 0.0;
  Word checksum = 0;  // folded result; keeps the chain observable
};

// n iterations of a loop of 10 unrolled modular multiplications, each feeding
// the next through the accumulator so the chain cannot overlap.
BenchReport bench_modmul(ModmulVariant variant, std::uint64_t n);

struct MulBenchReport {
  std::size_t digits = 0;
  std::uint64_t iterations = 0;
  unsigned base_exp = 0;    // limb base selected for this size
  std::size_t length = 0;   // transform length selected
  double seconds = 0.0;     // total for all iterations
  double seconds_per_mul = 0.0;
  std::size_t product_digits = 0;
};

// floor(8*10^7 / digits), at least 1.
std::uint64_t auto_mul_iterations(std::size_t digits);

// Times `iterations` products of two fixed random `digits`-digit operands.
MulBenchReport bench_mul(std::size_t digits, std::uint64_t iterations,
                         AdjustStrategy strategy, std::uint64_t seed = 42);

}  // namespace decmul
