#pragma once

#include <memory>
#include <span>
#include <vector>

#include "decmul/ntt.hpp"

namespace decmul {

enum class ConvShape { kDirect, kSixStep, kFourStepThreeRows };

// Largest element count still transformed by the plain in-place kernels;
// beyond it a 2^k transform is reorganized cache-friendly as six-step.
inline constexpr std::size_t kDefaultSixStepThreshold = std::size_t(1) << 15;

// Transform plan for one prime and one total length n (2^k or 3*2^k).
//
// Output order of forward_transform (and the order inverse_transform and
// pointwise_product consume), as storage index -> spectrum index:
//   kDirect:            k            -> rev_log2n(k)
//   kSixStep:           i*n2 + j     -> i + n1 * rev_log2n2(j)   (matrix n1 x n2)
//   kFourStepThreeRows: r*(n/3) + j  -> r + 3 * row_order(j)     (matrix 3 x n/3)
// where row_order is the row plan's own order. The order never leaves this
// module: convolve_mod_p returns natural-order results.
struct ConvPlan {
  MontCtx ctx;
  std::size_t n = 0;
  ConvShape shape = ConvShape::kDirect;
  Word root = 0;        // plain primitive n-th root all sub-kernels derive from
  Word psi = 0;         // Montgomery n^{-1}: folding it makes the inverse exact
  Word psi_prime = 0;   // R^2 * n^{-1}: folding it additionally repays the
                        // pointwise REDC's R^{-1} on the convolution path

  // kDirect
  NttPlan direct;

  // kSixStep: n = n1 * n2, n1 = 2^floor(k/2) <= n2 = 2^ceil(k/2) in {n1, 2*n1}
  std::size_t n1 = 0, n2 = 0;
  NttPlan col_kernel;   // length n1, root^(n2)
  NttPlan row_kernel;   // length n2, root^(n1)
  Word xi = 0, xi_inv = 0;  // Montgomery root^{+-1}: twiddle accumulator seeds

  // kFourStepThreeRows: n = 3*c; rows use the power-of-two machinery recursively
  std::unique_ptr<ConvPlan> row_plan;  // length c, root^3
  Word gamma = 0, gamma2 = 0;          // Montgomery root, root^2
  Word lam = 0, lam2 = 0;              // Montgomery root^(n/3), root^(2n/3)
  Word gamma_inv = 0, gamma2_inv = 0, lam_inv = 0, lam2_inv = 0;
};

// n = 2^k or 3*2^k, n | p-1. Root chosen deterministically for the total length;
// throws std::invalid_argument otherwise.
ConvPlan build_conv_plan(const MontCtx& ctx, std::size_t n,
                         std::size_t six_step_threshold = kDefaultSixStepThreshold);
ConvPlan build_conv_plan_with_root(const MontCtx& ctx, std::size_t n, Word root,
                                   std::size_t six_step_threshold = kDefaultSixStepThreshold);

// In place, a.size() == plan.n, canonical residues. Output in the plan's order.
void forward_transform(const ConvPlan& plan, std::span<Word> a);

// Exact inverse: inverse_transform(forward_transform(x)) == x (folds psi).
void inverse_transform(const ConvPlan& plan, std::span<Word> a);

// a[i] <- redc(a[i], b[i]); aliasing a == b is the squaring path.
void pointwise_product(const ConvPlan& plan, std::span<Word> a, std::span<const Word> b);

// Exact cyclic convolution mod p of plain residues (inputs shorter than n are
// zero-padded; x and y may alias for squaring). Folds psi_prime so the
// pointwise R^{-1} cancels; result is natural-order canonical residues.
std::vector<Word> convolve_mod_p(const ConvPlan& plan, std::span<const Word> x,
                                 std::span<const Word> y);

// Process-wide plan cache: one synchronized construction per (prime, n,
// strategy) at default threshold, read-only sharing afterwards.
std::shared_ptr<const ConvPlan> conv_plan_for(Word prime, std::size_t n, AdjustStrategy strategy);

}  // namespace decmul
