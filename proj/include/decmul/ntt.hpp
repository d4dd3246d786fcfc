#pragma once

#include <span>
#include <vector>

#include "decmul/montgomery.hpp"

namespace decmul {

// Power-of-two NTT kernel: root-power tables in Montgomery form, stored flat.
// With L = log2(n), stage s in [1, L] owns the slice starting at 2^(s-1) - 1:
//   fwd[2^(s-1) - 1 + j] = Montgomery(root^(j * 2^(L-s))),  j < 2^(s-1)
// so a stage with butterfly span m = 2^s reads factors at fwd[delta + j],
// delta = m/2 - 1. inv has the same layout for root^{-1}.
//
// Because the table entries are Montgomery forms while the data stays plain,
// every butterfly multiply redc(factor, v) yields plain root^k * v: transforms
// over plain residues agree exactly with plain-arithmetic DFTs and no
// to/from-Montgomery conversion of the data is ever needed.
struct NttPlan {
  MontCtx ctx;
  std::size_t n = 1;  // power of two
  unsigned log2n = 0;
  Word root = 0;      // plain primitive n-th root the tables were built from
  std::vector<Word> fwd;  // length n-1
  std::vector<Word> inv;  // length n-1
  Word psi = 0;           // Montgomery form of n^{-1}:       R   * n^{-1} mod p
  Word psi_prime = 0;     // psi with one extra R folded in:  R^2 * n^{-1} mod p
};

// Chooses the root deterministically via primitive_root_of_unity.
NttPlan build_plan(const MontCtx& ctx, std::size_t n);
// root is plain (non-Montgomery); validated: root^n = 1, root^(n/2) != 1.
NttPlan build_plan_with_root(const MontCtx& ctx, std::size_t n, Word root);

// Swap a[k] and a[rev(k)] for every k (involution). a.size() must be a power of two.
void bit_rev_permute(std::span<Word> a);

// Gentleman-Sande decimation in frequency: natural order in, bit-reversed
// order out, the final permutation omitted. In place, canonical residues.
// The only unadjusted intermediate in the artifact is the (u - v + p) operand
// fed to redc here; mont_reduce re-canonicalizes it.
void dif_forward_no_bitrev(const NttPlan& plan, std::span<Word> a);

// Cooley-Tukey decimation in time consuming bit-reversed input, producing the
// *unscaled* inverse (n times the IDFT) in natural order; the initial
// permutation omitted. Pairing DIF forward with DIT inverse cancels both.
void dit_inverse_no_bitrev(const NttPlan& plan, std::span<Word> a);

// a[i] <- redc(a[i], plan.psi_prime): multiplies by n^{-1} and by the extra R
// that repays the R^{-1} a REDC-computed pointwise product carries. Composed
// after dit_inverse_no_bitrev on the convolution path.
void scale_by_psi_prime(const NttPlan& plan, std::span<Word> a);

}  // namespace decmul
