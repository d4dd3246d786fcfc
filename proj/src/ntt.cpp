#include "decmul/ntt.hpp"

#include <bit>
#include <stdexcept>

#include "decmul/primes.hpp"

namespace decmul {

namespace {

// Flat table of stage slices for the given plain root (Montgomery entries).
std::vector<Word> build_table(const MontCtx& c, std::size_t n, unsigned log2n, Word root) {
  std::vector<Word> t(n - 1);
  if (n == 1) return t;
  const std::size_t half = n / 2;
  Word* top = t.data() + (half - 1);  // stage L slice: root^0 .. root^(n/2-1)
  Word rhat = to_mont(c, root);
  top[0] = c.r_mod_p;
  for (std::size_t i = 1; i < half; ++i) top[i] = redc(c, top[i - 1], rhat);
  for (unsigned s = log2n - 1; s >= 1; --s) {
    Word* slice = t.data() + ((std::size_t(1) << (s - 1)) - 1);
    for (std::size_t i = 0; i < (std::size_t(1) << (s - 1)); ++i)
      slice[i] = top[i << (log2n - s)];
  }
  return t;
}

template <AdjustStrategy S>
void dif_impl(const NttPlan& pl, Word* a) {
  const Word p = pl.ctx.p, pp = pl.ctx.p_prime;
  const Word* table = pl.fwd.data();
  for (std::size_t m = pl.n; m >= 2; m >>= 1) {
    const std::size_t h = m >> 1;
    const Word* tb = table + (h - 1);
    for (std::size_t k = 0; k < pl.n; k += m) {
      Word* x = a + k;
      Word* y = x + h;
      Word u = x[0], v = y[0];  // j = 0 peeled: factor is 1
      x[0] = mod_add<S>(u, v, p);
      y[0] = mod_sub<S>(u, v, p);
      for (std::size_t j = 1; j < h; ++j) {
        u = x[j];
        v = y[j];
        x[j] = mod_add<S>(u, v, p);
        y[j] = mont_reduce<S>(p, pp, u128(u - v + p) * tb[j]);  // u-v+p in [1, 2p)
      }
    }
  }
}

template <AdjustStrategy S>
void dit_impl(const NttPlan& pl, Word* a) {
  const Word p = pl.ctx.p, pp = pl.ctx.p_prime;
  const Word* table = pl.inv.data();
  for (std::size_t m = 2; m <= pl.n; m <<= 1) {
    const std::size_t h = m >> 1;
    const Word* tb = table + (h - 1);
    for (std::size_t k = 0; k < pl.n; k += m) {
      Word* x = a + k;
      Word* y = x + h;
      Word u = x[0], v = y[0];  // j = 0 peeled: factor is 1
      x[0] = mod_add<S>(u, v, p);
      y[0] = mod_sub<S>(u, v, p);
      for (std::size_t j = 1; j < h; ++j) {
        u = x[j];
        Word w = mont_reduce<S>(p, pp, u128(tb[j]) * y[j]);
        x[j] = mod_add<S>(u, w, p);
        y[j] = mod_sub<S>(u, w, p);
      }
    }
  }
}

template <AdjustStrategy S>
void scale_impl(const NttPlan& pl, Word* a, Word factor) {
  const Word p = pl.ctx.p, pp = pl.ctx.p_prime;
  for (std::size_t i = 0; i < pl.n; ++i) a[i] = redc<S>(p, pp, a[i], factor);
}

}  // namespace

NttPlan build_plan(const MontCtx& ctx, std::size_t n) {
  Word root = n == 1 ? 1 : from_mont(ctx, primitive_root_of_unity(ctx, n));
  return build_plan_with_root(ctx, n, root);
}

NttPlan build_plan_with_root(const MontCtx& ctx, std::size_t n, Word root) {
  if (n == 0 || !std::has_single_bit(n)) throw std::invalid_argument("build_plan: n must be a power of two");
  if (n > 1 && (ctx.p - 1) % Word(n) != 0) throw std::invalid_argument("build_plan: n does not divide p-1");

  NttPlan pl;
  pl.ctx = ctx;
  pl.n = n;
  pl.log2n = unsigned(std::countr_zero(n));
  pl.root = root % ctx.p;

  Word rhat = to_mont(ctx, pl.root);
  if (mont_pow(ctx, rhat, n) != ctx.r_mod_p)
    throw std::invalid_argument("build_plan: root^n != 1");
  if (n > 1 && mont_pow(ctx, rhat, n / 2) == ctx.r_mod_p)
    throw std::invalid_argument("build_plan: root is not primitive");

  Word root_inv = from_mont(ctx, mont_pow(ctx, rhat, n - 1));  // root^(n-1) = root^{-1}
  pl.fwd = build_table(ctx, n, pl.log2n, pl.root);
  pl.inv = build_table(ctx, n, pl.log2n, root_inv);

  // n^{-1} mod p by Fermat; psi comes out directly in Montgomery form.
  pl.psi = mont_pow(ctx, to_mont(ctx, Word(n) % ctx.p), ctx.p - 2);
  pl.psi_prime = redc(ctx, pl.psi, ctx.r2_mod_p);
  return pl;
}

void bit_rev_permute(std::span<Word> a) {
  const std::size_t n = a.size();
  assert(std::has_single_bit(n));
  for (std::size_t i = 0, j = 0; i < n; ++i) {
    if (i < j) std::swap(a[i], a[j]);
    std::size_t mask = n >> 1;
    while (j & mask) {  // reversed-order increment: clear low reversed bits, set the next
      j ^= mask;
      mask >>= 1;
    }
    j |= mask;
  }
}

void dif_forward_no_bitrev(const NttPlan& plan, std::span<Word> a) {
  assert(a.size() == plan.n);
  if (plan.ctx.strategy == AdjustStrategy::kBitWizardry)
    dif_impl<AdjustStrategy::kBitWizardry>(plan, a.data());
  else
    dif_impl<AdjustStrategy::kConditionalSelect>(plan, a.data());
}

void dit_inverse_no_bitrev(const NttPlan& plan, std::span<Word> a) {
  assert(a.size() == plan.n);
  if (plan.ctx.strategy == AdjustStrategy::kBitWizardry)
    dit_impl<AdjustStrategy::kBitWizardry>(plan, a.data());
  else
    dit_impl<AdjustStrategy::kConditionalSelect>(plan, a.data());
}

void scale_by_psi_prime(const NttPlan& plan, std::span<Word> a) {
  if (plan.ctx.strategy == AdjustStrategy::kBitWizardry)
    scale_impl<AdjustStrategy::kBitWizardry>(plan, a.data(), plan.psi_prime);
  else
    scale_impl<AdjustStrategy::kConditionalSelect>(plan, a.data(), plan.psi_prime);
}

}  // namespace decmul
