#include "decmul/conv.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>

#include "decmul/primes.hpp"
#include "decmul/transpose.hpp"

namespace decmul {

namespace {

Word pow_plain(const MontCtx& c, Word base, Word e) {
  return from_mont(c, mont_pow(c, to_mont(c, base), e));
}

void forward_in_place(const ConvPlan& pl, Word* a);
void inverse_in_place(const ConvPlan& pl, Word* a, Word phi);

template <AdjustStrategy S>
void scale_rows(const MontCtx& c, Word* a, std::size_t n, Word factor) {
  for (std::size_t i = 0; i < n; ++i) a[i] = redc<S>(c.p, c.p_prime, a[i], factor);
}

// ---- six-step: n = n1 * n2 viewed as an n1 x n2 row-major matrix ----

void six_transpose(const ConvPlan& pl, Word* a, Word* scratch, bool to_wide) {
  // to_wide: [n1 x n2] -> [n2 x n1]; otherwise the reverse. Same op when square.
  if (pl.n1 == pl.n2)
    transpose_square_sub(a, pl.n1, pl.n1);
  else if (to_wide)
    transpose_n_x_2n(a, pl.n1, scratch);
  else
    transpose_2n_x_n(a, pl.n1, scratch);
}

// Multiply element (i, j) by root^(i*j); factors on row 0 and column 0 equal 1.
template <AdjustStrategy S>
void six_twiddle_forward(const ConvPlan& pl, Word* a) {
  const Word p = pl.ctx.p, pp = pl.ctx.p_prime;
  Word row_seed = pl.xi;  // Montgomery root^i, maintained incrementally
  for (std::size_t i = 1; i < pl.n1; ++i) {
    Word* row = a + i * pl.n2;
    Word f = row_seed;  // root^(i*j) for j = 1
    for (std::size_t j = 1; j < pl.n2; ++j) {
      row[j] = redc<S>(p, pp, row[j], f);
      f = redc<S>(p, pp, f, row_seed);
    }
    row_seed = redc<S>(p, pp, row_seed, pl.xi);
  }
}

// Multiply element (i, j) by phi * root^(-i*j); applied to every element.
template <AdjustStrategy S>
void six_twiddle_inverse(const ConvPlan& pl, Word* a, Word phi) {
  const Word p = pl.ctx.p, pp = pl.ctx.p_prime;
  Word row_seed = pl.ctx.r_mod_p;  // root^(-i), i = 0
  for (std::size_t i = 0; i < pl.n1; ++i) {
    Word* row = a + i * pl.n2;
    Word f = phi;
    for (std::size_t j = 0; j < pl.n2; ++j) {
      row[j] = redc<S>(p, pp, row[j], f);
      f = redc<S>(p, pp, f, row_seed);
    }
    row_seed = redc<S>(p, pp, row_seed, pl.xi_inv);
  }
}

void six_step_forward(const ConvPlan& pl, Word* a) {
  std::vector<Word> scratch(pl.n1 != pl.n2 ? 2 * pl.n1 : 0);
  six_transpose(pl, a, scratch.data(), true);
  for (std::size_t r = 0; r < pl.n2; ++r) {  // full DFTs: natural-order rows
    std::span<Word> row(a + r * pl.n1, pl.n1);
    dif_forward_no_bitrev(pl.col_kernel, row);
    bit_rev_permute(row);
  }
  six_transpose(pl, a, scratch.data(), false);
  if (pl.ctx.strategy == AdjustStrategy::kBitWizardry)
    six_twiddle_forward<AdjustStrategy::kBitWizardry>(pl, a);
  else
    six_twiddle_forward<AdjustStrategy::kConditionalSelect>(pl, a);
  for (std::size_t r = 0; r < pl.n1; ++r)  // bit-reversed row spectra; inverse consumes as-is
    dif_forward_no_bitrev(pl.row_kernel, std::span<Word>(a + r * pl.n2, pl.n2));
}

void six_step_inverse(const ConvPlan& pl, Word* a, Word phi) {
  std::vector<Word> scratch(pl.n1 != pl.n2 ? 2 * pl.n1 : 0);
  for (std::size_t r = 0; r < pl.n1; ++r)
    dit_inverse_no_bitrev(pl.row_kernel, std::span<Word>(a + r * pl.n2, pl.n2));
  if (pl.ctx.strategy == AdjustStrategy::kBitWizardry)
    six_twiddle_inverse<AdjustStrategy::kBitWizardry>(pl, a, phi);
  else
    six_twiddle_inverse<AdjustStrategy::kConditionalSelect>(pl, a, phi);
  six_transpose(pl, a, scratch.data(), true);
  for (std::size_t r = 0; r < pl.n2; ++r) {  // natural-in natural-out unscaled inverses
    std::span<Word> row(a + r * pl.n1, pl.n1);
    bit_rev_permute(row);
    dit_inverse_no_bitrev(pl.col_kernel, row);
  }
  six_transpose(pl, a, scratch.data(), false);
}

// ---- three-row four-step: n = 3*c viewed as a 3 x c row-major matrix ----

// Length-3 column DFT merged with the root^(i*j) twiddle: 8 multiplies per column.
template <AdjustStrategy S>
void three_row_forward_columns(const ConvPlan& pl, Word* a) {
  const Word p = pl.ctx.p, pp = pl.ctx.p_prime;
  const std::size_t c = pl.n / 3;
  Word *r0 = a, *r1 = a + c, *r2 = a + 2 * c;
  Word g1 = pl.ctx.r_mod_p, g2 = pl.ctx.r_mod_p;  // root^j, root^(2j)
  for (std::size_t j = 0; j < c; ++j) {
    const Word x = r0[j], y = r1[j], z = r2[j];
    const Word ya = redc<S>(p, pp, y, pl.lam), za = redc<S>(p, pp, z, pl.lam2);
    const Word yb = redc<S>(p, pp, y, pl.lam2), zb = redc<S>(p, pp, z, pl.lam);
    r0[j] = mod_add<S>(mod_add<S>(x, y, p), z, p);
    r1[j] = redc<S>(p, pp, mod_add<S>(mod_add<S>(x, ya, p), za, p), g1);
    r2[j] = redc<S>(p, pp, mod_add<S>(mod_add<S>(x, yb, p), zb, p), g2);
    g1 = redc<S>(p, pp, g1, pl.gamma);
    g2 = redc<S>(p, pp, g2, pl.gamma2);
  }
}

// Un-twiddle merged with the length-3 column inverse, phi folded into the
// twiddle factors: 9 multiplies per column.
template <AdjustStrategy S>
void three_row_inverse_columns(const ConvPlan& pl, Word* a, Word phi) {
  const Word p = pl.ctx.p, pp = pl.ctx.p_prime;
  const std::size_t c = pl.n / 3;
  Word *r0 = a, *r1 = a + c, *r2 = a + 2 * c;
  Word f1 = phi, f2 = phi;  // phi * root^(-j), phi * root^(-2j)
  for (std::size_t j = 0; j < c; ++j) {
    const Word x = redc<S>(p, pp, r0[j], phi);
    const Word y = redc<S>(p, pp, r1[j], f1);
    const Word z = redc<S>(p, pp, r2[j], f2);
    const Word ya = redc<S>(p, pp, y, pl.lam_inv), za = redc<S>(p, pp, z, pl.lam2_inv);
    const Word yb = redc<S>(p, pp, y, pl.lam2_inv), zb = redc<S>(p, pp, z, pl.lam_inv);
    r0[j] = mod_add<S>(mod_add<S>(x, y, p), z, p);
    r1[j] = mod_add<S>(mod_add<S>(x, ya, p), za, p);
    r2[j] = mod_add<S>(mod_add<S>(x, yb, p), zb, p);
    f1 = redc<S>(p, pp, f1, pl.gamma_inv);
    f2 = redc<S>(p, pp, f2, pl.gamma2_inv);
  }
}

void three_row_forward(const ConvPlan& pl, Word* a) {
  if (pl.ctx.strategy == AdjustStrategy::kBitWizardry)
    three_row_forward_columns<AdjustStrategy::kBitWizardry>(pl, a);
  else
    three_row_forward_columns<AdjustStrategy::kConditionalSelect>(pl, a);
  const std::size_t c = pl.n / 3;
  for (std::size_t r = 0; r < 3; ++r) forward_in_place(*pl.row_plan, a + r * c);
}

void three_row_inverse(const ConvPlan& pl, Word* a, Word phi) {
  const std::size_t c = pl.n / 3;
  for (std::size_t r = 0; r < 3; ++r)
    inverse_in_place(*pl.row_plan, a + r * c, pl.ctx.r_mod_p);  // unscaled row inverses
  if (pl.ctx.strategy == AdjustStrategy::kBitWizardry)
    three_row_inverse_columns<AdjustStrategy::kBitWizardry>(pl, a, phi);
  else
    three_row_inverse_columns<AdjustStrategy::kConditionalSelect>(pl, a, phi);
}

void forward_in_place(const ConvPlan& pl, Word* a) {
  switch (pl.shape) {
    case ConvShape::kDirect:
      dif_forward_no_bitrev(pl.direct, std::span<Word>(a, pl.n));
      break;
    case ConvShape::kSixStep:
      six_step_forward(pl, a);
      break;
    case ConvShape::kFourStepThreeRows:
      three_row_forward(pl, a);
      break;
  }
}

// phi (Montgomery form) is folded once per element into the inverse; the net
// plain factor applied is from_mont(phi). phi == Montgomery 1 is skipped where
// it would be a standalone loop.
void inverse_in_place(const ConvPlan& pl, Word* a, Word phi) {
  switch (pl.shape) {
    case ConvShape::kDirect:
      dit_inverse_no_bitrev(pl.direct, std::span<Word>(a, pl.n));
      if (phi != pl.ctx.r_mod_p) {
        if (pl.ctx.strategy == AdjustStrategy::kBitWizardry)
          scale_rows<AdjustStrategy::kBitWizardry>(pl.ctx, a, pl.n, phi);
        else
          scale_rows<AdjustStrategy::kConditionalSelect>(pl.ctx, a, pl.n, phi);
      }
      break;
    case ConvShape::kSixStep:
      six_step_inverse(pl, a, phi);
      break;
    case ConvShape::kFourStepThreeRows:
      three_row_inverse(pl, a, phi);
      break;
  }
}

template <AdjustStrategy S>
void pointwise_impl(const MontCtx& c, Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] = redc<S>(c.p, c.p_prime, a[i], b[i]);
}

}  // namespace

ConvPlan build_conv_plan(const MontCtx& ctx, std::size_t n, std::size_t six_step_threshold) {
  Word root = n == 1 ? 1 : from_mont(ctx, primitive_root_of_unity(ctx, n));
  return build_conv_plan_with_root(ctx, n, root, six_step_threshold);
}

ConvPlan build_conv_plan_with_root(const MontCtx& ctx, std::size_t n, Word root,
                                   std::size_t six_step_threshold) {
  const bool pow2 = n > 0 && std::has_single_bit(n);
  const bool three_rows = n % 3 == 0 && std::has_single_bit(n / 3);
  if (!pow2 && !three_rows)
    throw std::invalid_argument("build_conv_plan: length must be 2^k or 3*2^k");
  if (n > 1 && (ctx.p - 1) % Word(n) != 0)
    throw std::invalid_argument("build_conv_plan: length does not divide p-1");

  ConvPlan pl;
  pl.ctx = ctx;
  pl.n = n;
  pl.root = root % ctx.p;

  const Word one = ctx.r_mod_p;
  const Word rhat = to_mont(ctx, pl.root);
  if (mont_pow(ctx, rhat, n) != one)
    throw std::invalid_argument("build_conv_plan: root^n != 1");
  if (n % 2 == 0 && mont_pow(ctx, rhat, n / 2) == one)
    throw std::invalid_argument("build_conv_plan: root is not primitive");
  if (n % 3 == 0 && mont_pow(ctx, rhat, n / 3) == one)
    throw std::invalid_argument("build_conv_plan: root is not primitive");

  pl.psi = mont_pow(ctx, to_mont(ctx, Word(n) % ctx.p), ctx.p - 2);
  pl.psi_prime = redc(ctx, pl.psi, ctx.r2_mod_p);

  if (three_rows) {
    pl.shape = ConvShape::kFourStepThreeRows;
    const std::size_t c = n / 3;
    pl.row_plan = std::make_unique<ConvPlan>(
        build_conv_plan_with_root(ctx, c, pow_plain(ctx, pl.root, 3), six_step_threshold));
    pl.gamma = rhat;
    pl.gamma2 = redc(ctx, rhat, rhat);
    pl.lam = mont_pow(ctx, rhat, Word(c));
    pl.lam2 = redc(ctx, pl.lam, pl.lam);
    const Word rinv = mont_pow(ctx, rhat, Word(n) - 1);
    pl.gamma_inv = rinv;
    pl.gamma2_inv = redc(ctx, rinv, rinv);
    pl.lam_inv = mont_pow(ctx, rinv, Word(c));
    pl.lam2_inv = redc(ctx, pl.lam_inv, pl.lam_inv);
  } else if (n <= six_step_threshold) {
    pl.shape = ConvShape::kDirect;
    pl.direct = build_plan_with_root(ctx, n, pl.root);
  } else {
    pl.shape = ConvShape::kSixStep;
    const unsigned k = unsigned(std::countr_zero(n));
    pl.n1 = std::size_t(1) << (k / 2);
    pl.n2 = n / pl.n1;
    pl.col_kernel = build_plan_with_root(ctx, pl.n1, pow_plain(ctx, pl.root, Word(pl.n2)));
    pl.row_kernel = build_plan_with_root(ctx, pl.n2, pow_plain(ctx, pl.root, Word(pl.n1)));
    pl.xi = rhat;
    pl.xi_inv = mont_pow(ctx, rhat, Word(n) - 1);
  }
  return pl;
}

void forward_transform(const ConvPlan& plan, std::span<Word> a) {
  if (a.size() != plan.n) throw std::invalid_argument("forward_transform: size mismatch");
  forward_in_place(plan, a.data());
}

void inverse_transform(const ConvPlan& plan, std::span<Word> a) {
  if (a.size() != plan.n) throw std::invalid_argument("inverse_transform: size mismatch");
  inverse_in_place(plan, a.data(), plan.psi);
}

void pointwise_product(const ConvPlan& plan, std::span<Word> a, std::span<const Word> b) {
  if (a.size() != plan.n || b.size() != plan.n)
    throw std::invalid_argument("pointwise_product: size mismatch");
  if (plan.ctx.strategy == AdjustStrategy::kBitWizardry)
    pointwise_impl<AdjustStrategy::kBitWizardry>(plan.ctx, a.data(), b.data(), plan.n);
  else
    pointwise_impl<AdjustStrategy::kConditionalSelect>(plan.ctx, a.data(), b.data(), plan.n);
}

std::vector<Word> convolve_mod_p(const ConvPlan& plan, std::span<const Word> x,
                                 std::span<const Word> y) {
  if (x.size() > plan.n || y.size() > plan.n)
    throw std::invalid_argument("convolve_mod_p: input longer than plan length");
  std::vector<Word> fx(plan.n, 0);
  std::copy(x.begin(), x.end(), fx.begin());
  forward_in_place(plan, fx.data());
  if (x.data() == y.data() && x.size() == y.size()) {
    pointwise_product(plan, fx, fx);  // squaring: one transform, self product
  } else {
    std::vector<Word> fy(plan.n, 0);
    std::copy(y.begin(), y.end(), fy.begin());
    forward_in_place(plan, fy.data());
    pointwise_product(plan, fx, fy);
  }
  inverse_in_place(plan, fx.data(), plan.psi_prime);
  return fx;
}

std::shared_ptr<const ConvPlan> conv_plan_for(Word prime, std::size_t n, AdjustStrategy strategy) {
  using Key = std::tuple<Word, std::size_t, int>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const ConvPlan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const Key key{prime, n, int(strategy)};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto plan = std::make_shared<const ConvPlan>(build_conv_plan(make_ctx(prime, strategy), n));
  cache.emplace(key, plan);
  return plan;
}

}  // namespace decmul
