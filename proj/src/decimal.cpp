#include "decmul/decimal.hpp"

#include <algorithm>
#include <cstdio>

#include <boost/multiprecision/cpp_int.hpp>

#include "decmul/conv.hpp"

namespace decmul {

namespace {

using boost::multiprecision::cpp_int;

// Constants for the four production bases, computed at build time.
constexpr DivByConstB kProductionDiv[] = {
    make_div_by_const(pow10(14)), make_div_by_const(pow10(15)),
    make_div_by_const(pow10(16)), make_div_by_const(pow10(17))};

DivByConstB div_for_base_exp(unsigned base_exp) {
  if (base_exp >= kMinBaseExp && base_exp <= kMaxBaseExp)
    return kProductionDiv[base_exp - kMinBaseExp];
  return make_div_by_const(pow10(base_exp));  // off-path bases (docs, tests)
}

}  // namespace

DecimalNumber DecimalNumber::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("decimal: empty string");
  for (char ch : text)
    if (ch < '0' || ch > '9') throw std::invalid_argument("decimal: non-digit character");
  if (text.size() > 1 && text.front() == '0')
    throw std::invalid_argument("decimal: leading zero");
  return DecimalNumber(std::string(text));
}

unsigned max_digits_per_limb(unsigned words_per_coeff, std::uint64_t limb_bound,
                             unsigned word_bits) {
  if (words_per_coeff < 1 || limb_bound < 1 || word_bits < 2)
    throw std::invalid_argument("max_digits_per_limb: degenerate parameters");
  const cpp_int budget = cpp_int(1) << (std::size_t(word_bits - 1) * words_per_coeff);
  unsigned n = 0;
  cpp_int power = 1;  // 10^n
  for (;;) {
    const cpp_int next = power * 10;
    const cpp_int worst = (next - 1) * (next - 1) * limb_bound;
    if (worst >= budget) return n;
    power = next;
    ++n;
  }
}

std::size_t smallest_supported_length(std::size_t need, const PrimePair& pair) {
  const auto caps = [](Word p) {
    const unsigned two_adic = unsigned(std::countr_zero(p - 1));
    const bool has_three = ((p - 1) >> two_adic) % 3 == 0;
    return std::pair<unsigned, bool>{two_adic, has_three};
  };
  const auto [v1, t1] = caps(pair.p1);
  const auto [v2, t2] = caps(pair.p2);
  const unsigned k_max = std::min(v1, v2);
  need = std::max<std::size_t>(need, 2);
  if (need > (std::size_t(1) << 62)) return 0;

  std::size_t best = 0;
  const std::size_t two_pow = std::bit_ceil(need);
  if (unsigned(std::countr_zero(two_pow)) <= k_max) best = two_pow;
  if (t1 && t2) {
    const std::size_t half = std::bit_ceil((need + 2) / 3);  // 2^k >= ceil(need/3)
    const std::size_t with_three = 3 * half;
    if (unsigned(std::countr_zero(half)) <= k_max && (best == 0 || with_three < best))
      best = with_three;
  }
  return best;
}

BasePlan select_base_and_length(std::size_t n_digits_x, std::size_t n_digits_y,
                                const PrimePair& pair, unsigned forced_base_exp) {
  if (n_digits_x < 1 || n_digits_y < 1)
    throw std::invalid_argument("select_base_and_length: digit counts must be >= 1");
  if (forced_base_exp > kMaxBaseExp)
    throw std::invalid_argument("select_base_and_length: unsupported forced base");
  const u128 modulus = u128(pair.p1) * pair.p2;
  const unsigned lo = forced_base_exp ? forced_base_exp : kMinBaseExp;
  const unsigned hi = forced_base_exp ? forced_base_exp : kMaxBaseExp;
  for (unsigned base_exp = hi; base_exp >= lo; --base_exp) {
    const Word top = pow10(base_exp) - 1;  // B - 1
    const std::size_t lx = (n_digits_x + base_exp - 1) / base_exp;
    const std::size_t ly = (n_digits_y + base_exp - 1) / base_exp;
    // Safety: (B-1)^2 * min{limbs} < p1*p2, tested by division to avoid
    // overflowing the 128-bit product.
    if (u128(std::min(lx, ly)) > (modulus - 1) / (u128(top) * top)) continue;
    const std::size_t length = smallest_supported_length(lx + ly, pair);
    if (length == 0)  // smaller bases only need more limbs; nothing can fit
      throw OperandTooLarge("operands exceed the largest supported transform length");
    return {base_exp, length};
  }
  throw OperandTooLarge("operands violate the coefficient bound at every supported base");
}

PackedOperand pack(const DecimalNumber& x, unsigned base_exp) {
  if (base_exp < 1 || base_exp > kMaxBaseExp)
    throw std::invalid_argument("pack: unsupported base");
  const std::string& s = x.text();
  PackedOperand out;
  out.base_exp = base_exp;
  out.limbs.reserve((s.size() + base_exp - 1) / base_exp);
  std::size_t end = s.size();
  while (end > 0) {
    const std::size_t begin = end > base_exp ? end - base_exp : 0;
    Word limb = 0;
    for (std::size_t i = begin; i < end; ++i) limb = limb * 10 + Word(s[i] - '0');
    out.limbs.push_back(limb);
    end = begin;
  }
  return out;
}

std::string to_decimal(const PackedOperand& x) {
  std::size_t top = x.limbs.size();
  while (top > 1 && x.limbs[top - 1] == 0) --top;
  if (top == 0) return "0";
  char buf[32];
  int len = std::snprintf(buf, sizeof buf, "%llu",
                          static_cast<unsigned long long>(x.limbs[top - 1]));
  std::string out(buf, std::size_t(len));
  for (std::size_t i = top - 1; i-- > 0;) {
    len = std::snprintf(buf, sizeof buf, "%0*llu", int(x.base_exp),
                        static_cast<unsigned long long>(x.limbs[i]));
    out.append(buf, std::size_t(len));
  }
  return out;
}

CrtCtx make_crt_ctx(const PrimePair& pair, AdjustStrategy strategy) {
  if (pair.p1 >= pair.p2) throw std::invalid_argument("make_crt_ctx: requires p1 < p2");
  CrtCtx c;
  c.p1 = pair.p1;
  c.ctx2 = make_ctx(pair.p2, strategy);
  c.r_tilde = mont_pow(c.ctx2, to_mont(c.ctx2, pair.p1), pair.p2 - 2);
  const Word inv = from_mont(c.ctx2, c.r_tilde);
  if (Word(u128(inv) * pair.p1 % pair.p2) != 1)
    throw std::logic_error("make_crt_ctx: inverse self-check failed");
  return c;
}

WidePair crt2(const CrtCtx& ctx, Word a1, Word a2) {
  const Word diff = mod_sub(a2, a1, ctx.ctx2.p, ctx.ctx2.strategy);
  const Word quot = redc(ctx.ctx2, ctx.r_tilde, diff);  // (a2-a1) * p1^{-1} mod p2
  return WidePair::from(u128(ctx.p1) * quot + a1);
}

PackedOperand recover_digits(std::span<const WidePair> c, unsigned base_exp,
                             std::size_t min_limbs) {
  if (base_exp < 1 || base_exp > 19)
    throw std::invalid_argument("recover_digits: base out of range");
  if (min_limbs < 1) throw std::invalid_argument("recover_digits: min_limbs must be >= 1");
  const DivByConstB d = div_for_base_exp(base_exp);

  const u128 top = d.base - 1;
  const u128 coeff_cap_unit = top * top;  // (B-1)^2
  const u128 coeff_cap = min_limbs <= ~u128(0) / coeff_cap_unit
                             ? coeff_cap_unit * min_limbs
                             : ~u128(0);
  const u128 carry_cap = top * min_limbs;  // strict bound on every carry

  PackedOperand out;
  out.base_exp = base_exp;
  out.limbs.reserve(c.size() + 2);
  u128 carry = 0;
  for (const WidePair& w : c) {
    const u128 ci = w.value();
    if (ci > coeff_cap)
      throw std::runtime_error("recover_digits: coefficient exceeds analytic bound (upstream corruption)");
    const DivModResult dm = divmod_base(d, WidePair::from(carry + ci));
    out.limbs.push_back(dm.remainder);
    carry = dm.quotient.value();
    if (carry >= carry_cap)
      throw std::runtime_error("recover_digits: carry exceeds analytic bound (upstream corruption)");
  }
  while (carry > 0) {
    const DivModResult dm = divmod_base(d, WidePair::from(carry));
    out.limbs.push_back(dm.remainder);
    carry = dm.quotient.value();
  }
  if (out.limbs.empty()) out.limbs.push_back(0);
  return out;
}

DecimalNumber multiply(const DecimalNumber& x, const DecimalNumber& y,
                       const MultiplyOptions& opt) {
  if (x.is_zero() || y.is_zero()) return DecimalNumber();
  const PrimePair& pair = production_primes();
  const BasePlan bp =
      select_base_and_length(x.digit_count(), y.digit_count(), pair, opt.forced_base_exp);

  const bool squaring = &x == &y || x.text() == y.text();
  const PackedOperand px = pack(x, bp.base_exp);
  const PackedOperand py = squaring ? PackedOperand{} : pack(y, bp.base_exp);
  const std::span<const Word> sx(px.limbs);
  const std::span<const Word> sy = squaring ? sx : std::span<const Word>(py.limbs);

  const auto plan1 = conv_plan_for(pair.p1, bp.length, opt.strategy);
  const auto plan2 = conv_plan_for(pair.p2, bp.length, opt.strategy);
  const std::vector<Word> c1 = convolve_mod_p(*plan1, sx, sy);
  const std::vector<Word> c2 = convolve_mod_p(*plan2, sx, sy);

  const CrtCtx crt = make_crt_ctx(pair, opt.strategy);
  std::vector<WidePair> coeffs(bp.length);
  for (std::size_t i = 0; i < bp.length; ++i) coeffs[i] = crt2(crt, c1[i], c2[i]);

  const std::size_t min_limbs = std::min(sx.size(), sy.size());
  const PackedOperand z = recover_digits(coeffs, bp.base_exp, min_limbs);
  return DecimalNumber::parse(to_decimal(z));
}

}  // namespace decmul
