#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "decmul/words.hpp"

// Reference implementations used only by tests. Everything here is the
// straightforward quadratic / plain-arithmetic version of what the library
// computes with transforms, Montgomery forms, and reciprocal tricks, so the
// two sides share no code path beyond the word types.
namespace oracle {

using decmul::u128;
using decmul::Word;

Word mul_mod(Word a, Word b, Word p);
Word pow_mod(Word a, Word e, Word p);
Word inv_mod(Word a, Word p);  // p prime, a != 0

std::size_t bit_reverse(std::size_t k, unsigned bits);

// O(n^2) DFT over F_p with plain residues: X[k] = sum_i x[i] * root^(ik).
// Verifies that root has multiplicative order exactly n before using it.
std::vector<Word> naive_dft(const std::vector<Word>& x, Word root, Word p);

// x[i] = n^{-1} * sum_k X[k] * root^{-ik}; exact inverse of naive_dft.
std::vector<Word> naive_idft(const std::vector<Word>& x, Word root, Word p);

// Cyclic convolution by double loop: z[k] = sum_i x[i] * y[(k-i) mod n].
std::vector<Word> naive_convolve(const std::vector<Word>& x,
                                 const std::vector<Word>& y, Word p);

// Exact decimal product by long multiplication over base-10^9 limbs with
// 128-bit column accumulators. Quadratic; fine up to a few 10^5 digits.
std::string schoolbook_multiply(const std::string& x, const std::string& y);

// Same thing digit by digit in base 10. Much slower; cross-checks the above.
std::string schoolbook_digits(const std::string& x, const std::string& y);

// Closed form (10^n - 1)^2 = 10^2n - 2*10^n + 1 as a digit string.
std::string all_nines_square(std::size_t n);

// Bitwise restoring long division of a 128-bit value. Throws on d == 0.
void wide_divmod_generic(u128 x, Word d, u128& q, Word& r);

// Uniform digit string of the exact length (leading digit 1..9).
std::string random_decimal(std::mt19937_64& rng, std::size_t digits);

std::vector<Word> random_residues(std::mt19937_64& rng, std::size_t n, Word p);

}  // namespace oracle
