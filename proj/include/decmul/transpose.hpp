#pragma once

#include <cstddef>

#include "decmul/words.hpp"

namespace decmul {

// In-place transpose of the n-by-n submatrix at p inside a row-major matrix
// with the given row stride. Tiled to keep both tile operands cache-resident.
void transpose_square_sub(Word* p, std::size_t n, std::size_t stride);

// rho(i) = n*(i mod 2) + (i div 2) on a row of 2n elements: even-index entries
// move to the first half, odd-index entries to the second. scratch: 2n words.
void permute_rho(Word* row, std::size_t n, Word* scratch);
void unpermute_rho(Word* row, std::size_t n, Word* scratch);

// In-place transpose of a row-major n-by-2n matrix (result is 2n-by-n in the
// same buffer): apply rho to every row, then transpose the two n-by-n halves
// (both viewed with row stride 2n). scratch: exactly 2n words.
void transpose_n_x_2n(Word* p, std::size_t n, Word* scratch);

// Inverse of the above: transpose the two square halves, then undo rho per row.
void transpose_2n_x_n(Word* p, std::size_t n, Word* scratch);

}  // namespace decmul
