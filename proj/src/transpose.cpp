#include "decmul/transpose.hpp"

#include <algorithm>

namespace decmul {

namespace {
// 32 * 32 * 8 bytes = 8 KiB per tile: two tiles stay L1-resident.
constexpr std::size_t kTile = 32;
}  // namespace

void transpose_square_sub(Word* p, std::size_t n, std::size_t stride) {
  for (std::size_t i0 = 0; i0 < n; i0 += kTile) {
    const std::size_t imax = std::min(i0 + kTile, n);
    // diagonal tile
    for (std::size_t i = i0; i < imax; ++i)
      for (std::size_t j = i + 1; j < imax; ++j) std::swap(p[i * stride + j], p[j * stride + i]);
    // off-diagonal tile pairs
    for (std::size_t j0 = i0 + kTile; j0 < n; j0 += kTile) {
      const std::size_t jmax = std::min(j0 + kTile, n);
      for (std::size_t i = i0; i < imax; ++i)
        for (std::size_t j = j0; j < jmax; ++j) std::swap(p[i * stride + j], p[j * stride + i]);
    }
  }
}

void permute_rho(Word* row, std::size_t n, Word* scratch) {
  std::copy(row, row + 2 * n, scratch);
  for (std::size_t i = 0; i < n; ++i) {
    row[i] = scratch[2 * i];
    row[i + n] = scratch[2 * i + 1];
  }
}

void unpermute_rho(Word* row, std::size_t n, Word* scratch) {
  std::copy(row, row + 2 * n, scratch);
  for (std::size_t i = 0; i < n; ++i) {
    row[2 * i] = scratch[i];
    row[2 * i + 1] = scratch[i + n];
  }
}

void transpose_n_x_2n(Word* p, std::size_t n, Word* scratch) {
  for (std::size_t i = 0; i < n; ++i) permute_rho(p + i * 2 * n, n, scratch);
  transpose_square_sub(p, n, 2 * n);
  transpose_square_sub(p + n, n, 2 * n);
}

void transpose_2n_x_n(Word* p, std::size_t n, Word* scratch) {
  transpose_square_sub(p, n, 2 * n);
  transpose_square_sub(p + n, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) unpermute_rho(p + i * 2 * n, n, scratch);
}

}  // namespace decmul
