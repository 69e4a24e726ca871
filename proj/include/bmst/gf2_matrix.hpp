#ifndef BMST_GF2_MATRIX_HPP
#define BMST_GF2_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bmst/bitblock.hpp"

namespace bmst {

// Dense F2 matrix with rows packed into 64-bit words.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols);

  static GF2Matrix identity(std::size_t n);
  static GF2Matrix from_rows(const std::vector<BitBlock>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  int get(std::size_t r, std::size_t c) const {
    return static_cast<int>((word(r, c >> 6) >> (c & 63)) & 1u);
  }
  void set(std::size_t r, std::size_t c, int v);

  void xor_row(std::size_t dst, std::size_t src);

  // this * other over F2.
  GF2Matrix times(const GF2Matrix& other) const;
  GF2Matrix transposed() const;
  bool is_zero() const;
  bool operator==(const GF2Matrix&) const = default;

  // Rank by Gaussian elimination on a scratch copy.
  std::size_t rank() const;

  // Basis of the dual space as rows: D with this * D^T = 0,
  // D.rows() == cols() - rank().
  GF2Matrix dual_basis() const;

  // Row vector times matrix: out = x * this, x.size() == rows().
  BitBlock row_vec_mul(const BitBlock& x) const;

  // this * P where P is the permutation matrix of pi (P[pi[j]][j] = 1),
  // i.e. column j of the result is column pi[j] of this.
  GF2Matrix permuted_cols(const std::vector<std::uint32_t>& pi) const;

  BitBlock row_as_bits(std::size_t r) const;

 private:
  std::uint64_t word(std::size_t r, std::size_t w) const {
    return data_[r * words_per_row_ + w];
  }
  std::uint64_t& word(std::size_t r, std::size_t w) {
    return data_[r * words_per_row_ + w];
  }

  std::size_t rows_ = 0, cols_ = 0, words_per_row_ = 0;
  std::vector<std::uint64_t> data_;
};

// Row-vector convention matching v = u * G: x.size() == m.rows().
BitBlock gf2_mat_vec(const GF2Matrix& m, const BitBlock& x);

}  // namespace bmst

#endif
