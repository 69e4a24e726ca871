#include "bmst/gf2_matrix.hpp"

#include <bit>
#include <stdexcept>

namespace bmst {

GF2Matrix::GF2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64),
      data_(rows * ((cols + 63) / 64), 0) {}

GF2Matrix GF2Matrix::identity(std::size_t n) {
  GF2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

GF2Matrix GF2Matrix::from_rows(const std::vector<BitBlock>& rows) {
  if (rows.empty()) return GF2Matrix();
  GF2Matrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t c = 0; c < m.cols_; ++c)
      if (rows[r][c]) m.set(r, c, 1);
  }
  return m;
}

void GF2Matrix::set(std::size_t r, std::size_t c, int v) {
  std::uint64_t& w = word(r, c >> 6);
  const std::uint64_t mask = std::uint64_t{1} << (c & 63);
  if (v & 1)
    w |= mask;
  else
    w &= ~mask;
}

void GF2Matrix::xor_row(std::size_t dst, std::size_t src) {
  for (std::size_t w = 0; w < words_per_row_; ++w)
    word(dst, w) ^= word(src, w);
}

GF2Matrix GF2Matrix::times(const GF2Matrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("GF2Matrix::times: dimension mismatch");
  GF2Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t w = 0; w < words_per_row_; ++w) {
      std::uint64_t bits = word(r, w);
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        const std::size_t c = (w << 6) + static_cast<std::size_t>(b);
        for (std::size_t ow = 0; ow < out.words_per_row_; ++ow)
          out.word(r, ow) ^= other.word(c, ow);
      }
    }
  }
  return out;
}

GF2Matrix GF2Matrix::transposed() const {
  GF2Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t w = 0; w < words_per_row_; ++w) {
      std::uint64_t bits = word(r, w);
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        out.set((w << 6) + static_cast<std::size_t>(b), r, 1);
      }
    }
  return out;
}

bool GF2Matrix::is_zero() const {
  for (std::uint64_t w : data_)
    if (w) return false;
  return true;
}

std::size_t GF2Matrix::rank() const {
  GF2Matrix scratch = *this;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows_ && !scratch.get(pivot, c)) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != rank)
      for (std::size_t w = 0; w < words_per_row_; ++w)
        std::swap(scratch.word(pivot, w), scratch.word(rank, w));
    for (std::size_t r = 0; r < rows_; ++r)
      if (r != rank && scratch.get(r, c)) scratch.xor_row(r, rank);
    ++rank;
  }
  return rank;
}

GF2Matrix GF2Matrix::dual_basis() const {
  // Reduce to RREF, split pivot/free columns, read the dual basis off the
  // free columns.
  GF2Matrix rref = *this;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t pivot = r;
    while (pivot < rows_ && !rref.get(pivot, c)) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != r)
      for (std::size_t w = 0; w < words_per_row_; ++w)
        std::swap(rref.word(pivot, w), rref.word(r, w));
    for (std::size_t rr = 0; rr < rows_; ++rr)
      if (rr != r && rref.get(rr, c)) rref.xor_row(rr, r);
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  GF2Matrix dual(cols_ - pivot_col.size(), cols_);
  std::size_t out_row = 0;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (is_pivot[c]) continue;
    dual.set(out_row, c, 1);
    for (std::size_t p = 0; p < pivot_col.size(); ++p)
      if (rref.get(p, c)) dual.set(out_row, pivot_col[p], 1);
    ++out_row;
  }
  return dual;
}

BitBlock GF2Matrix::row_vec_mul(const BitBlock& x) const {
  if (x.size() != rows_) throw std::invalid_argument("gf2_mat_vec: dimension mismatch");
  std::vector<std::uint64_t> acc(words_per_row_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    if (x[r])
      for (std::size_t w = 0; w < words_per_row_; ++w) acc[w] ^= word(r, w);
  BitBlock out(cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    out.set(c, static_cast<int>((acc[c >> 6] >> (c & 63)) & 1u));
  return out;
}

GF2Matrix GF2Matrix::permuted_cols(const std::vector<std::uint32_t>& pi) const {
  if (pi.size() != cols_) throw std::invalid_argument("permuted_cols: length mismatch");
  GF2Matrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, pi[c])) out.set(r, c, 1);
  return out;
}

BitBlock GF2Matrix::row_as_bits(std::size_t r) const {
  BitBlock out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.set(c, get(r, c));
  return out;
}

BitBlock gf2_mat_vec(const GF2Matrix& m, const BitBlock& x) {
  return m.row_vec_mul(x);
}

}  // namespace bmst
