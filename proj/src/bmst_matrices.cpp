#include "bmst/bmst_matrices.hpp"

#include <stdexcept>

namespace bmst {

namespace {

void check_interleavers(std::size_t n, const std::vector<Interleaver>& pis) {
  for (const auto& pi : pis)
    if (pi.size() != n) throw std::invalid_argument("bmst matrices: interleaver length mismatch");
}

// Copies src into dst starting at (row0, col0).
void place_block(GF2Matrix& dst, const GF2Matrix& src, std::size_t row0,
                 std::size_t col0) {
  for (std::size_t r = 0; r < src.rows(); ++r)
    for (std::size_t c = 0; c < src.cols(); ++c)
      if (src.get(r, c)) dst.set(row0 + r, col0 + c, 1);
}

}  // namespace

GF2Matrix build_generator_bmst(const GF2Matrix& g,
                               const std::vector<Interleaver>& pis, int l) {
  const std::size_t k = g.rows(), n = g.cols();
  const std::size_t m = pis.size();
  check_interleavers(n, pis);
  if (l < 1) throw std::invalid_argument("build_generator_bmst: L must be >= 1");

  // Block row t carries G, G*Pi_1, ..., G*Pi_m at column blocks t..t+m.
  std::vector<GF2Matrix> g_blocks;
  g_blocks.reserve(m + 1);
  g_blocks.push_back(g);
  for (const auto& pi : pis) g_blocks.push_back(g.permuted_cols(pi.perm()));

  GF2Matrix out(k * static_cast<std::size_t>(l), n * (static_cast<std::size_t>(l) + m));
  for (std::size_t t = 0; t < static_cast<std::size_t>(l); ++t)
    for (std::size_t i = 0; i <= m; ++i)
      place_block(out, g_blocks[i], t * k, (t + i) * n);
  return out;
}

std::vector<GF2Matrix> p_matrix_blocks(std::size_t n,
                                       const std::vector<Interleaver>& pis,
                                       int count) {
  check_interleavers(n, pis);
  std::vector<GF2Matrix> p;
  p.reserve(count);
  for (int t = 0; t < count; ++t) {
    if (t == 0) {
      p.push_back(GF2Matrix::identity(n));
      continue;
    }
    GF2Matrix acc(n, n);
    for (std::size_t ell = 1; ell <= pis.size(); ++ell) {
      const int idx = t - static_cast<int>(ell);
      if (idx < 0) continue;  // P_t = 0 for t < 0
      const GF2Matrix term = p[idx].permuted_cols(pis[ell - 1].perm());
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (term.get(r, c)) acc.set(r, c, acc.get(r, c) ^ 1);
    }
    p.push_back(std::move(acc));
  }
  return p;
}

GF2Matrix build_parity_bmst(const GF2Matrix& h,
                            const std::vector<Interleaver>& pis, int l) {
  const std::size_t n = h.cols();
  const std::size_t m = pis.size();
  check_interleavers(n, pis);
  if (l < 1) throw std::invalid_argument("build_parity_bmst: L must be >= 1");

  const std::size_t blocks = static_cast<std::size_t>(l) + m;
  const auto p = p_matrix_blocks(n, pis, static_cast<int>(blocks));
  std::vector<GF2Matrix> p_t;
  p_t.reserve(blocks);
  for (const auto& b : p) p_t.push_back(b.transposed());

  // Block (i, j) of the result is D_i * P_{i-j}^T for j <= i, with D_i = H
  // for the L data block rows and I for the m termination rows.
  const std::size_t hr = h.rows();
  GF2Matrix out(hr * static_cast<std::size_t>(l) + n * m, n * blocks);
  for (std::size_t i = 0; i < blocks; ++i) {
    const bool data_row = i < static_cast<std::size_t>(l);
    const std::size_t row0 = data_row ? i * hr : static_cast<std::size_t>(l) * hr + (i - l) * n;
    for (std::size_t j = 0; j <= i; ++j) {
      const GF2Matrix& pt = p_t[i - j];
      const GF2Matrix block = data_row ? h.times(pt) : pt;
      place_block(out, block, row0, j * n);
    }
  }
  return out;
}

}  // namespace bmst
