#ifndef BMST_BMST_MATRICES_HPP
#define BMST_BMST_MATRICES_HPP

#include <vector>

#include "bmst/gf2_matrix.hpp"
#include "bmst/interleaver.hpp"

namespace bmst {

// Generator of the terminated superposition code: diag(G,...,G) times the
// block upper banded matrix with blocks I, P1, ..., Pm on each block row.
// Size kL x n(L+m); full rank kL. Verification path only -- encoding never
// materializes this.
GF2Matrix build_generator_bmst(const GF2Matrix& g,
                               const std::vector<Interleaver>& pis, int l);

// Parity-check diag(H,...,H, I,...,I) * P^T where P is block upper
// triangular built from the recursion P_0 = I, P_t = sum_l P_{t-l} Pi_l.
// Rank (n-k)L + nm.
GF2Matrix build_parity_bmst(const GF2Matrix& h,
                            const std::vector<Interleaver>& pis, int l);

// The P_t recursion blocks, t = 0..count-1 (P_0 = I).
std::vector<GF2Matrix> p_matrix_blocks(std::size_t n,
                                       const std::vector<Interleaver>& pis,
                                       int count);

}  // namespace bmst

#endif
