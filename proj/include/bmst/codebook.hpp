#ifndef BMST_CODEBOOK_HPP
#define BMST_CODEBOOK_HPP

#include <cstdint>
#include <vector>

#include "bmst/bitblock.hpp"

namespace bmst {

// Explicit list of codewords for table look-up encoding and brute-force MAP
// decoding of (possibly nonlinear) short codes. The encoder input is the
// codeword index, bit-serialized LSB first.
class Codebook {
 public:
  Codebook(std::vector<BitBlock> words, int index_bits);

  std::size_t size() const { return words_.size(); }
  std::size_t word_len() const { return words_.empty() ? 0 : words_[0].size(); }
  int index_bits() const { return index_bits_; }
  const BitBlock& word(std::size_t idx) const { return words_[idx]; }

  // Exhaustive minimum pairwise Hamming distance.
  int min_distance() const;
  // Weight enumerator: count[w] = number of codewords of Hamming weight w.
  std::vector<std::size_t> weight_enumerator() const;

 private:
  std::vector<BitBlock> words_;
  int index_bits_;
};

// The (15, 256, 5) Nordstrom-Robinson nonlinear code: Gray image of the
// length-8 Z4 octacode with the last binary coordinate punctured.
Codebook build_nordstrom_robinson();

}  // namespace bmst

#endif
