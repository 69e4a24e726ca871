#include "bmst/codebook.hpp"

#include <algorithm>
#include <stdexcept>

namespace bmst {

Codebook::Codebook(std::vector<BitBlock> words, int index_bits)
    : words_(std::move(words)), index_bits_(index_bits) {
  if (words_.empty()) throw std::invalid_argument("codebook: empty");
  if (words_.size() != (std::size_t{1} << index_bits_))
    throw std::invalid_argument("codebook: size must be 2^index_bits");
  for (const auto& w : words_)
    if (w.size() != words_[0].size())
      throw std::invalid_argument("codebook: ragged codewords");
}

int Codebook::min_distance() const {
  std::size_t best = word_len();
  for (std::size_t i = 0; i < words_.size(); ++i)
    for (std::size_t j = i + 1; j < words_.size(); ++j) {
      const std::size_t d = (words_[i] ^ words_[j]).weight();
      if (d == 0) throw std::runtime_error("codebook: duplicate codewords");
      best = std::min(best, d);
    }
  return static_cast<int>(best);
}

std::vector<std::size_t> Codebook::weight_enumerator() const {
  std::vector<std::size_t> counts(word_len() + 1, 0);
  for (const auto& w : words_) ++counts[w.weight()];
  return counts;
}

Codebook build_nordstrom_robinson() {
  // Octacode: the Z4 cyclic code of length 7 generated by the Hensel lift
  // g(x) = 3 + x + 2x^2 + x^3 of x^3 + x + 1, extended by a total parity
  // symbol so every codeword sums to 0 mod 4.
  static constexpr int kGen[4] = {3, 1, 2, 1};
  std::vector<BitBlock> words;
  words.reserve(256);
  for (int idx = 0; idx < 256; ++idx) {
    int u[4] = {idx & 3, (idx >> 2) & 3, (idx >> 4) & 3, (idx >> 6) & 3};
    int c[8] = {0};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) c[(i + j) % 7] = (c[(i + j) % 7] + u[i] * kGen[j]) & 3;
    int sum = 0;
    for (int i = 0; i < 7; ++i) sum += c[i];
    c[7] = (4 - sum % 4) & 3;

    // Gray map 0->00, 1->01, 2->11, 3->10; puncture the last binary bit.
    static constexpr int kGray[4][2] = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    BitBlock w(15);
    for (int i = 0; i < 8; ++i) {
      w.set(2 * i, kGray[c[i]][0]);
      if (2 * i + 1 < 15) w.set(2 * i + 1, kGray[c[i]][1]);
    }
    words.push_back(std::move(w));
  }
  return Codebook(std::move(words), 8);
}

}  // namespace bmst
