#ifndef BMST_BITBLOCK_HPP
#define BMST_BITBLOCK_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bmst/rng.hpp"

namespace bmst {

// Fixed-length vector over F2. Length never changes after construction.
class BitBlock {
 public:
  BitBlock() = default;
  explicit BitBlock(std::size_t n) : bits_(n, 0) {}

  BitBlock(std::initializer_list<int> init) {
    bits_.reserve(init.size());
    for (int b : init) bits_.push_back(static_cast<std::uint8_t>(b & 1));
  }

  static BitBlock zeros(std::size_t n) { return BitBlock(n); }

  static BitBlock random(std::size_t n, Philox& rng) {
    BitBlock b(n);
    for (std::size_t i = 0; i < n; ++i)
      b.bits_[i] = static_cast<std::uint8_t>(rng.next_u32() & 1u);
    return b;
  }

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, int v) { bits_[i] = static_cast<std::uint8_t>(v & 1); }

  BitBlock& operator^=(const BitBlock& o) {
    if (o.size() != size()) throw std::invalid_argument("BitBlock xor: length mismatch");
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= o.bits_[i];
    return *this;
  }

  friend BitBlock operator^(BitBlock a, const BitBlock& b) {
    a ^= b;
    return a;
  }

  bool operator==(const BitBlock&) const = default;

  std::size_t weight() const {
    return std::accumulate(bits_.begin(), bits_.end(), std::size_t{0});
  }

  bool is_zero() const { return weight() == 0; }

  const std::vector<std::uint8_t>& raw() const { return bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace bmst

#endif
