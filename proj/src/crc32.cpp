#include "bmst/crc32.hpp"

#include <stdexcept>

namespace bmst {

namespace {

// Remainder of bits(x) * x^32 mod g(x), MSB-first long division.
std::uint32_t crc_remainder(const BitBlock& bits, std::uint32_t poly) {
  std::uint32_t reg = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const std::uint32_t fb = (reg >> 31) ^ bits[i];
    reg <<= 1;
    if (fb) reg ^= poly;
  }
  return reg;
}

}  // namespace

BitBlock crc_attach(const BitBlock& u, std::uint32_t poly) {
  const std::uint32_t reg = crc_remainder(u, poly);
  BitBlock out(u.size() + kCrcBits);
  for (std::size_t i = 0; i < u.size(); ++i) out.set(i, u[i]);
  for (int i = 0; i < kCrcBits; ++i)
    out.set(u.size() + i, static_cast<int>((reg >> (31 - i)) & 1u));
  return out;
}

bool crc_check(const BitBlock& x, std::uint32_t poly) {
  if (x.size() < static_cast<std::size_t>(kCrcBits))
    throw std::invalid_argument("crc_check: block shorter than the CRC");
  // g(x) has a nonzero constant term, so x | w * x^32 iff x | w.
  return crc_remainder(x, poly) == 0;
}

}  // namespace bmst
