#ifndef BMST_CRC32_HPP
#define BMST_CRC32_HPP

#include <cstdint>

#include "bmst/bitblock.hpp"

namespace bmst {

// IEEE 802.3 polynomial; MSB-first bitwise division, zero init, no final xor.
inline constexpr std::uint32_t kCrc32Poly = 0x04C11DB7u;
inline constexpr int kCrcBits = 32;

// Appends the 32 remainder bits (MSB first) to u.
BitBlock crc_attach(const BitBlock& u, std::uint32_t poly = kCrc32Poly);

// True iff the remainder of x is zero. x must be at least 32 bits long.
bool crc_check(const BitBlock& x, std::uint32_t poly = kCrc32Poly);

}  // namespace bmst

#endif
