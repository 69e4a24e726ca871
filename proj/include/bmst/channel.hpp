#ifndef BMST_CHANNEL_HPP
#define BMST_CHANNEL_HPP

#include <cmath>
#include <vector>

#include "bmst/bitblock.hpp"
#include "bmst/msg.hpp"
#include "bmst/rng.hpp"

namespace bmst {

using SymbolBlock = std::vector<double>;

// sigma per real dimension for E_b/N_0 (dB) at the given code rate:
// sigma^2 = 1 / (2 * rate * 10^(db/10)).
double ebn0_to_sigma(double ebn0_db, double rate);

struct NoiseModel {
  double sigma = 0.0;
  double ebn0_db = 0.0;
  double rate = 1.0;
  static NoiseModel from_ebn0(double ebn0_db, double rate) {
    return {ebn0_to_sigma(ebn0_db, rate), ebn0_db, rate};
  }
};

// BPSK: 0 -> +1, 1 -> -1.
SymbolBlock modulate(const BitBlock& c);

// y = x + n, n iid N(0, sigma^2), drawn from the given stream.
SymbolBlock add_awgn(const SymbolBlock& x, double sigma, Philox& rng);

// Bitwise posteriors under a uniform prior: p0 = 1 / (1 + exp(-2 y / sigma^2)).
MsgVec channel_posterior(const SymbolBlock& y, double sigma);

// Gaussian likelihood of one received sample given the transmitted bit.
inline double bit_likelihood(double y, int bit, double sigma) {
  const double x = bit ? -1.0 : 1.0;
  const double d = y - x;
  return std::exp(-d * d / (2.0 * sigma * sigma)) /
         std::sqrt(2.0 * 3.14159265358979323846 * sigma * sigma);
}

}  // namespace bmst

#endif
