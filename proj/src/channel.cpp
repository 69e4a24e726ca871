#include "bmst/channel.hpp"

#include <stdexcept>

namespace bmst {

double ebn0_to_sigma(double ebn0_db, double rate) {
  if (rate <= 0.0) throw std::invalid_argument("ebn0_to_sigma: rate must be positive");
  return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

SymbolBlock modulate(const BitBlock& c) {
  SymbolBlock x(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) x[i] = c[i] ? -1.0 : 1.0;
  return x;
}

SymbolBlock add_awgn(const SymbolBlock& x, double sigma, Philox& rng) {
  SymbolBlock y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + sigma * rng.next_gaussian();
  return y;
}

MsgVec channel_posterior(const SymbolBlock& y, double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("channel_posterior: sigma must be positive");
  const double scale = 2.0 / (sigma * sigma);
  MsgVec out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double p0 = 1.0 / (1.0 + std::exp(-scale * y[i]));
    out[i] = BinMsg{p0, 1.0 - p0};
    out[i].normalize();
  }
  return out;
}

}  // namespace bmst
