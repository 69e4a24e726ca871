#include "bmst/bmst_encoder.hpp"

#include <stdexcept>

namespace bmst {

void BmstConfig::validate() const {
  if (m < 0) throw std::invalid_argument("config: m must be >= 0");
  if (l < 1) throw std::invalid_argument("config: l must be >= 1");
  if (static_cast<int>(interleavers.size()) != m)
    throw std::invalid_argument("config: need exactly m interleavers");
  for (const auto& pi : interleavers)
    if (static_cast<int>(pi.size()) != basic.n)
      throw std::invalid_argument("config: interleaver length must equal n");
  if (d < 0) throw std::invalid_argument("config: d must be >= 0");
  if (i_max < 1) throw std::invalid_argument("config: i_max must be >= 1");
  if (list_size < 1) throw std::invalid_argument("config: list_size must be >= 1");
  if (stop_rule == StopRule::Crc && basic.kind != CodeKind::CrcConv)
    throw std::invalid_argument("config: crc stopping needs a crc32+conv basic code");
}

BmstConfig BmstConfig::make(BasicCodeSpec basic, int m, int l, std::uint64_t seed) {
  BmstConfig cfg;
  cfg.basic = std::move(basic);
  cfg.m = m;
  cfg.l = l;
  const int s = Interleaver::default_spread(cfg.basic.n);
  for (int i = 0; i < m; ++i)
    cfg.interleavers.push_back(Interleaver::s_random(
        cfg.basic.n, s, seed + 0x9E3779B97F4A7C15ull * (i + 1)));
  cfg.d = m;
  return cfg;
}

EncoderState::EncoderState(const BmstConfig& cfg) : cfg_(&cfg) { reset(); }

void EncoderState::reset() {
  history_.assign(cfg_->m, BitBlock(cfg_->basic.n));
}

BitBlock EncoderState::superimpose(const BitBlock& v) {
  BitBlock c = v;
  for (int i = 1; i <= cfg_->m; ++i)
    c ^= cfg_->interleavers[i - 1].apply(history_[i - 1]);
  if (cfg_->m > 0) {
    history_.pop_back();
    history_.push_front(v);
  }
  return c;
}

BitBlock EncoderState::encode_block(const BitBlock& u) {
  if (static_cast<int>(u.size()) != cfg_->basic.k)
    throw std::invalid_argument("encode_block: info length mismatch");
  return superimpose(encode_basic(cfg_->basic, u));
}

BitBlock EncoderState::encode_termination_block() {
  return superimpose(BitBlock(cfg_->basic.n));
}

std::vector<BitBlock> encode_sequence(const BmstConfig& cfg,
                                      const std::vector<BitBlock>& u_blocks) {
  if (static_cast<int>(u_blocks.size()) != cfg.l)
    throw std::invalid_argument("encode_sequence: need exactly L data blocks");
  EncoderState state(cfg);
  std::vector<BitBlock> c;
  c.reserve(cfg.blocks());
  for (const auto& u : u_blocks) c.push_back(state.encode_block(u));
  for (int t = 0; t < cfg.m; ++t) c.push_back(state.encode_termination_block());
  return c;
}

}  // namespace bmst
