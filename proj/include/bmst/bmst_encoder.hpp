#ifndef BMST_BMST_ENCODER_HPP
#define BMST_BMST_ENCODER_HPP

#include <deque>
#include <vector>

#include "bmst/basic_codes.hpp"
#include "bmst/interleaver.hpp"

namespace bmst {

enum class StopRule { Entropy, Crc, Fixed };
enum class CancelMode { Soft, Hard };

// Everything a transmission needs: the basic code, the superposition memory
// and its interleavers, plus the decoding knobs.
struct BmstConfig {
  BasicCodeSpec basic;
  int m = 0;  // encoding memory
  int l = 1;  // data blocks per frame
  std::vector<Interleaver> interleavers;  // m entries of length basic.n
  int d = 0;  // sliding-window decoding delay
  int i_max = 18;
  double epsilon = 1e-5;
  StopRule stop_rule = StopRule::Entropy;
  int list_size = 1;
  CancelMode cancel_mode = CancelMode::Soft;

  void validate() const;

  int blocks() const { return l + m; }
  double rate_overall() const {
    return static_cast<double>(basic.k) * l / (static_cast<double>(basic.n) * (l + m));
  }

  // Deterministic construction with paper-default S-random interleavers,
  // spread floor(sqrt(n/4)), seeds derived from `seed`.
  static BmstConfig make(BasicCodeSpec basic, int m, int l, std::uint64_t seed);
};

// Streaming encoder with an m-deep ring of past basic codewords. The full
// generator matrix is never materialized here.
class EncoderState {
 public:
  explicit EncoderState(const BmstConfig& cfg);

  // One step of the transmission loop: c = v + sum_i Pi_i(v^(t-i)).
  BitBlock encode_block(const BitBlock& u);
  // Termination step with u = 0.
  BitBlock encode_termination_block();
  void reset();

 private:
  BitBlock superimpose(const BitBlock& v);
  const BmstConfig* cfg_;
  std::deque<BitBlock> history_;  // most recent first: v^(t-1), ..., v^(t-m)
};

// The whole frame: L data blocks followed by m termination blocks.
std::vector<BitBlock> encode_sequence(const BmstConfig& cfg,
                                      const std::vector<BitBlock>& u_blocks);

}  // namespace bmst

#endif
