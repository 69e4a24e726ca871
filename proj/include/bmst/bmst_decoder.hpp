#ifndef BMST_BMST_DECODER_HPP
#define BMST_BMST_DECODER_HPP

#include <iosfwd>
#include <vector>

#include "bmst/bmst_encoder.hpp"
#include "bmst/channel.hpp"
#include "bmst/msg.hpp"

namespace bmst {

enum class StopReason { Entropy, Crc, IterMax, List };
const char* to_string(StopReason r);

struct DecodeResult {
  std::vector<BitBlock> u_hat;      // L blocks of k data bits
  std::vector<int> iterations;      // iterations consumed per block
  std::vector<StopReason> reasons;  // stop reason per block
  double avg_iterations() const;
};

// Messages of one layer of the normal graph. Edge i connects the = node of
// this layer through Pi_i to the + node i layers later (i = 0 is the
// un-interleaved edge within the layer). up[i] flows + -> Pi -> = and is
// stored de-interleaved; down[i] flows = -> Pi -> + and is stored
// interleaved, ready for use at the + node.
struct LayerState {
  MsgVec chan;                    // channel posteriors, fixed per frame
  std::vector<double> prior_diff; // folded-in canceled edges, as p0-p1 products
  std::vector<MsgVec> up;
  std::vector<MsgVec> down;
  MsgVec to_c;                    // last = -> C message
  MsgVec app_u;                   // last a-posteriori info messages
  bool active = false;
};

// Node +: every connecting variable sums to zero over F2. outgoing[e] is the
// F2 convolution of the channel posterior and all edge messages except e;
// to_channel is the convolution of the edge messages alone.
void node_plus_update(const MsgVec& channel_post,
                      const std::vector<const MsgVec*>& edges,
                      std::vector<MsgVec>& outgoing, MsgVec& to_channel);

// Node =: every connecting variable takes the same value. outgoing[e] is the
// normalized product of all incoming messages except e.
void node_equal_update(const std::vector<const MsgVec*>& incoming,
                       std::vector<MsgVec>& outgoing);

// -(1/n) sum_j log sum_a P(a) Pr{y_j | c_j = a}, natural log.
double entropy_rate_layer(const MsgVec& post_to_channel, const SymbolBlock& y,
                          double sigma);
double entropy_rate(const std::vector<MsgVec>& post_to_channel,
                    const std::vector<SymbolBlock>& y, double sigma);

struct CrcDecision {
  bool decided = false;
  StopReason reason = StopReason::IterMax;
  BitBlock u_inner;  // info bits of the inner code, CRC included
  BitBlock v_hat;    // matching inner codeword
};

// Parity-check-based stopping: accept as soon as the hard decision is CRC
// valid. When the iteration budget is exhausted, run the list decoder over
// the = -> C messages and accept the first CRC-valid candidate; otherwise
// return the rank-1 candidate undecided.
CrcDecision crc_stop_and_list(const BmstConfig& cfg, const MsgVec& app_u,
                              const MsgVec& to_c, bool exhausted);

class BmstDecoder {
 public:
  BmstDecoder(const BmstConfig& cfg, double sigma);

  // Algorithm-2 style decoding: all blocks received, alternating full
  // forward and backward sweeps.
  DecodeResult forward_backward(const std::vector<SymbolBlock>& y);

  // Algorithm-3 style decoding over a window of d+1 layers with cancelation
  // after each decision.
  DecodeResult sliding_window(const std::vector<SymbolBlock>& y);

  // Line-delimited convergence records (per block: iterations, entropy
  // series, stop reason).
  void set_trace(std::ostream* trace) { trace_ = trace; }

  // Exposed for tests.
  const LayerState& layer(int t) const { return layers_[t]; }
  void run_layer_update(int t) { layer_update(t); }
  MsgVec posterior_to_channel(int t) const { return plus_to_channel(t); }
  void apply_cancelation(int t, const BitBlock& v_hat) { cancel(t, v_hat); }

 private:
  void start(const std::vector<SymbolBlock>& y);
  void init_layer(int t);
  void layer_update(int t);
  std::vector<double> plus_diffs(int s, int skip_edge, bool with_channel) const;
  MsgVec plus_extrinsic(int s, int skip_edge) const;
  MsgVec plus_to_channel(int s) const;
  double frame_entropy() const;
  double output_entropy(int t) const;
  void cancel(int t, const BitBlock& v_hat);
  void harvest(int t, const CrcDecision* crc, DecodeResult& out) const;
  void retire(int t);

  const BmstConfig* cfg_;
  double sigma_;
  const std::vector<SymbolBlock>* y_ = nullptr;
  std::vector<LayerState> layers_;
  int lo_ = 0;   // first layer still connected (earlier ones are canceled)
  int hi_ = -1;  // last initialized layer
  std::ostream* trace_ = nullptr;
};

DecodeResult decode_forward_backward(const BmstConfig& cfg,
                                     const std::vector<SymbolBlock>& y,
                                     double sigma);
DecodeResult decode_sliding_window(const BmstConfig& cfg,
                                   const std::vector<SymbolBlock>& y,
                                   double sigma);

}  // namespace bmst

#endif
