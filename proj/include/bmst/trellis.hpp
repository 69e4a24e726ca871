#ifndef BMST_TRELLIS_HPP
#define BMST_TRELLIS_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "bmst/bitblock.hpp"
#include "bmst/msg.hpp"

namespace bmst {

// Rate-1/n_out binary convolutional code in a unified feedback realization:
// register input w_t = u_t ^ parity(feedback_low & state), outputs
// out_i = parity(forward[i] & (w_t : state)). Tap words have memory+1 bits
// with the current register input at the MSB. A feedforward code uses
// feedback = 1 << memory; a recursive systematic code G = [1, g1/g0, ...]
// uses feedback = g0 and forward[0] = g0.
struct ConvCode {
  int n_out = 2;
  int memory = 2;
  std::uint32_t feedback = 0;
  std::vector<std::uint32_t> forward;

  static ConvCode feedforward(int memory, std::vector<std::uint32_t> taps);
  // G = [1, numerators.../ g0]; the first emitted bit is systematic.
  static ConvCode recursive_systematic(int memory, std::uint32_t g0,
                                       std::vector<std::uint32_t> numerators);
};

// Time-invariant terminated trellis: data_steps free-input sections followed
// by memory tail sections whose input is forced to drive the state to zero.
// Both endpoints are state 0, so every BCJR/Viterbi pass is terminated by
// construction. Exactly 2 branches leave each state in a data section and 1
// in a tail section.
class Trellis {
 public:
  Trellis(const ConvCode& code, int data_steps);

  int n_states() const { return n_states_; }
  int n_out() const { return code_.n_out; }
  int memory() const { return code_.memory; }
  int data_steps() const { return data_steps_; }
  int total_steps() const { return data_steps_ + code_.memory; }
  int code_len() const { return total_steps() * code_.n_out; }

  int next_state(int state, int input) const { return next_[state][input]; }
  // Packed output bits for a branch; bit i is output line i.
  std::uint32_t branch_out(int state, int input) const { return out_[state][input]; }
  // Forced input during tail sections.
  int tail_input(int state) const { return tail_in_[state]; }

  BitBlock encode(const BitBlock& u) const;

 private:
  ConvCode code_;
  int data_steps_ = 0;
  int n_states_ = 1;
  std::vector<std::array<std::uint16_t, 2>> next_;
  std::vector<std::array<std::uint32_t, 2>> out_;
  std::vector<std::uint8_t> tail_in_;
};

struct SisoOut {
  MsgVec ext_v;  // extrinsic codeword-bit messages
  MsgVec app_u;  // a-posteriori info-bit messages
};

// Exact symbol-wise MAP on the terminated trellis; recursions are
// renormalized every step. Messages must be normalized pmfs.
SisoOut bcjr(const Trellis& trellis, const MsgVec& msg_v_in);

struct ListCandidate {
  BitBlock u;
  BitBlock v;
  double log_metric = 0.0;
};

// Top list_size codewords by path likelihood, best first. list_size = 1 is
// the Viterbi decision. Exact: every state keeps its list_size best partial
// paths, which at the terminal state are the global best.
std::vector<ListCandidate> list_viterbi(const Trellis& trellis,
                                        const MsgVec& msg_v_in, int list_size);

}  // namespace bmst

#endif
