#include "bmst/trellis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace bmst {

namespace {

inline int parity(std::uint32_t x) { return std::popcount(x) & 1; }

}  // namespace

ConvCode ConvCode::feedforward(int memory, std::vector<std::uint32_t> taps) {
  ConvCode c;
  c.memory = memory;
  c.n_out = static_cast<int>(taps.size());
  c.feedback = std::uint32_t{1} << memory;
  c.forward = std::move(taps);
  return c;
}

ConvCode ConvCode::recursive_systematic(int memory, std::uint32_t g0,
                                        std::vector<std::uint32_t> numerators) {
  ConvCode c;
  c.memory = memory;
  c.feedback = g0;
  c.forward.push_back(g0);  // parity(g0 & reg) == u_t, the systematic bit
  for (std::uint32_t g : numerators) c.forward.push_back(g);
  c.n_out = static_cast<int>(c.forward.size());
  return c;
}

Trellis::Trellis(const ConvCode& code, int data_steps)
    : code_(code), data_steps_(data_steps) {
  if (code.memory < 1 || code.memory > 15)
    throw std::invalid_argument("trellis: memory out of range");
  if (data_steps < 1) throw std::invalid_argument("trellis: need at least one data step");
  if (!(code.feedback >> code.memory))
    throw std::invalid_argument("trellis: feedback must include the current input tap");
  n_states_ = 1 << code.memory;
  next_.resize(n_states_);
  out_.resize(n_states_);
  tail_in_.resize(n_states_);
  const std::uint32_t fb_low = code.feedback & ((1u << code.memory) - 1u);
  for (int s = 0; s < n_states_; ++s) {
    const int fb = parity(fb_low & static_cast<std::uint32_t>(s));
    for (int u = 0; u < 2; ++u) {
      const int w = u ^ fb;
      const std::uint32_t reg =
          (static_cast<std::uint32_t>(w) << code.memory) | static_cast<std::uint32_t>(s);
      std::uint32_t bits = 0;
      for (int i = 0; i < code.n_out; ++i)
        bits |= static_cast<std::uint32_t>(parity(code.forward[i] & reg)) << i;
      next_[s][u] = static_cast<std::uint16_t>(
          (w << (code.memory - 1)) | (s >> 1));
      out_[s][u] = bits;
    }
    tail_in_[s] = static_cast<std::uint8_t>(fb);  // forces w = 0
  }
}

BitBlock Trellis::encode(const BitBlock& u) const {
  if (static_cast<int>(u.size()) != data_steps_)
    throw std::invalid_argument("trellis encode: length mismatch");
  BitBlock v(static_cast<std::size_t>(code_len()));
  int state = 0;
  std::size_t pos = 0;
  for (int t = 0; t < total_steps(); ++t) {
    const int in = t < data_steps_ ? u[t] : tail_in_[state];
    const std::uint32_t bits = out_[state][in];
    for (int i = 0; i < code_.n_out; ++i)
      v.set(pos++, static_cast<int>((bits >> i) & 1u));
    state = next_[state][in];
  }
  return v;
}

SisoOut bcjr(const Trellis& tr, const MsgVec& msg_v_in) {
  const int steps = tr.total_steps();
  const int states = tr.n_states();
  const int n_out = tr.n_out();
  if (static_cast<int>(msg_v_in.size()) != tr.code_len())
    throw std::invalid_argument("bcjr: message length mismatch");

  // Forward pass, renormalized to sum 1 every step.
  std::vector<std::vector<double>> alpha(steps + 1, std::vector<double>(states, 0.0));
  alpha[0][0] = 1.0;
  for (int t = 0; t < steps; ++t) {
    const BinMsg* msgs = &msg_v_in[static_cast<std::size_t>(t) * n_out];
    const bool data = t < tr.data_steps();
    double sum = 0.0;
    for (int s = 0; s < states; ++s) {
      const double a = alpha[t][s];
      if (a == 0.0) continue;
      for (int u = 0; u < 2; ++u) {
        if (!data && u != tr.tail_input(s)) continue;
        const std::uint32_t bits = tr.branch_out(s, u);
        double g = 1.0;
        for (int i = 0; i < n_out; ++i)
          g *= (bits >> i) & 1u ? msgs[i].p1 : msgs[i].p0;
        alpha[t + 1][tr.next_state(s, u)] += a * g;
      }
    }
    for (double v : alpha[t + 1]) sum += v;
    if (sum <= 0.0) throw std::runtime_error("bcjr: forward recursion vanished");
    for (double& v : alpha[t + 1]) v /= sum;
  }

  // Backward pass.
  std::vector<std::vector<double>> beta(steps + 1, std::vector<double>(states, 0.0));
  beta[steps][0] = 1.0;
  for (int t = steps; t-- > 0;) {
    const BinMsg* msgs = &msg_v_in[static_cast<std::size_t>(t) * n_out];
    const bool data = t < tr.data_steps();
    double sum = 0.0;
    for (int s = 0; s < states; ++s) {
      double acc = 0.0;
      for (int u = 0; u < 2; ++u) {
        if (!data && u != tr.tail_input(s)) continue;
        const double b = beta[t + 1][tr.next_state(s, u)];
        if (b == 0.0) continue;
        const std::uint32_t bits = tr.branch_out(s, u);
        double g = 1.0;
        for (int i = 0; i < n_out; ++i)
          g *= (bits >> i) & 1u ? msgs[i].p1 : msgs[i].p0;
        acc += b * g;
      }
      beta[t][s] = acc;
      sum += acc;
    }
    if (sum <= 0.0) throw std::runtime_error("bcjr: backward recursion vanished");
    for (double& v : beta[t]) v /= sum;
  }

  SisoOut out;
  out.ext_v.assign(msg_v_in.size(), BinMsg::uniform());
  out.app_u.assign(tr.data_steps(), BinMsg::uniform());
  std::vector<double> bit_prob(n_out);
  std::vector<double> prefix(n_out + 1), suffix(n_out + 1);
  for (int t = 0; t < steps; ++t) {
    const BinMsg* msgs = &msg_v_in[static_cast<std::size_t>(t) * n_out];
    const bool data = t < tr.data_steps();
    double app0 = 0.0, app1 = 0.0;
    std::vector<double> e0(n_out, 0.0), e1(n_out, 0.0);
    for (int s = 0; s < states; ++s) {
      const double a = alpha[t][s];
      if (a == 0.0) continue;
      for (int u = 0; u < 2; ++u) {
        if (!data && u != tr.tail_input(s)) continue;
        const double b = beta[t + 1][tr.next_state(s, u)];
        if (b == 0.0) continue;
        const std::uint32_t bits = tr.branch_out(s, u);
        for (int i = 0; i < n_out; ++i)
          bit_prob[i] = (bits >> i) & 1u ? msgs[i].p1 : msgs[i].p0;
        prefix[0] = 1.0;
        suffix[n_out] = 1.0;
        for (int i = 0; i < n_out; ++i) prefix[i + 1] = prefix[i] * bit_prob[i];
        for (int i = n_out; i-- > 0;) suffix[i] = suffix[i + 1] * bit_prob[i];
        const double ab = a * b;
        if (data) (u ? app1 : app0) += ab * prefix[n_out];
        for (int i = 0; i < n_out; ++i) {
          const double w = ab * prefix[i] * suffix[i + 1];
          if ((bits >> i) & 1u)
            e1[i] += w;
          else
            e0[i] += w;
        }
      }
    }
    if (data) {
      BinMsg app{app0, app1};
      app.normalize();
      out.app_u[t] = app;
    }
    for (int i = 0; i < n_out; ++i) {
      BinMsg ext{e0[i], e1[i]};
      ext.normalize();
      out.ext_v[static_cast<std::size_t>(t) * n_out + i] = ext;
    }
  }
  return out;
}

namespace {

struct PathEntry {
  double metric;
  std::int32_t src_state;
  std::int16_t src_rank;
  std::int8_t input;
};

inline bool better(const PathEntry& a, const PathEntry& b) {
  if (a.metric != b.metric) return a.metric > b.metric;
  if (a.src_state != b.src_state) return a.src_state < b.src_state;
  if (a.src_rank != b.src_rank) return a.src_rank < b.src_rank;
  return a.input < b.input;
}

}  // namespace

std::vector<ListCandidate> list_viterbi(const Trellis& tr, const MsgVec& msg_v_in,
                                        int list_size) {
  if (list_size < 1) throw std::invalid_argument("list_viterbi: list_size must be >= 1");
  const int steps = tr.total_steps();
  const int states = tr.n_states();
  const int n_out = tr.n_out();
  if (static_cast<int>(msg_v_in.size()) != tr.code_len())
    throw std::invalid_argument("list_viterbi: message length mismatch");

  const double log_floor = std::log(kMsgClamp);
  auto log_msg = [&](const BinMsg& m, int bit) {
    const double p = bit ? m.p1 : m.p0;
    return p > kMsgClamp ? std::log(p) : log_floor;
  };

  // lists[t][state] holds up to list_size best partial paths into state at
  // step boundary t.
  std::vector<std::vector<std::vector<PathEntry>>> lists(
      steps + 1, std::vector<std::vector<PathEntry>>(states));
  lists[0][0].push_back({0.0, -1, -1, 0});

  std::vector<std::vector<PathEntry>> incoming(states);
  for (int t = 0; t < steps; ++t) {
    const BinMsg* msgs = &msg_v_in[static_cast<std::size_t>(t) * n_out];
    const bool data = t < tr.data_steps();
    for (auto& v : incoming) v.clear();
    for (int s = 0; s < states; ++s) {
      const auto& src = lists[t][s];
      if (src.empty()) continue;
      for (int u = 0; u < 2; ++u) {
        if (!data && u != tr.tail_input(s)) continue;
        const std::uint32_t bits = tr.branch_out(s, u);
        double g = 0.0;
        for (int i = 0; i < n_out; ++i) g += log_msg(msgs[i], (bits >> i) & 1);
        const int dst = tr.next_state(s, u);
        for (std::size_t r = 0; r < src.size(); ++r)
          incoming[dst].push_back({src[r].metric + g, s,
                                   static_cast<std::int16_t>(r),
                                   static_cast<std::int8_t>(u)});
      }
    }
    for (int s = 0; s < states; ++s) {
      auto& in = incoming[s];
      std::sort(in.begin(), in.end(), better);
      if (static_cast<int>(in.size()) > list_size) in.resize(list_size);
      lists[t + 1][s] = in;
    }
  }

  std::vector<ListCandidate> out;
  const auto& finals = lists[steps][0];
  for (std::size_t r = 0; r < finals.size(); ++r) {
    // Walk the back pointers to recover inputs, then re-encode for v.
    std::vector<int> inputs(steps);
    int state = 0, rank = static_cast<int>(r);
    for (int t = steps; t-- > 0;) {
      const PathEntry& e = lists[t + 1][state][rank];
      inputs[t] = e.input;
      state = e.src_state;
      rank = e.src_rank;
    }
    BitBlock u(static_cast<std::size_t>(tr.data_steps()));
    for (int t = 0; t < tr.data_steps(); ++t) u.set(t, inputs[t]);
    ListCandidate cand;
    cand.log_metric = finals[r].metric;
    cand.v = tr.encode(u);
    cand.u = std::move(u);
    out.push_back(std::move(cand));
  }
  return out;
}

}  // namespace bmst
