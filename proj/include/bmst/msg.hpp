#ifndef BMST_MSG_HPP
#define BMST_MSG_HPP

#include <cstddef>
#include <vector>

namespace bmst {

// Clamp bound for probabilities before any product or convolution.
inline constexpr double kMsgClamp = 1e-12;

// Normalized pmf of one F2 variable: the message unit of the normal graph.
struct BinMsg {
  double p0 = 0.5;
  double p1 = 0.5;

  static BinMsg uniform() { return {0.5, 0.5}; }
  static BinMsg certain(int bit) {
    return bit ? BinMsg{kMsgClamp, 1.0 - kMsgClamp}
               : BinMsg{1.0 - kMsgClamp, kMsgClamp};
  }

  void normalize() {
    if (p0 < kMsgClamp) p0 = kMsgClamp;
    if (p1 < kMsgClamp) p1 = kMsgClamp;
    if (p0 > 1.0 - kMsgClamp) p0 = 1.0 - kMsgClamp;
    if (p1 > 1.0 - kMsgClamp) p1 = 1.0 - kMsgClamp;
    const double s = p0 + p1;
    p0 /= s;
    p1 /= s;
  }

  // p0 - p1; products of diffs realize F2 convolutions.
  double diff() const { return p0 - p1; }
  static BinMsg from_diff(double d) {
    BinMsg m{0.5 * (1.0 + d), 0.5 * (1.0 - d)};
    m.normalize();
    return m;
  }

  int hard() const { return p1 > p0 ? 1 : 0; }  // ties decide 0
};

using MsgVec = std::vector<BinMsg>;

// Distribution of a + b over F2 for independent a, b.
inline BinMsg box_conv(const BinMsg& a, const BinMsg& b) {
  BinMsg out{a.p0 * b.p0 + a.p1 * b.p1, a.p0 * b.p1 + a.p1 * b.p0};
  out.normalize();
  return out;
}

// Normalized pointwise product (equality-node combine).
inline BinMsg msg_product(const BinMsg& a, const BinMsg& b) {
  BinMsg out{a.p0 * b.p0, a.p1 * b.p1};
  out.normalize();
  return out;
}

inline MsgVec uniform_msgs(std::size_t n) { return MsgVec(n, BinMsg::uniform()); }

// Check-node style update: outgoing[e] is the F2 convolution of every input
// except input e. Prefix/suffix products over diffs, so zero diffs are fine.
inline void leave_one_out_conv(const std::vector<const MsgVec*>& inputs,
                               std::vector<MsgVec>& outgoing) {
  const std::size_t e_count = inputs.size();
  const std::size_t n = e_count ? inputs[0]->size() : 0;
  outgoing.assign(e_count, MsgVec(n));
  std::vector<double> prefix(e_count + 1), suffix(e_count + 1);
  for (std::size_t j = 0; j < n; ++j) {
    prefix[0] = 1.0;
    suffix[e_count] = 1.0;
    for (std::size_t e = 0; e < e_count; ++e)
      prefix[e + 1] = prefix[e] * (*inputs[e])[j].diff();
    for (std::size_t e = e_count; e-- > 0;)
      suffix[e] = suffix[e + 1] * (*inputs[e])[j].diff();
    for (std::size_t e = 0; e < e_count; ++e)
      outgoing[e][j] = BinMsg::from_diff(prefix[e] * suffix[e + 1]);
  }
}

// Variable-node style update: outgoing[e] is the normalized product of every
// input except input e.
inline void leave_one_out_product(const std::vector<const MsgVec*>& inputs,
                                  std::vector<MsgVec>& outgoing) {
  const std::size_t e_count = inputs.size();
  const std::size_t n = e_count ? inputs[0]->size() : 0;
  outgoing.assign(e_count, MsgVec(n));
  std::vector<BinMsg> prefix(e_count + 1), suffix(e_count + 1);
  for (std::size_t j = 0; j < n; ++j) {
    prefix[0] = {1.0, 1.0};
    suffix[e_count] = {1.0, 1.0};
    for (std::size_t e = 0; e < e_count; ++e) {
      const BinMsg& in = (*inputs[e])[j];
      BinMsg p{prefix[e].p0 * in.p0, prefix[e].p1 * in.p1};
      p.normalize();
      prefix[e + 1] = p;
    }
    for (std::size_t e = e_count; e-- > 0;) {
      const BinMsg& in = (*inputs[e])[j];
      BinMsg s{suffix[e + 1].p0 * in.p0, suffix[e + 1].p1 * in.p1};
      s.normalize();
      suffix[e] = s;
    }
    for (std::size_t e = 0; e < e_count; ++e)
      outgoing[e][j] = msg_product(prefix[e], suffix[e + 1]);
  }
}

}  // namespace bmst

#endif
