#include "bmst/bmst_decoder.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace bmst {

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Entropy: return "entropy";
    case StopReason::Crc: return "crc";
    case StopReason::IterMax: return "i_max";
    case StopReason::List: return "list";
  }
  return "?";
}

double DecodeResult::avg_iterations() const {
  if (iterations.empty()) return 0.0;
  double sum = 0.0;
  for (int i : iterations) sum += i;
  return sum / static_cast<double>(iterations.size());
}

void node_plus_update(const MsgVec& channel_post,
                      const std::vector<const MsgVec*>& edges,
                      std::vector<MsgVec>& outgoing, MsgVec& to_channel) {
  std::vector<const MsgVec*> inputs;
  inputs.reserve(edges.size() + 1);
  inputs.push_back(&channel_post);
  for (const MsgVec* e : edges) inputs.push_back(e);
  std::vector<MsgVec> outs;
  leave_one_out_conv(inputs, outs);
  to_channel = std::move(outs[0]);  // everything except the channel edge
  outgoing.assign(std::make_move_iterator(outs.begin() + 1),
                  std::make_move_iterator(outs.end()));
}

void node_equal_update(const std::vector<const MsgVec*>& incoming,
                       std::vector<MsgVec>& outgoing) {
  leave_one_out_product(incoming, outgoing);
}

double entropy_rate_layer(const MsgVec& post_to_channel, const SymbolBlock& y,
                          double sigma) {
  double acc = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double py = post_to_channel[j].p0 * bit_likelihood(y[j], 0, sigma) +
                      post_to_channel[j].p1 * bit_likelihood(y[j], 1, sigma);
    acc += std::log(py);
  }
  return -acc / static_cast<double>(y.size());
}

double entropy_rate(const std::vector<MsgVec>& post_to_channel,
                    const std::vector<SymbolBlock>& y, double sigma) {
  double acc = 0.0;
  std::size_t total = 0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    acc += entropy_rate_layer(post_to_channel[t], y[t], sigma) *
           static_cast<double>(y[t].size());
    total += y[t].size();
  }
  return acc / static_cast<double>(total);
}

CrcDecision crc_stop_and_list(const BmstConfig& cfg, const MsgVec& app_u,
                              const MsgVec& to_c, bool exhausted) {
  CrcDecision d;
  BitBlock u_hat(app_u.size());
  for (std::size_t i = 0; i < app_u.size(); ++i) u_hat.set(i, app_u[i].hard());
  if (crc_check(u_hat)) {
    d.decided = true;
    d.reason = StopReason::Crc;
    d.v_hat = cfg.basic.trellis->encode(u_hat);
    d.u_inner = std::move(u_hat);
    return d;
  }
  if (!exhausted) return d;
  const auto cands = list_viterbi(*cfg.basic.trellis, to_c, cfg.list_size);
  for (const auto& cand : cands) {
    if (crc_check(cand.u)) {
      d.decided = true;
      d.reason = StopReason::List;
      d.u_inner = cand.u;
      d.v_hat = cand.v;
      return d;
    }
  }
  d.decided = false;
  d.reason = StopReason::IterMax;
  d.u_inner = cands.front().u;  // best-effort ML path
  d.v_hat = cands.front().v;
  return d;
}

BmstDecoder::BmstDecoder(const BmstConfig& cfg, double sigma)
    : cfg_(&cfg), sigma_(sigma) {
  cfg.validate();
  if (sigma <= 0.0) throw std::invalid_argument("decoder: sigma must be positive");
}

void BmstDecoder::start(const std::vector<SymbolBlock>& y) {
  if (static_cast<int>(y.size()) != cfg_->blocks())
    throw std::invalid_argument("decoder: need L+m received blocks");
  for (const auto& block : y)
    if (static_cast<int>(block.size()) != cfg_->basic.n)
      throw std::invalid_argument("decoder: received block length mismatch");
  y_ = &y;
  layers_.assign(cfg_->blocks(), LayerState{});
  lo_ = 0;
  hi_ = -1;
}

void BmstDecoder::init_layer(int t) {
  LayerState& ly = layers_[t];
  const int n = cfg_->basic.n;
  ly.chan = channel_posterior((*y_)[t], sigma_);
  ly.prior_diff.assign(n, 1.0);
  ly.up.assign(cfg_->m + 1, uniform_msgs(n));
  ly.down.assign(cfg_->m + 1, uniform_msgs(n));
  ly.to_c = uniform_msgs(n);
  ly.app_u = uniform_msgs(cfg_->basic.inner_info());
  ly.active = true;
}

std::vector<double> BmstDecoder::plus_diffs(int s, int skip_edge,
                                            bool with_channel) const {
  const int n = cfg_->basic.n;
  const LayerState& ls = layers_[s];
  std::vector<double> d(n);
  for (int j = 0; j < n; ++j)
    d[j] = ls.prior_diff[j] * (with_channel ? ls.chan[j].diff() : 1.0);
  for (int e = 0; e <= cfg_->m; ++e) {
    if (e == skip_edge) continue;
    const int src = s - e;
    if (src < lo_) continue;  // nonexistent or already canceled
    const MsgVec& msg = layers_[src].down[e];
    for (int j = 0; j < n; ++j) d[j] *= msg[j].diff();
  }
  return d;
}

MsgVec BmstDecoder::plus_extrinsic(int s, int skip_edge) const {
  const auto d = plus_diffs(s, skip_edge, true);
  MsgVec out(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) out[j] = BinMsg::from_diff(d[j]);
  return out;
}

MsgVec BmstDecoder::plus_to_channel(int s) const {
  const auto d = plus_diffs(s, -1, false);
  MsgVec out(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) out[j] = BinMsg::from_diff(d[j]);
  return out;
}

void BmstDecoder::layer_update(int t) {
  LayerState& ly = layers_[t];
  const int n = cfg_->basic.n;
  const int m = cfg_->m;

  // + -> Pi -> = : pull the extrinsic of every + node holding a copy of
  // v^(t), de-interleaved into this layer's coordinates.
  for (int i = 0; i <= m; ++i) {
    if (t + i > hi_) continue;  // outside the window, discarded
    MsgVec ext = plus_extrinsic(t + i, i);
    ly.up[i] = i == 0 ? std::move(ext) : cfg_->interleavers[i - 1].scatter(ext);
  }

  // = -> C : product of all + side messages.
  std::vector<BinMsg> prefix(m + 2), suffix(m + 2);
  MsgVec ext_v;
  {
    for (int j = 0; j < n; ++j) {
      BinMsg acc{1.0, 1.0};
      for (int i = 0; i <= m; ++i) {
        acc = {acc.p0 * ly.up[i][j].p0, acc.p1 * ly.up[i][j].p1};
        acc.normalize();
      }
      ly.to_c[j] = acc;
    }
  }

  // C : SISO decoding of the basic code; termination layers pin v = 0.
  if (t < cfg_->l) {
    SisoOut siso = siso_decode(cfg_->basic, ly.to_c);
    ext_v = std::move(siso.ext_v);
    ly.app_u = std::move(siso.app_u);
  } else {
    ext_v.assign(n, BinMsg::certain(0));
  }

  // C -> = -> Pi -> + : redistribute, leaving each target edge out.
  for (int j = 0; j < n; ++j) {
    prefix[0] = {1.0, 1.0};
    suffix[m + 1] = {1.0, 1.0};
    for (int i = 0; i <= m; ++i) {
      prefix[i + 1] = {prefix[i].p0 * ly.up[i][j].p0, prefix[i].p1 * ly.up[i][j].p1};
      prefix[i + 1].normalize();
    }
    for (int i = m + 1; i-- > 0;) {
      suffix[i] = {suffix[i + 1].p0 * ly.up[i][j].p0, suffix[i + 1].p1 * ly.up[i][j].p1};
      suffix[i].normalize();
    }
    for (int i = 0; i <= m; ++i) {
      if (t + i > hi_) continue;
      BinMsg out{ext_v[j].p0 * prefix[i].p0 * suffix[i + 1].p0,
                 ext_v[j].p1 * prefix[i].p1 * suffix[i + 1].p1};
      out.normalize();
      ly.down[i][j] = out;  // interleaved below
    }
  }
  for (int i = 1; i <= m; ++i) {
    if (t + i > hi_) continue;
    ly.down[i] = cfg_->interleavers[i - 1].gather(ly.down[i]);
  }
}

double BmstDecoder::frame_entropy() const {
  double acc = 0.0;
  std::size_t total = 0;
  for (int t = 0; t < cfg_->blocks(); ++t) {
    acc += entropy_rate_layer(plus_to_channel(t), (*y_)[t], sigma_) *
           static_cast<double>((*y_)[t].size());
    total += (*y_)[t].size();
  }
  return acc / static_cast<double>(total);
}

double BmstDecoder::output_entropy(int t) const {
  return entropy_rate_layer(plus_to_channel(t), (*y_)[t], sigma_);
}

void BmstDecoder::cancel(int t, const BitBlock& v_hat) {
  for (int i = 1; i <= cfg_->m; ++i) {
    if (t + i > hi_) continue;
    LayerState& target = layers_[t + i];
    if (cfg_->cancel_mode == CancelMode::Soft) {
      const MsgVec& msg = layers_[t].down[i];
      for (int j = 0; j < cfg_->basic.n; ++j)
        target.prior_diff[j] *= msg[j].diff();
    } else {
      const BitBlock w_hat = cfg_->interleavers[i - 1].apply(v_hat);
      for (int j = 0; j < cfg_->basic.n; ++j)
        if (w_hat[j]) target.prior_diff[j] = -target.prior_diff[j];
    }
  }
}

void BmstDecoder::harvest(int t, const CrcDecision* crc, DecodeResult& out) const {
  const LayerState& ly = layers_[t];
  BitBlock u(cfg_->basic.k);
  if (crc) {
    for (int i = 0; i < cfg_->basic.k; ++i) u.set(i, crc->u_inner[i]);
  } else {
    for (int i = 0; i < cfg_->basic.k; ++i) u.set(i, ly.app_u[i].hard());
  }
  out.u_hat[t] = std::move(u);
}

void BmstDecoder::retire(int t) {
  LayerState& ly = layers_[t];
  ly.up.clear();
  ly.down.clear();
  ly.to_c.clear();
  ly.chan.clear();
  ly.prior_diff.clear();
}

DecodeResult BmstDecoder::forward_backward(const std::vector<SymbolBlock>& y) {
  start(y);
  hi_ = cfg_->blocks() - 1;
  for (int t = 0; t <= hi_; ++t) init_layer(t);

  DecodeResult out;
  out.u_hat.resize(cfg_->l);
  out.iterations.assign(cfg_->l, cfg_->i_max);
  out.reasons.assign(cfg_->l, StopReason::IterMax);

  double h_prev = 0.0;
  int iters = cfg_->i_max;
  StopReason reason = StopReason::IterMax;
  for (int i_iter = 1; i_iter <= cfg_->i_max; ++i_iter) {
    for (int t = 0; t < cfg_->blocks(); ++t) layer_update(t);
    for (int t = cfg_->blocks(); t-- > 0;) layer_update(t);
    if (cfg_->stop_rule == StopRule::Entropy) {
      const double h = frame_entropy();
      if (trace_) *trace_ << "fb iter=" << i_iter << " h=" << h << '\n';
      if (std::abs(h - h_prev) <= cfg_->epsilon) {
        iters = i_iter;
        reason = StopReason::Entropy;
        break;
      }
      h_prev = h;
    } else if (cfg_->stop_rule == StopRule::Crc) {
      bool all_ok = true;
      for (int t = 0; t < cfg_->l && all_ok; ++t) {
        BitBlock u_hat(layers_[t].app_u.size());
        for (std::size_t i = 0; i < layers_[t].app_u.size(); ++i)
          u_hat.set(i, layers_[t].app_u[i].hard());
        all_ok = crc_check(u_hat);
      }
      if (all_ok) {
        iters = i_iter;
        reason = StopReason::Crc;
        break;
      }
    }
  }

  for (int t = 0; t < cfg_->l; ++t) {
    out.iterations[t] = iters;
    out.reasons[t] = reason;
    if (cfg_->stop_rule == StopRule::Crc) {
      const CrcDecision d = crc_stop_and_list(*cfg_, layers_[t].app_u,
                                              layers_[t].to_c,
                                              reason == StopReason::IterMax);
      out.reasons[t] = d.reason;
      harvest(t, &d, out);
    } else {
      harvest(t, nullptr, out);
    }
  }
  return out;
}

DecodeResult BmstDecoder::sliding_window(const std::vector<SymbolBlock>& y) {
  start(y);
  // Global initialization over the first d received blocks.
  hi_ = std::min(cfg_->d, cfg_->blocks()) - 1;
  for (int t = 0; t <= hi_; ++t) init_layer(t);

  DecodeResult out;
  out.u_hat.resize(cfg_->l);
  out.iterations.assign(cfg_->l, 0);
  out.reasons.assign(cfg_->l, StopReason::IterMax);

  for (int t = 0; t < cfg_->l; ++t) {
    // Local initialization of the layer sliding in.
    if (t + cfg_->d <= cfg_->blocks() - 1) {
      hi_ = t + cfg_->d;
      init_layer(hi_);
    } else {
      hi_ = cfg_->blocks() - 1;
    }
    const int extent = std::min(cfg_->d, cfg_->blocks() - 1 - t);

    double h_prev = 0.0;
    int iters = cfg_->i_max;
    StopReason reason = StopReason::IterMax;
    CrcDecision crc;
    for (int i_iter = 1; i_iter <= cfg_->i_max; ++i_iter) {
      for (int i = 0; i <= extent; ++i) layer_update(t + i);
      for (int i = extent; i >= 0; --i) layer_update(t + i);
      if (cfg_->stop_rule == StopRule::Entropy) {
        const double h = output_entropy(t);
        if (trace_) *trace_ << "t=" << t << " iter=" << i_iter << " h=" << h << '\n';
        if (std::abs(h - h_prev) <= cfg_->epsilon) {
          iters = i_iter;
          reason = StopReason::Entropy;
          break;
        }
        h_prev = h;
      } else if (cfg_->stop_rule == StopRule::Crc) {
        crc = crc_stop_and_list(*cfg_, layers_[t].app_u, layers_[t].to_c, false);
        if (crc.decided) {
          iters = i_iter;
          reason = crc.reason;
          break;
        }
      }
    }

    const bool use_crc = cfg_->stop_rule == StopRule::Crc;
    if (use_crc && !crc.decided)
      crc = crc_stop_and_list(*cfg_, layers_[t].app_u, layers_[t].to_c, true);
    if (use_crc) reason = crc.reason;
    out.iterations[t] = iters;
    out.reasons[t] = reason;
    harvest(t, use_crc ? &crc : nullptr, out);
    if (trace_)
      *trace_ << "t=" << t << " stop=" << to_string(reason)
              << " iters=" << iters << '\n';

    // Cancelation: fold the decided block into the posteriors it touches,
    // then drop its edges before the window slides.
    if (cfg_->m > 0) {
      BitBlock v_hat;
      if (cfg_->cancel_mode == CancelMode::Hard) {
        if (use_crc) {
          v_hat = crc.v_hat;
        } else {
          BitBlock u_inner(layers_[t].app_u.size());
          for (std::size_t i = 0; i < layers_[t].app_u.size(); ++i)
            u_inner.set(i, layers_[t].app_u[i].hard());
          v_hat = cfg_->basic.kind == CodeKind::CrcConv
                      ? cfg_->basic.trellis->encode(u_inner)
                      : encode_basic(cfg_->basic, u_inner);
        }
      }
      cancel(t, v_hat);
    }
    lo_ = t + 1;
    retire(t);
  }
  return out;
}

DecodeResult decode_forward_backward(const BmstConfig& cfg,
                                     const std::vector<SymbolBlock>& y,
                                     double sigma) {
  BmstDecoder dec(cfg, sigma);
  return dec.forward_backward(y);
}

DecodeResult decode_sliding_window(const BmstConfig& cfg,
                                   const std::vector<SymbolBlock>& y,
                                   double sigma) {
  BmstDecoder dec(cfg, sigma);
  return dec.sliding_window(y);
}

}  // namespace bmst
