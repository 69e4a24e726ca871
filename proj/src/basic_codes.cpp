#include "bmst/basic_codes.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bmst {

namespace {

// Unit generator of the [7,4] Hamming code, systematic [I | P].
const int kHamming74P[4][3] = {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};

Codebook hamming74_codebook() {
  std::vector<BitBlock> words;
  words.reserve(16);
  for (int idx = 0; idx < 16; ++idx) {
    BitBlock w(7);
    for (int i = 0; i < 4; ++i) w.set(i, (idx >> i) & 1);
    for (int p = 0; p < 3; ++p) {
      int bit = 0;
      for (int i = 0; i < 4; ++i) bit ^= ((idx >> i) & 1) & kHamming74P[i][p];
      w.set(4 + p, bit);
    }
    words.push_back(std::move(w));
  }
  return Codebook(std::move(words), 4);
}

void validate_msgs(const MsgVec& msgs, std::size_t expect) {
  if (msgs.size() != expect)
    throw std::invalid_argument("siso_decode: message length mismatch");
  for (const BinMsg& m : msgs) {
    const double s = m.p0 + m.p1;
    if (!(m.p0 >= 0.0) || !(m.p1 >= 0.0) || !(s > 0.5) || !(s < 1.5))
      throw std::runtime_error("siso_decode: degenerate input message");
  }
}

// Exact MAP over an explicit codebook on one unit slice.
void codebook_map_slice(const Codebook& cb, const BinMsg* in, BinMsg* ext,
                        BinMsg* app) {
  const std::size_t n = cb.word_len();
  const int kbits = cb.index_bits();
  for (std::size_t j = 0; j < n; ++j) ext[j] = {0.0, 0.0};
  for (int i = 0; i < kbits; ++i) app[i] = {0.0, 0.0};
  for (std::size_t idx = 0; idx < cb.size(); ++idx) {
    const BitBlock& cw = cb.word(idx);
    double w = 1.0;
    for (std::size_t j = 0; j < n; ++j) w *= cw[j] ? in[j].p1 : in[j].p0;
    for (std::size_t j = 0; j < n; ++j) {
      const double wo = w / (cw[j] ? in[j].p1 : in[j].p0);
      (cw[j] ? ext[j].p1 : ext[j].p0) += wo;
    }
    for (int i = 0; i < kbits; ++i)
      ((idx >> i) & 1u ? app[i].p1 : app[i].p0) += w;
  }
  for (std::size_t j = 0; j < n; ++j) ext[j].normalize();
  for (int i = 0; i < kbits; ++i) app[i].normalize();
}

// Repetition unit: two codewords, so the extrinsic on bit j is the
// normalized product of all other bits' messages.
void repetition_slice(int n, const BinMsg* in, BinMsg* ext, BinMsg* app) {
  std::vector<BinMsg> prefix(n + 1), suffix(n + 1);
  prefix[0] = {1.0, 1.0};
  suffix[n] = {1.0, 1.0};
  for (int j = 0; j < n; ++j) {
    prefix[j + 1] = {prefix[j].p0 * in[j].p0, prefix[j].p1 * in[j].p1};
    prefix[j + 1].normalize();
  }
  for (int j = n; j-- > 0;) {
    suffix[j] = {suffix[j + 1].p0 * in[j].p0, suffix[j + 1].p1 * in[j].p1};
    suffix[j].normalize();
  }
  for (int j = 0; j < n; ++j) ext[j] = msg_product(prefix[j], suffix[j + 1]);
  *app = prefix[n];
}

// Single parity check unit: check-node rule gives the exact extrinsic.
void spc_slice(int n, const BinMsg* in, BinMsg* ext, BinMsg* app) {
  std::vector<double> prefix(n + 1), suffix(n + 1);
  prefix[0] = 1.0;
  suffix[n] = 1.0;
  for (int j = 0; j < n; ++j) prefix[j + 1] = prefix[j] * in[j].diff();
  for (int j = n; j-- > 0;) suffix[j] = suffix[j + 1] * in[j].diff();
  for (int j = 0; j < n; ++j) ext[j] = BinMsg::from_diff(prefix[j] * suffix[j + 1]);
  for (int i = 0; i + 1 < n; ++i) app[i] = msg_product(in[i], ext[i]);
}

int parse_int(const std::string& s) {
  int v = 0;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw std::invalid_argument("basic code spec: bad integer '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

std::uint32_t parse_octal(const std::string& s) {
  std::uint32_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '7') throw std::invalid_argument("basic code spec: bad octal '" + s + "'");
    v = (v << 3) | static_cast<std::uint32_t>(c - '0');
  }
  return v;
}

}  // namespace

BasicCodeSpec BasicCodeSpec::repetition_product(int unit_n, int multiplicity) {
  if (unit_n < 1 || multiplicity < 1)
    throw std::invalid_argument("repetition product: bad parameters");
  BasicCodeSpec s;
  s.kind = CodeKind::RepetitionProduct;
  s.unit_k = 1;
  s.unit_n = unit_n;
  s.multiplicity = multiplicity;
  s.k = multiplicity;
  s.n = unit_n * multiplicity;
  return s;
}

BasicCodeSpec BasicCodeSpec::spc_product(int unit_n, int multiplicity) {
  if (unit_n < 2 || multiplicity < 1)
    throw std::invalid_argument("spc product: bad parameters");
  BasicCodeSpec s;
  s.kind = CodeKind::SpcProduct;
  s.unit_k = unit_n - 1;
  s.unit_n = unit_n;
  s.multiplicity = multiplicity;
  s.k = s.unit_k * multiplicity;
  s.n = unit_n * multiplicity;
  return s;
}

BasicCodeSpec BasicCodeSpec::hamming74_product(int multiplicity) {
  if (multiplicity < 1) throw std::invalid_argument("hamming product: bad multiplicity");
  BasicCodeSpec s;
  s.kind = CodeKind::Hamming74Product;
  s.unit_k = 4;
  s.unit_n = 7;
  s.multiplicity = multiplicity;
  s.k = 4 * multiplicity;
  s.n = 7 * multiplicity;
  s.codebook = std::make_shared<Codebook>(hamming74_codebook());
  return s;
}

BasicCodeSpec BasicCodeSpec::conv_code(ConvCode code, int k, bool with_crc) {
  BasicCodeSpec s;
  s.kind = with_crc ? CodeKind::CrcConv : CodeKind::Conv;
  s.conv = code;
  s.k = k;
  const int steps = s.inner_info() + code.memory;
  s.trellis = std::make_shared<Trellis>(code, s.inner_info());
  s.n = steps * code.n_out;
  s.unit_k = s.k;
  s.unit_n = s.n;
  s.multiplicity = 1;
  return s;
}

BasicCodeSpec BasicCodeSpec::nr_product(int multiplicity) {
  if (multiplicity < 1) throw std::invalid_argument("nr product: bad multiplicity");
  BasicCodeSpec s;
  s.kind = CodeKind::NordstromRobinsonProduct;
  s.unit_k = 8;
  s.unit_n = 15;
  s.multiplicity = multiplicity;
  s.k = 8 * multiplicity;
  s.n = 15 * multiplicity;
  s.codebook = std::make_shared<Codebook>(build_nordstrom_robinson());
  return s;
}

int BasicCodeSpec::d_min() const {
  switch (kind) {
    case CodeKind::RepetitionProduct:
      return unit_n;
    case CodeKind::SpcProduct:
      return 2;
    case CodeKind::Hamming74Product:
      return 3;
    case CodeKind::NordstromRobinsonProduct:
      return 5;
    case CodeKind::Conv:
    case CodeKind::CrcConv: {
      // Min-weight diverged path through the terminated trellis. For
      // CrcConv this ignores the CRC constraint, a lower bound.
      const Trellis& tr = *trellis;
      const int inf = std::numeric_limits<int>::max() / 2;
      std::vector<int> div(tr.n_states(), inf), next_div;
      for (int t = 0; t < tr.total_steps(); ++t) {
        const bool data = t < tr.data_steps();
        next_div.assign(tr.n_states(), inf);
        for (int s = 0; s < tr.n_states(); ++s) {
          if (div[s] == inf) continue;
          for (int u = 0; u < 2; ++u) {
            if (!data && u != tr.tail_input(s)) continue;
            const int w = std::popcount(tr.branch_out(s, u));
            auto& slot = next_div[tr.next_state(s, u)];
            slot = std::min(slot, div[s] + w);
          }
        }
        if (data) {
          // Leave the all-zero path here with input 1.
          const int w = std::popcount(tr.branch_out(0, 1));
          auto& slot = next_div[tr.next_state(0, 1)];
          slot = std::min(slot, w);
        }
        div = next_div;
      }
      return div[0];
    }
  }
  throw std::logic_error("d_min: unknown kind");
}

BasicCodeSpec BasicCodeSpec::parse(const std::string& text) {
  const auto parts = split(text, ':');
  const std::string& head = parts[0];
  auto parse_product = [&](const std::string& body) {
    const auto xs = split(body, 'x');
    if (xs.size() != 2) throw std::invalid_argument("basic code spec: expected <n>x<N> in '" + text + "'");
    return std::pair<int, int>(parse_int(xs[0]), parse_int(xs[1]));
  };

  if (head == "rc") {
    if (parts.size() != 2) throw std::invalid_argument("basic code spec: rc:<n>x<N>");
    auto [un, mult] = parse_product(parts[1]);
    return repetition_product(un, mult);
  }
  if (head == "spc") {
    if (parts.size() != 2) throw std::invalid_argument("basic code spec: spc:<n>x<N>");
    auto [un, mult] = parse_product(parts[1]);
    return spc_product(un, mult);
  }
  if (head == "hamming74") {
    if (parts.size() != 2) throw std::invalid_argument("basic code spec: hamming74:<N>");
    return hamming74_product(parse_int(parts[1]));
  }
  if (head == "nr15") {
    if (parts.size() != 2) throw std::invalid_argument("basic code spec: nr15:<N>");
    return nr_product(parse_int(parts[1]));
  }
  if (head == "conv" || head == "crc32+conv") {
    if (parts.size() != 4)
      throw std::invalid_argument("basic code spec: " + head + ":<n>-1-<m>:octal(...):k=<k>");
    const auto dims = split(parts[1], '-');
    if (dims.size() != 3 || parse_int(dims[1]) != 1)
      throw std::invalid_argument("basic code spec: only rate-1/n convolutional codes, got '" + parts[1] + "'");
    const int n_out = parse_int(dims[0]);
    const int memory = parse_int(dims[2]);

    const std::string& taps_part = parts[2];
    bool rsc = false;
    std::string inner;
    if (taps_part.rfind("rsc-octal(", 0) == 0) {
      rsc = true;
      inner = taps_part.substr(10);
    } else if (taps_part.rfind("octal(", 0) == 0) {
      inner = taps_part.substr(6);
    } else {
      throw std::invalid_argument("basic code spec: expected octal(...) in '" + text + "'");
    }
    if (inner.empty() || inner.back() != ')')
      throw std::invalid_argument("basic code spec: unterminated octal list in '" + text + "'");
    inner.pop_back();
    std::vector<std::uint32_t> taps;
    for (const auto& tok : split(inner, ',')) taps.push_back(parse_octal(tok));
    if (static_cast<int>(taps.size()) != n_out)
      throw std::invalid_argument("basic code spec: tap count must equal n");
    for (std::uint32_t tap : taps)
      if (tap >> (memory + 1))
        throw std::invalid_argument("basic code spec: tap wider than memory+1 bits");

    if (parts[3].rfind("k=", 0) != 0)
      throw std::invalid_argument("basic code spec: expected k=<int> in '" + text + "'");
    const int k = parse_int(parts[3].substr(2));
    if (k < 1) throw std::invalid_argument("basic code spec: k must be >= 1");

    ConvCode code;
    if (rsc) {
      std::vector<std::uint32_t> numerators(taps.begin() + 1, taps.end());
      code = ConvCode::recursive_systematic(memory, taps[0], numerators);
    } else {
      code = ConvCode::feedforward(memory, taps);
    }
    return conv_code(code, k, head == "crc32+conv");
  }
  throw std::invalid_argument("basic code spec: unknown kind '" + head + "'");
}

std::string BasicCodeSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case CodeKind::RepetitionProduct:
      os << "rc:" << unit_n << 'x' << multiplicity;
      break;
    case CodeKind::SpcProduct:
      os << "spc:" << unit_n << 'x' << multiplicity;
      break;
    case CodeKind::Hamming74Product:
      os << "hamming74:" << multiplicity;
      break;
    case CodeKind::NordstromRobinsonProduct:
      os << "nr15:" << multiplicity;
      break;
    case CodeKind::Conv:
    case CodeKind::CrcConv: {
      os << (kind == CodeKind::CrcConv ? "crc32+conv:" : "conv:");
      os << conv.n_out << "-1-" << conv.memory << ':';
      const bool rsc = conv.feedback != (std::uint32_t{1} << conv.memory);
      os << (rsc ? "rsc-octal(" : "octal(");
      for (std::size_t i = (rsc ? 0u : 0u); i < conv.forward.size(); ++i) {
        if (i) os << ',';
        std::uint32_t v = (rsc && i == 0) ? conv.feedback : conv.forward[i];
        std::string oct;
        if (v == 0) oct = "0";
        while (v) {
          oct.insert(oct.begin(), static_cast<char>('0' + (v & 7)));
          v >>= 3;
        }
        os << oct;
      }
      os << "):k=" << k;
      break;
    }
  }
  return os.str();
}

BitBlock encode_basic(const BasicCodeSpec& spec, const BitBlock& u) {
  if (static_cast<int>(u.size()) != spec.k)
    throw std::invalid_argument("encode_basic: info length mismatch");
  switch (spec.kind) {
    case CodeKind::RepetitionProduct: {
      BitBlock v(spec.n);
      for (int m = 0; m < spec.multiplicity; ++m)
        for (int j = 0; j < spec.unit_n; ++j) v.set(m * spec.unit_n + j, u[m]);
      return v;
    }
    case CodeKind::SpcProduct: {
      BitBlock v(spec.n);
      for (int m = 0; m < spec.multiplicity; ++m) {
        int parity = 0;
        for (int i = 0; i < spec.unit_k; ++i) {
          const int b = u[m * spec.unit_k + i];
          v.set(m * spec.unit_n + i, b);
          parity ^= b;
        }
        v.set(m * spec.unit_n + spec.unit_k, parity);
      }
      return v;
    }
    case CodeKind::Hamming74Product:
    case CodeKind::NordstromRobinsonProduct: {
      const Codebook& cb = *spec.codebook;
      BitBlock v(spec.n);
      for (int m = 0; m < spec.multiplicity; ++m) {
        std::size_t idx = 0;
        for (int i = 0; i < spec.unit_k; ++i)
          idx |= static_cast<std::size_t>(u[m * spec.unit_k + i]) << i;
        const BitBlock& cw = cb.word(idx);
        for (int j = 0; j < spec.unit_n; ++j) v.set(m * spec.unit_n + j, cw[j]);
      }
      return v;
    }
    case CodeKind::Conv:
      return spec.trellis->encode(u);
    case CodeKind::CrcConv:
      return spec.trellis->encode(crc_attach(u));
  }
  throw std::logic_error("encode_basic: unknown kind");
}

SisoOut siso_decode(const BasicCodeSpec& spec, const MsgVec& msg_v_in) {
  validate_msgs(msg_v_in, static_cast<std::size_t>(spec.n));
  switch (spec.kind) {
    case CodeKind::Conv:
    case CodeKind::CrcConv:
      return bcjr(*spec.trellis, msg_v_in);
    case CodeKind::RepetitionProduct: {
      SisoOut out;
      out.ext_v.resize(msg_v_in.size());
      out.app_u.resize(spec.k);
      for (int m = 0; m < spec.multiplicity; ++m)
        repetition_slice(spec.unit_n, &msg_v_in[m * spec.unit_n],
                         &out.ext_v[m * spec.unit_n], &out.app_u[m]);
      return out;
    }
    case CodeKind::SpcProduct: {
      SisoOut out;
      out.ext_v.resize(msg_v_in.size());
      out.app_u.resize(spec.k);
      for (int m = 0; m < spec.multiplicity; ++m)
        spc_slice(spec.unit_n, &msg_v_in[m * spec.unit_n],
                  &out.ext_v[m * spec.unit_n], &out.app_u[m * spec.unit_k]);
      return out;
    }
    case CodeKind::Hamming74Product:
    case CodeKind::NordstromRobinsonProduct: {
      SisoOut out;
      out.ext_v.resize(msg_v_in.size());
      out.app_u.resize(spec.k);
      for (int m = 0; m < spec.multiplicity; ++m)
        codebook_map_slice(*spec.codebook, &msg_v_in[m * spec.unit_n],
                           &out.ext_v[m * spec.unit_n],
                           &out.app_u[m * spec.unit_k]);
      return out;
    }
  }
  throw std::logic_error("siso_decode: unknown kind");
}

SisoOut brute_force_map(const Codebook& cb, const MsgVec& msg_v_in) {
  validate_msgs(msg_v_in, cb.word_len());
  SisoOut out;
  out.ext_v.resize(cb.word_len());
  out.app_u.resize(cb.index_bits());
  codebook_map_slice(cb, msg_v_in.data(), out.ext_v.data(), out.app_u.data());
  return out;
}

GF2Matrix generator_matrix(const BasicCodeSpec& spec) {
  if (!spec.is_linear())
    throw std::invalid_argument("generator_matrix: code is nonlinear");
  GF2Matrix g(spec.k, spec.n);
  for (int i = 0; i < spec.k; ++i) {
    BitBlock e(spec.k);
    e.set(i, 1);
    const BitBlock row = encode_basic(spec, e);
    for (int j = 0; j < spec.n; ++j)
      if (row[j]) g.set(i, j, 1);
  }
  return g;
}

GF2Matrix parity_matrix(const BasicCodeSpec& spec) {
  return generator_matrix(spec).dual_basis();
}

}  // namespace bmst
