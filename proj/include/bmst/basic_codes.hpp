#ifndef BMST_BASIC_CODES_HPP
#define BMST_BASIC_CODES_HPP

#include <memory>
#include <string>

#include "bmst/bitblock.hpp"
#include "bmst/codebook.hpp"
#include "bmst/crc32.hpp"
#include "bmst/gf2_matrix.hpp"
#include "bmst/msg.hpp"
#include "bmst/trellis.hpp"

namespace bmst {

enum class CodeKind {
  RepetitionProduct,
  SpcProduct,
  Hamming74Product,
  Conv,
  CrcConv,
  NordstromRobinsonProduct,
};

// A short code with encode and SISO-decode behavior. Product kinds are N
// independent copies of a small unit code, decoded unit by unit. Conv kinds
// are terminated rate-1/n convolutional codes decoded with BCJR; CrcConv
// prefixes the info bits with nothing and appends a 32-bit CRC before the
// inner convolutional encoder. The SISO decoder ignores the CRC constraint.
struct BasicCodeSpec {
  CodeKind kind = CodeKind::RepetitionProduct;
  int k = 0;  // data bits per block (excludes CRC parity)
  int n = 0;  // code bits per block
  int unit_k = 0, unit_n = 0, multiplicity = 1;
  ConvCode conv;
  std::shared_ptr<const Trellis> trellis;    // Conv / CrcConv
  std::shared_ptr<const Codebook> codebook;  // unit codebook where applicable

  // Bits entering the inner encoder: k, or k + 32 for CrcConv. This is also
  // the length of siso app_u output.
  int inner_info() const { return kind == CodeKind::CrcConv ? k + kCrcBits : k; }

  bool is_linear() const { return kind != CodeKind::NordstromRobinsonProduct; }
  double rate() const { return static_cast<double>(k) / n; }

  // Minimum Hamming weight of a nonzero codeword.
  int d_min() const;

  // Spec strings, e.g. "rc:2x5000", "spc:8x2500", "hamming74:2500",
  // "conv:2-1-2:octal(5,7):k=10000", "conv:2-1-2:rsc-octal(5,7):k=50",
  // "crc32+conv:2-1-2:octal(5,7):k=10000", "nr15:800".
  static BasicCodeSpec parse(const std::string& text);
  std::string to_string() const;

  static BasicCodeSpec repetition_product(int unit_n, int multiplicity);
  static BasicCodeSpec spc_product(int unit_n, int multiplicity);
  static BasicCodeSpec hamming74_product(int multiplicity);
  static BasicCodeSpec conv_code(ConvCode code, int k, bool with_crc = false);
  static BasicCodeSpec nr_product(int multiplicity);
};

BitBlock encode_basic(const BasicCodeSpec& spec, const BitBlock& u);

// Extrinsic codeword messages plus a-posteriori messages for the inner info
// bits, computed under a uniform prior on the data.
SisoOut siso_decode(const BasicCodeSpec& spec, const MsgVec& msg_v_in);

// Exact MAP over an explicit codebook by Bayes' rule. app_u is the pmf of
// the index bits, LSB first.
SisoOut brute_force_map(const Codebook& cb, const MsgVec& msg_v_in);

// Generator matrices of the unit/base code for the verification path
// (linear kinds only).
GF2Matrix generator_matrix(const BasicCodeSpec& spec);
GF2Matrix parity_matrix(const BasicCodeSpec& spec);

}  // namespace bmst

#endif
