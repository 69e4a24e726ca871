#ifndef BMST_INTERLEAVER_HPP
#define BMST_INTERLEAVER_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bmst/bitblock.hpp"

namespace bmst {

// Permutation of {0..n-1} in gather form: interleaving writes
// out[j] = in[pi[j]]. De-interleaving scatters with the same array.
// An S-random permutation additionally satisfies
// |i - j| <= s  =>  |pi(i) - pi(j)| > s  for all i != j.
class Interleaver {
 public:
  Interleaver() = default;
  Interleaver(std::vector<std::uint32_t> pi, int s, std::uint64_t seed);

  static Interleaver identity(std::size_t n);

  // Randomized rejection construction with restarts; deterministic per
  // (n, s, seed). Throws std::runtime_error when max_restarts is exhausted
  // (the caller may lower s).
  static Interleaver s_random(std::size_t n, int s, std::uint64_t seed,
                              int max_restarts = 1000);

  // Default spread floor(sqrt(n/4)).
  static int default_spread(std::size_t n);

  std::size_t size() const { return pi_.size(); }
  int spread() const { return s_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<std::uint32_t>& perm() const { return pi_; }

  bool spread_holds() const;  // exhaustive scan of the S-random condition

  BitBlock apply(const BitBlock& v) const;          // interleave
  BitBlock apply_inverse(const BitBlock& w) const;  // de-interleave

  template <typename T>
  std::vector<T> gather(const std::vector<T>& in) const {
    std::vector<T> out(in.size());
    for (std::size_t j = 0; j < pi_.size(); ++j) out[j] = in[pi_[j]];
    return out;
  }
  template <typename T>
  std::vector<T> scatter(const std::vector<T>& in) const {
    std::vector<T> out(in.size());
    for (std::size_t j = 0; j < pi_.size(); ++j) out[pi_[j]] = in[j];
    return out;
  }

  // Text form: first line "n s seed", second line the pi values.
  void save_text(std::ostream& os) const;
  static Interleaver load_text(std::istream& is);
  std::string to_text() const;
  static Interleaver from_text(const std::string& text);

 private:
  std::vector<std::uint32_t> pi_;
  int s_ = 0;
  std::uint64_t seed_ = 0;
};

}  // namespace bmst

#endif
