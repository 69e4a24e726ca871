#include "bmst/interleaver.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "bmst/rng.hpp"

namespace bmst {

Interleaver::Interleaver(std::vector<std::uint32_t> pi, int s, std::uint64_t seed)
    : pi_(std::move(pi)), s_(s), seed_(seed) {
  std::vector<bool> seen(pi_.size(), false);
  for (std::uint32_t p : pi_) {
    if (p >= pi_.size() || seen[p]) throw std::invalid_argument("interleaver: not a permutation");
    seen[p] = true;
  }
}

Interleaver Interleaver::identity(std::size_t n) {
  std::vector<std::uint32_t> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = static_cast<std::uint32_t>(i);
  return Interleaver(std::move(pi), 0, 0);
}

int Interleaver::default_spread(std::size_t n) {
  return static_cast<int>(std::floor(std::sqrt(static_cast<double>(n) / 4.0)));
}

Interleaver Interleaver::s_random(std::size_t n, int s, std::uint64_t seed,
                                  int max_restarts) {
  if (n < 1) throw std::invalid_argument("s_random: n must be >= 1");
  if (s < 0) throw std::invalid_argument("s_random: s must be >= 0");
  Philox rng(seed, 0x5ECAu);
  std::vector<std::uint32_t> pool(n), pi(n);
  for (int restart = 0; restart <= max_restarts; ++restart) {
    for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
    fisher_yates(pool, rng);
    std::size_t filled = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      ok = false;
      for (std::size_t c = filled; c < n; ++c) {
        const std::uint32_t cand = pool[c];
        bool fits = true;
        const std::size_t lo = i > static_cast<std::size_t>(s) ? i - s : 0;
        for (std::size_t j = lo; j < i; ++j) {
          if (std::abs(static_cast<long>(pi[j]) - static_cast<long>(cand)) <= s) {
            fits = false;
            break;
          }
        }
        if (fits) {
          pi[i] = cand;
          std::swap(pool[c], pool[filled]);
          ++filled;
          ok = true;
          break;
        }
      }
    }
    if (ok) return Interleaver(std::move(pi), s, seed);
  }
  throw std::runtime_error("s_random: generation failed after restarts; lower s");
}

bool Interleaver::spread_holds() const {
  const long n = static_cast<long>(pi_.size());
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n && j - i <= s_; ++j)
      if (std::abs(static_cast<long>(pi_[i]) - static_cast<long>(pi_[j])) <= s_)
        return false;
  return true;
}

BitBlock Interleaver::apply(const BitBlock& v) const {
  if (v.size() != pi_.size()) throw std::invalid_argument("interleave: length mismatch");
  BitBlock out(v.size());
  for (std::size_t j = 0; j < pi_.size(); ++j) out.set(j, v[pi_[j]]);
  return out;
}

BitBlock Interleaver::apply_inverse(const BitBlock& w) const {
  if (w.size() != pi_.size()) throw std::invalid_argument("de-interleave: length mismatch");
  BitBlock out(w.size());
  for (std::size_t j = 0; j < pi_.size(); ++j) out.set(pi_[j], w[j]);
  return out;
}

void Interleaver::save_text(std::ostream& os) const {
  os << pi_.size() << ' ' << s_ << ' ' << seed_ << '\n';
  for (std::size_t j = 0; j < pi_.size(); ++j) {
    if (j) os << ' ';
    os << pi_[j];
  }
  os << '\n';
}

Interleaver Interleaver::load_text(std::istream& is) {
  std::size_t n = 0;
  int s = 0;
  std::uint64_t seed = 0;
  if (!(is >> n >> s >> seed)) throw std::runtime_error("interleaver: bad header line");
  std::vector<std::uint32_t> pi(n);
  for (std::size_t j = 0; j < n; ++j)
    if (!(is >> pi[j])) throw std::runtime_error("interleaver: truncated permutation");
  return Interleaver(std::move(pi), s, seed);
}

std::string Interleaver::to_text() const {
  std::ostringstream os;
  save_text(os);
  return os.str();
}

Interleaver Interleaver::from_text(const std::string& text) {
  std::istringstream is(text);
  return load_text(is);
}

}  // namespace bmst
