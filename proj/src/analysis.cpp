#include "bmst/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace bmst {

double BiPoly::total_mass() const {
  double s = 0.0;
  for (const auto& [ij, c] : terms_) s += c;
  return s;
}

BiPoly BiPoly::plus(const BiPoly& o) const {
  BiPoly out(std::min(i_cap_, o.i_cap_), std::min(j_cap_, o.j_cap_));
  out.dropped_ = dropped_ + o.dropped_;
  for (const auto& [ij, c] : terms_) out.add_term(ij.first, ij.second, c);
  for (const auto& [ij, c] : o.terms_) out.add_term(ij.first, ij.second, c);
  return out;
}

BiPoly BiPoly::times(const BiPoly& o) const {
  BiPoly out(std::min(i_cap_, o.i_cap_), std::min(j_cap_, o.j_cap_));
  out.dropped_ = dropped_ + o.dropped_;
  for (const auto& [ij1, c1] : terms_)
    for (const auto& [ij2, c2] : o.terms_)
      out.add_term(ij1.first + ij2.first, ij1.second + ij2.second, c1 * c2);
  return out;
}

BiPoly BiPoly::pow(int e) const {
  BiPoly acc = BiPoly::one(i_cap_, j_cap_);
  BiPoly base = *this;
  while (e > 0) {
    if (e & 1) acc = acc.times(base);
    e >>= 1;
    if (e) base = base.times(base);
  }
  return acc;
}

void BiPoly::scale(double f) {
  for (auto& [ij, c] : terms_) c *= f;
  dropped_ *= f;
}

namespace {

BiPoly iowef_from_codebook(const Codebook& cb, int i_cap, int j_cap) {
  BiPoly b(i_cap, j_cap);
  for (std::size_t idx = 0; idx < cb.size(); ++idx) {
    int iw = 0;
    for (int bit = 0; bit < cb.index_bits(); ++bit) iw += (idx >> bit) & 1u;
    b.add_term(iw, static_cast<int>(cb.word(idx).weight()), 1.0);
  }
  return b;
}

BiPoly iowef_conv_trellis(const Trellis& tr, int i_cap, int j_cap) {
  // alpha[state] accumulates X^(input weight) Y^(output weight) over paths.
  std::vector<BiPoly> alpha(tr.n_states(), BiPoly(i_cap, j_cap));
  alpha[0].add_term(0, 0, 1.0);
  std::vector<BiPoly> next(tr.n_states());
  for (int t = 0; t < tr.total_steps(); ++t) {
    const bool data = t < tr.data_steps();
    for (int s = 0; s < tr.n_states(); ++s) next[s] = BiPoly(i_cap, j_cap);
    for (int s = 0; s < tr.n_states(); ++s) {
      if (alpha[s].empty() && alpha[s].dropped_mass() == 0.0) continue;
      for (int u = 0; u < 2; ++u) {
        if (!data && u != tr.tail_input(s)) continue;
        const int ow = std::popcount(tr.branch_out(s, u));
        const int iw = data ? u : 0;  // tail inputs carry no information
        BiPoly step(i_cap, j_cap);
        step.add_term(iw, ow, 1.0);
        next[tr.next_state(s, u)] = next[tr.next_state(s, u)].plus(alpha[s].times(step));
      }
    }
    alpha.swap(next);
  }
  return alpha[0];
}

BiPoly iowef_enumerate(const BasicCodeSpec& spec, int i_cap, int j_cap) {
  if (spec.k > 24) throw std::invalid_argument("iowef_basic: k too large to enumerate");
  BiPoly b(i_cap, j_cap);
  for (std::uint32_t bits = 0; bits < (1u << spec.k); ++bits) {
    BitBlock u(spec.k);
    int iw = 0;
    for (int i = 0; i < spec.k; ++i) {
      const int v = (bits >> i) & 1u;
      u.set(i, v);
      iw += v;
    }
    b.add_term(iw, static_cast<int>(encode_basic(spec, u).weight()), 1.0);
  }
  return b;
}

}  // namespace

BiPoly iowef_basic(const BasicCodeSpec& spec, int i_cap, int j_cap) {
  if (i_cap < 0) i_cap = spec.inner_info();
  if (j_cap < 0) j_cap = spec.n;
  switch (spec.kind) {
    case CodeKind::RepetitionProduct:
    case CodeKind::SpcProduct:
    case CodeKind::Hamming74Product:
    case CodeKind::NordstromRobinsonProduct: {
      BiPoly unit(i_cap, j_cap);
      if (spec.kind == CodeKind::RepetitionProduct) {
        unit.add_term(0, 0, 1.0);
        unit.add_term(1, spec.unit_n, 1.0);
      } else if (spec.kind == CodeKind::SpcProduct) {
        for (std::uint32_t bits = 0; bits < (1u << spec.unit_k); ++bits) {
          const int iw = std::popcount(bits);
          unit.add_term(iw, iw + (iw & 1), 1.0);
        }
      } else {
        unit = iowef_from_codebook(*spec.codebook, i_cap, j_cap);
      }
      return unit.pow(spec.multiplicity);
    }
    case CodeKind::Conv:
      return iowef_conv_trellis(*spec.trellis, i_cap, j_cap);
    case CodeKind::CrcConv:
      // The CRC constraint is not representable on the inner trellis.
      return iowef_enumerate(spec, i_cap, j_cap);
  }
  throw std::logic_error("iowef_basic: unknown kind");
}

namespace {

double log_binom(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

std::vector<std::pair<int, double>> overlap_pmf(int n, int p, int q) {
  if (p < 0 || q < 0 || p > n || q > n)
    throw std::invalid_argument("overlap_pmf: weights out of range");
  const int r_min = std::max(0, p + q - n);
  const int r_max = std::min(p, q);
  std::vector<std::pair<int, double>> pmf;
  pmf.reserve(r_max - r_min + 1);
  const double denom = log_binom(n, q);
  for (int r = r_min; r <= r_max; ++r) {
    const double pr = std::exp(log_binom(p, r) + log_binom(n - p, q - r) - denom);
    pmf.emplace_back(p + q - 2 * r, pr);
  }
  return pmf;
}

BiPoly branch_metric(int n, int p, int q, const BiPoly& b) {
  BiPoly gamma(b.i_cap(), b.j_cap());
  // Collect sum_j B_{j,q} X^j once.
  std::vector<std::pair<int, double>> bq;
  for (const auto& [ij, c] : b.terms())
    if (ij.second == q) bq.emplace_back(ij.first, c);
  for (const auto& [w, pr] : overlap_pmf(n, p, q))
    for (const auto& [iw, c] : bq) gamma.add_term(iw, w, pr * c);
  return gamma;
}

BiPoly iowef_bmst_m1(const BiPoly& b, int n, int l, int i_cap, int j_cap,
                     double* dropped) {
  // State p records the previous basic codeword weight. alpha_0 seeds the
  // first transmitted block, whose weight is the fresh codeword weight.
  std::vector<BiPoly> alpha(n + 1, BiPoly(i_cap, j_cap));
  for (const auto& [ij, c] : b.terms()) {
    if (ij.second <= n) alpha[ij.second].add_term(ij.first, ij.second, c);
  }
  // Cache the branch metrics; the trellis is time invariant.
  std::vector<std::vector<BiPoly>> gamma(n + 1);
  for (int p = 0; p <= n; ++p) {
    gamma[p].reserve(n + 1);
    for (int q = 0; q <= n; ++q) gamma[p].push_back(branch_metric(n, p, q, b));
  }
  std::vector<BiPoly> next(n + 1);
  for (int t = 0; t < l; ++t) {
    const bool last = t == l - 1;
    for (int q = 0; q <= n; ++q) next[q] = BiPoly(i_cap, j_cap);
    for (int q = 0; q <= n; ++q) {
      if (last && q != 0) continue;  // only the terminated state matters
      for (int p = 0; p <= n; ++p) {
        if (alpha[p].empty()) continue;
        next[q] = next[q].plus(alpha[p].times(gamma[p][q]));
      }
    }
    alpha.swap(next);
  }
  if (dropped) {
    *dropped = 0.0;
    for (const auto& a : alpha) *dropped += a.dropped_mass();
  }
  return alpha[0];
}

std::map<int, double> spectrum_dj(const BiPoly& a, int l, int k) {
  std::map<int, double> dj;
  const double lk = static_cast<double>(l) * k;
  for (const auto& [ij, c] : a.terms()) {
    if (ij.first == 0) continue;
    dj[ij.second] += static_cast<double>(ij.first) / lk * c;
  }
  dj.erase(0);
  return dj;
}

void BerCurve::add(double gamma_db, double ber) {
  points.emplace_back(gamma_db, ber);
  std::sort(points.begin(), points.end());
}

double BerCurve::ber_at(double gamma_db) const {
  if (points.empty()) throw std::invalid_argument("BerCurve: empty");
  if (gamma_db <= points.front().first) return points.front().second;
  if (gamma_db >= points.back().first) return points.back().second;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (gamma_db <= points[i].first) {
      const auto& [g0, p0] = points[i - 1];
      const auto& [g1, p1] = points[i];
      const double f = (gamma_db - g0) / (g1 - g0);
      return std::exp(std::log(p0) + f * (std::log(p1) - std::log(p0)));
    }
  }
  return points.back().second;
}

double BerCurve::gamma_at(double ber) const {
  if (points.empty()) throw std::invalid_argument("BerCurve: empty");
  // Curves are monotone decreasing in gamma; find the bracketing segment.
  for (std::size_t i = 1; i < points.size(); ++i) {
    const auto& [g0, p0] = points[i - 1];
    const auto& [g1, p1] = points[i];
    if ((p0 >= ber && ber >= p1) || (p0 <= ber && ber <= p1)) {
      if (p0 == p1) return g0;
      const double f = (std::log(p0) - std::log(ber)) / (std::log(p0) - std::log(p1));
      return g0 + f * (g1 - g0);
    }
  }
  throw std::out_of_range("BerCurve::gamma_at: ber not bracketed by the curve");
}

BerCurve BerCurve::shifted_left(double db) const {
  BerCurve out;
  out.points = points;
  for (auto& [g, p] : out.points) g -= db;
  return out;
}

double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double genie_shift_db(int m, double l) {
  return 10.0 * std::log10(m + 1.0) - 10.0 * std::log10(1.0 + m / l);
}

BerCurve genie_bound(const BerCurve& f_o, int m, double l) {
  return f_o.shifted_left(genie_shift_db(m, l));
}

double union_bound_ber(const std::map<int, double>& dj, double rate,
                       double gamma_db) {
  const double es = rate * std::pow(10.0, gamma_db / 10.0);
  double bound = 0.0;
  for (const auto& [j, d] : dj) bound += d * q_func(std::sqrt(2.0 * j * es));
  return bound;
}

}  // namespace bmst
