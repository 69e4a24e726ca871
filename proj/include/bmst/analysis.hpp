#ifndef BMST_ANALYSIS_HPP
#define BMST_ANALYSIS_HPP

#include <map>
#include <utility>
#include <vector>

#include "bmst/basic_codes.hpp"

namespace bmst {

// Truncated bivariate polynomial with nonnegative real coefficients.
// X tracks input (information) weight, Y output (codeword) weight.
// Arithmetic silently drops terms beyond the caps and accounts the mass.
class BiPoly {
 public:
  BiPoly() = default;
  BiPoly(int i_cap, int j_cap) : i_cap_(i_cap), j_cap_(j_cap) {}

  static BiPoly one(int i_cap, int j_cap) {
    BiPoly p(i_cap, j_cap);
    p.add_term(0, 0, 1.0);
    return p;
  }

  int i_cap() const { return i_cap_; }
  int j_cap() const { return j_cap_; }

  void add_term(int i, int j, double c) {
    if (c == 0.0) return;
    if (i > i_cap_ || j > j_cap_) {
      dropped_ += c;
      return;
    }
    terms_[{i, j}] += c;
  }

  double coeff(int i, int j) const {
    const auto it = terms_.find({i, j});
    return it == terms_.end() ? 0.0 : it->second;
  }

  const std::map<std::pair<int, int>, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  double total_mass() const;
  double dropped_mass() const { return dropped_; }
  void note_dropped(double mass) { dropped_ += mass; }

  BiPoly plus(const BiPoly& o) const;
  BiPoly times(const BiPoly& o) const;
  BiPoly pow(int e) const;
  void scale(double f);

 private:
  std::map<std::pair<int, int>, double> terms_;
  int i_cap_ = 0, j_cap_ = 0;
  double dropped_ = 0.0;
};

// Exact input-output weight enumerator B(X, Y) of the basic code. For
// products this is B_unit^N, for convolutional kinds a trellis transfer
// computation, otherwise codebook enumeration. Caps < 0 mean exact (i_cap =
// k, j_cap = n).
BiPoly iowef_basic(const BasicCodeSpec& spec, int i_cap = -1, int j_cap = -1);

// Hypergeometric overlap law: weight of the sum of a fixed weight-p vector
// and a uniformly permuted weight-q vector of length n. Returns (w, prob)
// pairs over the legal overlap range.
std::vector<std::pair<int, double>> overlap_pmf(int n, int p, int q);

// Branch metric of the ensemble trellis for memory-1 superposition:
// gamma_{p->q} = sum_r Pr{w = p+q-2r} sum_j B_{j,q} X^j Y^{p+q-2r}.
BiPoly branch_metric(int n, int p, int q, const BiPoly& b);

// Ensemble IOWEF A(X, Y) for m = 1 by the forward recursion over states
// 0..n recording the previous codeword weight. dropped, when given, gets
// the total truncated mass across all stages.
BiPoly iowef_bmst_m1(const BiPoly& b, int n, int l, int i_cap, int j_cap,
                     double* dropped = nullptr);

// Bit-multiplicity spectrum D_j = sum_i (i / (L k)) A_{i,j}.
std::map<int, double> spectrum_dj(const BiPoly& a, int l, int k);

// BER-vs-Eb/N0 curve, points sorted by gamma.
struct BerCurve {
  std::vector<std::pair<double, double>> points;  // (gamma_db, ber)

  void add(double gamma_db, double ber);
  // Log-linear interpolation in ber; clamps outside the support.
  double ber_at(double gamma_db) const;
  // Gamma where the curve crosses the given ber (log-linear).
  double gamma_at(double ber) const;
  BerCurve shifted_left(double db) const;
};

double q_func(double x);

// 10log10(m+1) - 10log10(1 + m/l). Pass l = infinity for the memory-only
// gain ceiling.
double genie_shift_db(int m, double l);

// Lower bound on the superposition system's BER from the basic-code curve.
BerCurve genie_bound(const BerCurve& f_o, int m, double l);

// Standard union bound substitute: sum_j D_j Q(sqrt(2 j R 10^(g/10))).
double union_bound_ber(const std::map<int, double>& dj, double rate,
                       double gamma_db);

}  // namespace bmst

#endif
