#ifndef NILP_SERIES_HPP
#define NILP_SERIES_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "nilp/bch.hpp"
#include "nilp/freelie.hpp"

namespace nilp {

class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ModM drops everything in M(p-1) (terms t^m x with wt(x) = s and
// m > (p-1-s)c0, and all of L(p)); Exact keeps every term.
enum class Policy { ModM, Exact };

const char* policy_name(Policy p);
Policy parse_policy(const std::string& s);

struct LieSeries {
  Policy policy = Policy::ModM;
  std::map<int, LieElem> terms;  // exponent -> nonzero coefficient

  bool is_zero() const { return terms.empty(); }
  const LieElem& coeff(int m) const;
  bool operator==(const LieSeries& o) const { return policy == o.policy && terms == o.terms; }
  bool operator!=(const LieSeries& o) const { return !(*this == o); }
};

// Series arithmetic over one algebra. Every result is normalized: truncated by
// the policy and checked against the window m >= -(p-1)c0, violations raising
// OverflowError.
class SeriesSpace {
 public:
  SeriesSpace(const Algebra& L, Policy policy = Policy::ModM);

  const Algebra& algebra() const { return *L_; }
  Policy policy() const { return policy_; }
  int p() const { return L_->p(); }
  int c0() const { return L_->c0(); }
  int min_exp() const { return -(p() - 1) * c0(); }

  LieSeries zero() const { return LieSeries{policy_, {}}; }
  LieSeries monomial(int m, const LieElem& x) const;
  bool keeps(int m, const HallWord& w) const;
  void normalize(LieSeries& f) const;

  LieSeries add(const LieSeries& a, const LieSeries& b) const;
  LieSeries sub(const LieSeries& a, const LieSeries& b) const;
  LieSeries neg(const LieSeries& a) const { return scale_int(a, -1); }
  LieSeries scale(const LieSeries& a, FieldElem c) const;
  LieSeries scale_int(const LieSeries& a, long long c) const;
  LieSeries bracket(const LieSeries& a, const LieSeries& b) const;
  // Multiplies the coefficient of t^m by k-scalars given as a polynomial in t:
  // sum_j poly[j] t^{j + shift} * a.
  LieSeries mul_scalar_series(const LieSeries& a, const std::vector<FieldElem>& poly,
                              int shift) const;
  LieSeries map_coeffs(const LieSeries& a,
                       const std::function<LieElem(const LieElem&)>& f) const;

  // sigma^e with sigma(t^m x) = t^{pm} sigma(x). Negative e requires every
  // exponent to be divisible by p^{-e}.
  LieSeries sigma(const LieSeries& a, int e) const;

  LieSeries degree_part(const LieSeries& a, int d) const;
  LieSeries degree_below(const LieSeries& a, int d) const;
  LieSeries positive_part(const LieSeries& a) const;
  LieSeries negative_part(const LieSeries& a) const;

  // sum_{0 <= i < N0} sigma^i on L_k.
  LieElem trace(const LieElem& x) const;

  LieSeries R(const LieSeries& b) const;
  LieSeries S(const LieSeries& b) const;

 private:
  void check_policy(const LieSeries& a) const;
  void add_term(LieSeries& f, int m, const LieElem& x) const;

  const Algebra* L_;
  Policy policy_;
};

struct SeriesOps {
  const SeriesSpace* S;
  using Value = LieSeries;
  int p() const { return S->p(); }
  Value zero() const { return S->zero(); }
  bool is_zero(const Value& v) const { return v.is_zero(); }
  Value add(const Value& a, const Value& b) const { return S->add(a, b); }
  Value scale_int(const Value& a, long long c) const { return S->scale_int(a, c); }
  Value bracket(const Value& a, const Value& b) const { return S->bracket(a, b); }
};

// Power series in t over k, index = exponent.
using KSeries = std::vector<FieldElem>;

KSeries kseries_mul(const Field& k, const KSeries& a, const KSeries& b, int len);
// a^m for a with nonzero constant term; m may be negative.
KSeries kseries_pow(const Field& k, const KSeries& a, long long m, int len);
KSeries kseries_exp_trunc(const Field& k, const KSeries& a, int len);
KSeries kseries_log_trunc(const Field& k, const KSeries& a, int len);

// h(t) = t (1 + sum_i alpha_i t^{c0 + p i}).
struct AutSpec {
  int p = 0;
  int c0 = 0;
  std::vector<FieldElem> alphas;
  // eps^p = sum_i A_i t^{c0 + p i}, listed for c0 + p i < p c0.
  std::vector<FieldElem> A;

  static AutSpec make(const Field& k, int c0, std::vector<FieldElem> alphas);
  bool identity() const;
  FieldElem alpha(int i) const { return i < static_cast<int>(alphas.size()) ? alphas[i] : 0; }
  FieldElem a_coeff(int i) const { return i < static_cast<int>(A.size()) ? A[i] : 0; }
  // Coefficients of h(t)/t below t^len.
  KSeries h_over_t(int len) const;
  // Coefficients of eps^p below t^len.
  KSeries eps_p(int len) const;
};

// h(g(t)) for g = t * (series), as coefficients of h(g)/t below t^len.
KSeries compose_h(const Field& k, const AutSpec& h, const KSeries& g_over_t, int len);

// (id (x) h): t^m -> h(t)^m.
LieSeries substitute_h(const SeriesSpace& S, const LieSeries& F, const AutSpec& h);

// e = sum_{a in Z+(p), a < a_max} t^{-a} D_{a0} + alpha0 D0.
LieSeries build_e(const SeriesSpace& S);

}  // namespace nilp

#endif
