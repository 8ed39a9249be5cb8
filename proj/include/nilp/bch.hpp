#ifndef NILP_BCH_HPP
#define NILP_BCH_HPP

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "nilp/freelie.hpp"

namespace nilp {

// Residues of 1/k! mod p for k < p.
int inv_factorial(int p, int k);
int binomial_mod(long long n, long long k, int p);

// Element of the tensor algebra T(V) over k, V spanned by the algebra's
// letters, modulo words of degree > max_deg or weight > weight cap. This is
// the enveloping algebra of the free Lie algebra in its word basis.
struct EnvTerm {
  std::uint8_t deg;
  std::uint8_t wt;
  std::uint64_t idx;  // word as a base-G number
  FieldElem c;
};

struct EnvElem {
  std::vector<EnvTerm> terms;  // sorted by (deg, idx), no zeros
  bool is_zero() const { return terms.empty(); }
  FieldElem constant() const { return !terms.empty() && terms[0].deg == 0 ? terms[0].c : 0; }
};

EnvElem env_scalar(FieldElem c);
EnvElem env_from_lie(const Algebra& L, const LieElem& x);
EnvElem env_add(const Algebra& L, const EnvElem& a, const EnvElem& b);
EnvElem env_scale(const Algebra& L, const EnvElem& a, FieldElem c);
EnvElem env_mul(const Algebra& L, const EnvElem& a, const EnvElem& b);
bool env_equal(const EnvElem& a, const EnvElem& b);

EnvElem exp_trunc(const Algebra& L, const LieElem& x);
// Truncated log of an element with constant term 1, in T(V).
EnvElem log_env(const Algebra& L, const EnvElem& u);
// Hall coordinates of a Lie element of T(V); nullopt when u is not Lie.
std::optional<LieElem> lie_part(const Algebra& L, const EnvElem& u);
// Throws DomainError when the constant term is not 1.
LieElem log_trunc(const Algebra& L, const EnvElem& u);

// x o y = log(exp x exp y) through the enveloping algebra.
LieElem ch_mul(const Algebra& L, const LieElem& x, const LieElem& y);

// Adapter for LieElem as a Lie structure.
struct LieOps {
  const Algebra* L;
  using Value = LieElem;
  int p() const { return L->p(); }
  Value zero() const { return {}; }
  bool is_zero(const Value& v) const { return v.is_zero(); }
  Value add(const Value& a, const Value& b) const { return L->add(a, b); }
  Value scale_int(const Value& a, long long c) const { return L->scale_int(a, c); }
  Value bracket(const Value& a, const Value& b) const { return L->bracket(a, b); }
};

// The Campbell-Hausdorff series log(exp X exp Y) computed once in the free
// Lie algebra on two letters of class < p, then evaluated in any Lie
// structure by substituting X, Y.
class UniversalBCH {
 public:
  explicit UniversalBCH(int p);

  int p() const { return p_; }
  const Algebra& free_algebra() const { return *free_; }
  const LieElem& series() const { return z_; }

  template <class Ops>
  typename Ops::Value operator()(const Ops& ops, const typename Ops::Value& x,
                                 const typename Ops::Value& y) const {
    using V = typename Ops::Value;
    if (ops.is_zero(x)) return y;
    if (ops.is_zero(y)) return x;
    std::vector<std::optional<V>> memo(free_->dim());
    std::function<const V&(std::uint32_t)> value = [&](std::uint32_t id) -> const V& {
      if (!memo[id]) {
        const HallWord& w = free_->word(id);
        if (w.degree == 1) {
          memo[id] = w.letter == 0 ? x : y;
        } else {
          memo[id] = ops.bracket(value(w.left), value(w.right));
        }
      }
      return *memo[id];
    };
    V out = ops.zero();
    for (const Term& t : z_.terms) {
      const V& v = value(t.id);
      if (!ops.is_zero(v)) out = ops.add(out, ops.scale_int(v, t.c));
    }
    return out;
  }

 private:
  int p_;
  std::unique_ptr<Field> k_;
  std::unique_ptr<Algebra> free_;
  LieElem z_;
};

// Value + derivative * U with U^2 = 0.
template <class V>
struct Jet {
  V v;
  V d;
};

template <class Base>
struct JetOps {
  Base base;
  using Value = Jet<typename Base::Value>;
  int p() const { return base.p(); }
  Value zero() const { return {base.zero(), base.zero()}; }
  bool is_zero(const Value& a) const { return base.is_zero(a.v) && base.is_zero(a.d); }
  Value add(const Value& a, const Value& b) const {
    return {base.add(a.v, b.v), base.add(a.d, b.d)};
  }
  Value scale_int(const Value& a, long long c) const {
    return {base.scale_int(a.v, c), base.scale_int(a.d, c)};
  }
  Value bracket(const Value& a, const Value& b) const {
    return {base.bracket(a.v, b.v), base.add(base.bracket(a.d, b.v), base.bracket(a.v, b.d))};
  }
};

template <class Ops>
typename Ops::Value neg(const Ops& ops, const typename Ops::Value& x) {
  return ops.scale_int(x, -1);
}

template <class Ops>
typename Ops::Value sub(const Ops& ops, const typename Ops::Value& x,
                        const typename Ops::Value& y) {
  return ops.add(x, ops.scale_int(y, -1));
}

// (ad x)y = [y, x].
template <class Ops>
typename Ops::Value ad(const Ops& ops, const typename Ops::Value& x,
                       const typename Ops::Value& y) {
  return ops.bracket(y, x);
}

// sum_{k >= k0} coef(k) (ad x)^{k - k0} y for a residue sequence coef.
template <class Ops>
typename Ops::Value ad_series(const Ops& ops, const typename Ops::Value& x,
                              const typename Ops::Value& y, const std::vector<int>& coef) {
  auto out = ops.zero();
  auto term = y;
  for (std::size_t k = 0; k < coef.size(); ++k) {
    if (ops.is_zero(term)) break;
    if (coef[k] != 0) out = ops.add(out, ops.scale_int(term, coef[k]));
    term = ops.bracket(term, x);
  }
  return out;
}

// exp~(ad x)(y) = sum_{k<p} (ad x)^k y / k!
template <class Ops>
typename Ops::Value exp_ad(const Ops& ops, const typename Ops::Value& x,
                           const typename Ops::Value& y) {
  std::vector<int> c(ops.p());
  for (int k = 0; k < ops.p(); ++k) c[k] = inv_factorial(ops.p(), k);
  return ad_series(ops, x, y, c);
}

// E0(ad x)(y) = sum_{k>=1} (ad x)^{k-1} y / k!
template <class Ops>
typename Ops::Value e0_apply(const Ops& ops, const typename Ops::Value& x,
                             const typename Ops::Value& y) {
  std::vector<int> c(ops.p() - 1);
  for (int k = 1; k < ops.p(); ++k) c[k - 1] = inv_factorial(ops.p(), k);
  return ad_series(ops, x, y, c);
}

// (Ad x)y = (-x) o y o x.
template <class Ops>
typename Ops::Value Ad(const Ops& ops, const UniversalBCH& ch, const typename Ops::Value& x,
                       const typename Ops::Value& y) {
  return ch(ops, ch(ops, neg(ops, x), y), x);
}

// l[n] = l o B(l) o ... o B^{n-1}(l).
template <class Ops>
typename Ops::Value orbit_product(
    const Ops& ops, const UniversalBCH& ch, const typename Ops::Value& l,
    const std::function<typename Ops::Value(const typename Ops::Value&)>& B, int n) {
  auto out = ops.zero();
  auto cur = l;
  for (int i = 0; i < n; ++i) {
    out = ch(ops, out, cur);
    if (i + 1 < n) cur = B(cur);
  }
  return out;
}

// Derivation of an algebra determined by its values on the letters.
class Derivation {
 public:
  Derivation(const Algebra& L, const std::vector<LieElem>& on_letters);
  LieElem apply(const LieElem& x) const;
  // exp~ of the derivation; an automorphism when it raises a class-< p filtration.
  LieElem exp_apply(const LieElem& x) const;

 private:
  const Algebra* L_;
  std::vector<LieElem> on_basis_;
};

// Inverse of the Vandermonde matrix M[n][i] = n^i, n, i = 1..p-1, over F_p;
// row i gives l_i as a combination of l[1..p-1].
std::vector<std::vector<int>> vandermonde_inverse(int p);

// l_1..l_{p-1} (index 0 unused) with l[n] = sum_i l_i n^i.
template <class Ops>
std::vector<typename Ops::Value> orbit_coefficients(
    const Ops& ops, const UniversalBCH& ch, const typename Ops::Value& l,
    const std::function<typename Ops::Value(const typename Ops::Value&)>& B) {
  const int p = ops.p();
  std::vector<typename Ops::Value> vals(p, ops.zero());
  auto acc = ops.zero();
  auto cur = l;
  for (int n = 1; n < p; ++n) {
    acc = ch(ops, acc, cur);
    vals[n] = acc;
    cur = B(cur);
  }
  auto W = vandermonde_inverse(p);
  std::vector<typename Ops::Value> out(p, ops.zero());
  for (int i = 1; i < p; ++i) {
    for (int n = 1; n < p; ++n) {
      if (W[i][n]) out[i] = ops.add(out[i], ops.scale_int(vals[n], W[i][n]));
    }
  }
  return out;
}

// B_m by the double sum over 0 <= v <= k <= m of (-1)^v C(k,v) v^m / (k+1).
// Defined mod p for m <= p - 2; larger m needs 1/p and is rejected.
int bernoulli_mod_p(int m, int p);
boost::rational<long long> bernoulli_exact(int m);

// Polynomial over F_p, coefficient of U^i at index i.
using PolyFp = std::vector<int>;

// F_{i_1..i_s} with F(n) = sum_{0<=m_1<...<m_s<n} m_1^{i_1}...m_s^{i_s} mod p.
// Requires i_1 + ... + i_s + s < p.
PolyFp power_sum_poly(const std::vector<int>& indices, int p);
int poly_eval(const PolyFp& f, long long n, int p);

}  // namespace nilp

#endif
