#include "nilp/series.hpp"

#include <string>

namespace nilp {

const char* policy_name(Policy p) { return p == Policy::ModM ? "mod_M(p-1)" : "exact"; }

Policy parse_policy(const std::string& s) {
  if (s == "mod_M(p-1)" || s == "modM" || s == "mod-M") return Policy::ModM;
  if (s == "exact" || s == "none") return Policy::Exact;
  throw DomainError("unknown truncation policy '" + s + "'");
}

const LieElem& LieSeries::coeff(int m) const {
  static const LieElem empty;
  auto it = terms.find(m);
  return it == terms.end() ? empty : it->second;
}

SeriesSpace::SeriesSpace(const Algebra& L, Policy policy) : L_(&L), policy_(policy) {}

bool SeriesSpace::keeps(int m, const HallWord& w) const {
  if (policy_ == Policy::Exact) return true;
  if (w.weight >= p()) return false;
  return m <= (p() - 1 - w.weight) * c0();
}

void SeriesSpace::check_policy(const LieSeries& a) const {
  if (a.policy != policy_) throw DomainError("series policies differ");
}

void SeriesSpace::normalize(LieSeries& f) const {
  f.policy = policy_;
  for (auto it = f.terms.begin(); it != f.terms.end();) {
    const int m = it->first;
    if (m < min_exp() && !it->second.is_zero()) {
      throw OverflowError("exponent " + std::to_string(m) + " below the window " +
                          std::to_string(min_exp()));
    }
    auto& terms = it->second.terms;
    std::erase_if(terms, [&](const Term& t) { return !keeps(m, L_->word(t.id)); });
    if (terms.empty()) {
      it = f.terms.erase(it);
    } else {
      ++it;
    }
  }
}

void SeriesSpace::add_term(LieSeries& f, int m, const LieElem& x) const {
  if (x.is_zero()) return;
  auto it = f.terms.find(m);
  if (it == f.terms.end()) {
    f.terms.emplace(m, x);
  } else {
    it->second = L_->add(it->second, x);
  }
}

LieSeries SeriesSpace::monomial(int m, const LieElem& x) const {
  LieSeries f = zero();
  add_term(f, m, x);
  normalize(f);
  return f;
}

LieSeries SeriesSpace::add(const LieSeries& a, const LieSeries& b) const {
  check_policy(a);
  check_policy(b);
  LieSeries out = a;
  for (const auto& [m, x] : b.terms) add_term(out, m, x);
  normalize(out);
  return out;
}

LieSeries SeriesSpace::sub(const LieSeries& a, const LieSeries& b) const {
  return add(a, scale_int(b, -1));
}

LieSeries SeriesSpace::scale(const LieSeries& a, FieldElem c) const {
  LieSeries out = zero();
  for (const auto& [m, x] : a.terms) add_term(out, m, L_->scale(x, c));
  normalize(out);
  return out;
}

LieSeries SeriesSpace::scale_int(const LieSeries& a, long long c) const {
  LieSeries out = zero();
  for (const auto& [m, x] : a.terms) add_term(out, m, L_->scale_int(x, c));
  normalize(out);
  return out;
}

LieSeries SeriesSpace::bracket(const LieSeries& a, const LieSeries& b) const {
  check_policy(a);
  check_policy(b);
  LieSeries out = zero();
  for (const auto& [m1, x] : a.terms) {
    for (const auto& [m2, y] : b.terms) {
      const int m = m1 + m2;
      if (policy_ == Policy::ModM && m > (p() - 2) * c0()) continue;
      add_term(out, m, L_->bracket(x, y));
    }
  }
  normalize(out);
  return out;
}

LieSeries SeriesSpace::mul_scalar_series(const LieSeries& a, const std::vector<FieldElem>& poly,
                                         int shift) const {
  LieSeries out = zero();
  for (const auto& [m, x] : a.terms) {
    for (std::size_t j = 0; j < poly.size(); ++j) {
      if (poly[j] == 0) continue;
      const int e = m + static_cast<int>(j) + shift;
      if (policy_ == Policy::ModM && e > (p() - 2) * c0()) break;
      add_term(out, e, L_->scale(x, poly[j]));
    }
  }
  normalize(out);
  return out;
}

LieSeries SeriesSpace::map_coeffs(const LieSeries& a,
                                  const std::function<LieElem(const LieElem&)>& f) const {
  LieSeries out = zero();
  for (const auto& [m, x] : a.terms) add_term(out, m, f(x));
  normalize(out);
  return out;
}

LieSeries SeriesSpace::sigma(const LieSeries& a, int e) const {
  LieSeries out = zero();
  for (const auto& [m, x] : a.terms) {
    long long mm = m;
    if (e >= 0) {
      for (int i = 0; i < e; ++i) mm *= p();
    } else {
      for (int i = 0; i < -e; ++i) {
        if (mm % p() != 0) {
          throw DomainError("sigma^-1 of t^" + std::to_string(m) + ": exponent not divisible by p");
        }
        mm /= p();
      }
    }
    if (policy_ == Policy::ModM && mm > (p() - 2) * c0()) continue;
    add_term(out, static_cast<int>(mm), L_->sigma(x, e));
  }
  normalize(out);
  return out;
}

LieSeries SeriesSpace::degree_part(const LieSeries& a, int d) const {
  LieSeries out = zero();
  for (const auto& [m, x] : a.terms) add_term(out, m, L_->degree_part(x, d));
  return out;
}

LieSeries SeriesSpace::degree_below(const LieSeries& a, int d) const {
  LieSeries out = zero();
  for (const auto& [m, x] : a.terms) {
    add_term(out, m, L_->filter(x, [d](const HallWord& w) { return w.degree < d; }));
  }
  return out;
}

LieSeries SeriesSpace::positive_part(const LieSeries& a) const {
  LieSeries out = zero();
  for (const auto& [m, x] : a.terms) {
    if (m > 0) out.terms.emplace(m, x);
  }
  return out;
}

LieSeries SeriesSpace::negative_part(const LieSeries& a) const {
  LieSeries out = zero();
  for (const auto& [m, x] : a.terms) {
    if (m < 0) out.terms.emplace(m, x);
  }
  return out;
}

LieElem SeriesSpace::trace(const LieElem& x) const {
  LieElem out;
  for (int i = 0; i < L_->n0(); ++i) out = L_->add(out, L_->sigma(x, i));
  return out;
}

LieSeries SeriesSpace::R(const LieSeries& b) const {
  check_policy(b);
  const Field& k = L_->field();
  LieSeries out = zero();
  for (const auto& [m, x] : b.terms) {
    if (m > 0) continue;
    if (m == 0) {
      add_term(out, 0, L_->scale(trace(x), k.alpha0()));
      continue;
    }
    int n1 = -m, e = 0;
    while (n1 % p() == 0) {
      n1 /= p();
      ++e;
    }
    add_term(out, -n1, L_->sigma(x, -e));
  }
  normalize(out);
  return out;
}

LieSeries SeriesSpace::S(const LieSeries& b) const {
  check_policy(b);
  const Field& k = L_->field();
  LieSeries out = zero();
  for (const auto& [m, x] : b.terms) {
    if (m > 0) {
      if (policy_ == Policy::Exact) throw DomainError("S on positive exponents needs truncation");
      long long e = m;
      LieElem y = x;
      while (true) {
        LieSeries piece = monomial(static_cast<int>(e), y);
        if (piece.is_zero()) break;
        add_term(out, static_cast<int>(e), L_->neg(piece.coeff(static_cast<int>(e))));
        e *= p();
        y = L_->sigma(y, 1);
      }
    } else if (m == 0) {
      // sum_{0 <= j < i < N0} sigma^j(alpha0) sigma^i(x)
      FieldElem partial = 0;
      for (int i = 1; i < L_->n0(); ++i) {
        partial = k.add(partial, k.frobenius(k.alpha0(), i - 1));
        add_term(out, 0, L_->scale(L_->sigma(x, i), partial));
      }
    } else {
      int n = -m;
      for (int i = 1; n % p() == 0; ++i) {
        n /= p();
        add_term(out, -n, L_->sigma(x, -i));
      }
    }
  }
  normalize(out);
  return out;
}

KSeries kseries_mul(const Field& k, const KSeries& a, const KSeries& b, int len) {
  KSeries out(len, 0);
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) < len; ++j) {
      if (b[j] == 0) continue;
      out[i + j] = k.add(out[i + j], k.mul(a[i], b[j]));
    }
  }
  return out;
}

namespace {

KSeries kseries_inv(const Field& k, const KSeries& a, int len) {
  if (a.empty() || a[0] == 0) throw DomainError("series without constant term is not invertible");
  KSeries out(len, 0);
  const FieldElem inv0 = k.inv(a[0]);
  for (int n = 0; n < len; ++n) {
    FieldElem s = n == 0 ? k.one() : 0;
    for (int j = 1; j <= n && j < static_cast<int>(a.size()); ++j) {
      s = k.sub(s, k.mul(a[j], out[n - j]));
    }
    out[n] = k.mul(s, inv0);
  }
  return out;
}

}  // namespace

KSeries kseries_pow(const Field& k, const KSeries& a, long long m, int len) {
  KSeries base = m < 0 ? kseries_inv(k, a, len) : a;
  base.resize(len, 0);
  unsigned long long e = m < 0 ? static_cast<unsigned long long>(-m) : static_cast<unsigned long long>(m);
  KSeries out(len, 0);
  if (len > 0) out[0] = 1;
  while (e) {
    if (e & 1) out = kseries_mul(k, out, base, len);
    e >>= 1;
    if (e) base = kseries_mul(k, base, base, len);
  }
  return out;
}

KSeries kseries_exp_trunc(const Field& k, const KSeries& a, int len) {
  if (!a.empty() && a[0] != 0) throw DomainError("exp of a series with constant term");
  KSeries out(len, 0), term(len, 0);
  if (len == 0) return out;
  out[0] = term[0] = 1;
  for (int j = 1; j < k.p(); ++j) {
    term = kseries_mul(k, term, a, len);
    const FieldElem c = k.from_int(inv_factorial(k.p(), j));
    for (int i = 0; i < len; ++i) out[i] = k.add(out[i], k.mul(term[i], c));
  }
  return out;
}

KSeries kseries_log_trunc(const Field& k, const KSeries& a, int len) {
  if (a.empty() || a[0] != 1) throw DomainError("log of a series with constant term != 1");
  KSeries u(a.begin(), a.begin() + std::min<std::size_t>(a.size(), len));
  u.resize(len, 0);
  u[0] = 0;
  KSeries out(len, 0), term(len, 0);
  term[0] = 1;
  for (int j = 1; j < k.p(); ++j) {
    term = kseries_mul(k, term, u, len);
    FieldElem c = k.from_int(k.inv_mod_p(j));
    if (j % 2 == 0) c = k.neg(c);
    for (int i = 0; i < len; ++i) out[i] = k.add(out[i], k.mul(term[i], c));
  }
  return out;
}

AutSpec AutSpec::make(const Field& k, int c0, std::vector<FieldElem> alphas) {
  const int p = k.p();
  if (c0 <= 0 || c0 % p != 0) throw DomainError("c0 must be a positive multiple of p");
  AutSpec h;
  h.p = p;
  h.c0 = c0;
  while (!alphas.empty() && alphas.back() == 0) alphas.pop_back();
  for (FieldElem a : alphas) {
    if (a >= static_cast<FieldElem>(k.q())) throw DomainError("alpha outside the residue field");
  }
  if (!alphas.empty() && alphas[0] == 0) {
    throw DomainError("alpha_0(h) must be nonzero unless h is the identity");
  }
  h.alphas = std::move(alphas);
  const int len = p * c0;
  KSeries logu = kseries_log_trunc(k, h.h_over_t(len), len);
  for (int e = 1; e < len; ++e) {
    if (logu[e] != 0 && (e < c0 || (e - c0) % p != 0)) {
      throw DomainError("log(h(t)/t) has a term t^" + std::to_string(e) +
                        " not of the form c0 + p i");
    }
  }
  for (int e = c0; e < len; e += p) h.A.push_back(logu[e]);
  while (!h.A.empty() && h.A.back() == 0) h.A.pop_back();
  return h;
}

bool AutSpec::identity() const { return alphas.empty(); }

KSeries AutSpec::h_over_t(int len) const {
  KSeries out(len, 0);
  if (len > 0) out[0] = 1;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const int e = c0 + p * static_cast<int>(i);
    if (e < len) out[e] = alphas[i];
  }
  return out;
}

KSeries AutSpec::eps_p(int len) const {
  KSeries out(len, 0);
  for (std::size_t i = 0; i < A.size(); ++i) {
    const int e = c0 + p * static_cast<int>(i);
    if (e < len) out[e] = A[i];
  }
  return out;
}

KSeries compose_h(const Field& k, const AutSpec& h, const KSeries& g_over_t, int len) {
  KSeries acc(len, 0);
  if (len > 0) acc[0] = 1;
  for (std::size_t i = 0; i < h.alphas.size(); ++i) {
    if (h.alphas[i] == 0) continue;
    const int e = h.c0 + h.p * static_cast<int>(i);
    if (e >= len) break;
    KSeries g_pow = kseries_pow(k, g_over_t, e, len - e);
    for (int j = 0; j + e < len; ++j) acc[j + e] = k.add(acc[j + e], k.mul(h.alphas[i], g_pow[j]));
  }
  return kseries_mul(k, g_over_t, acc, len);
}

LieSeries substitute_h(const SeriesSpace& S, const LieSeries& F, const AutSpec& h) {
  if (h.identity()) return F;
  if (S.policy() == Policy::Exact) throw DomainError("substitution needs a truncating policy");
  const Field& k = S.algebra().field();
  const int top = (S.p() - 2) * S.c0();
  const int len = top - S.min_exp() + 1;
  const KSeries base = h.h_over_t(len);
  LieSeries out = S.zero();
  for (const auto& [m, x] : F.terms) {
    const int n = top - m + 1;
    if (n <= 0) continue;
    KSeries pw = kseries_pow(k, base, m, n);
    out = S.add(out, S.mul_scalar_series(S.monomial(m, x), pw, 0));
  }
  return out;
}

LieSeries build_e(const SeriesSpace& S) {
  const Algebra& L = S.algebra();
  LieSeries e = S.zero();
  for (int a = 1; a < L.a_max(); ++a) {
    if (a % S.p() == 0) continue;
    e = S.add(e, S.monomial(-a, L.d(a, 0)));
  }
  return S.add(e, S.monomial(0, L.d(0, 0)));
}

}  // namespace nilp
