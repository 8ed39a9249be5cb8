#include "nilp/lifts.hpp"

#include <algorithm>
#include <unordered_map>

namespace nilp {

namespace {

const LieElem kZero{};

std::vector<int> base_labels(const Algebra& L) {
  std::vector<int> out;
  for (int i = 0; i < L.num_gens(); ++i) {
    const GenId& g = L.gen(i);
    if (g.a != 0 && g.n == 0) out.push_back(g.a);
  }
  return out;
}

LetterMap zero_map(const Algebra& L) {
  LetterMap m;
  for (int a : base_labels(L)) m.on_a[a] = {};
  return m;
}

LetterMap identity_map(const Algebra& L) {
  LetterMap m;
  for (int a : base_labels(L)) m.on_a[a] = L.d(a, 0);
  m.on_d0 = L.d0();
  return m;
}

LetterMap map_sub(const Algebra& L, const LetterMap& x, const LetterMap& y) {
  LetterMap out = x;
  for (auto& [a, v] : out.on_a) v = L.sub(v, y.at(a));
  out.on_d0 = L.sub(x.on_d0, y.on_d0);
  return out;
}

// Dense Gaussian elimination over F_p for sum_i x_i cols[i] = rhs.
struct FpSolve {
  bool ok = false;
  std::vector<int> x;
  std::vector<std::vector<int>> kernel;
};

FpSolve fp_solve(const std::vector<IdealBasis::Row>& cols, const IdealBasis::Row& rhs, int p) {
  std::unordered_map<std::uint32_t, int> index;
  auto coord = [&](std::uint32_t c) {
    auto it = index.find(c);
    if (it != index.end()) return it->second;
    const int r = static_cast<int>(index.size());
    index.emplace(c, r);
    return r;
  };
  for (const auto& col : cols)
    for (const auto& [c, v] : col) coord(c);
  for (const auto& [c, v] : rhs) coord(c);
  const int R = static_cast<int>(index.size()), C = static_cast<int>(cols.size());
  std::vector<std::vector<int>> M(R, std::vector<int>(C + 1, 0));
  for (int j = 0; j < C; ++j)
    for (const auto& [c, v] : cols[j]) M[index[c]][j] = v;
  for (const auto& [c, v] : rhs) M[index[c]][C] = v;

  std::vector<long long> inv(p, 0);
  for (int v = 1; v < p; ++v)
    for (int w = 1; w < p; ++w)
      if (v * w % p == 1) inv[v] = w;
  std::vector<int> pivot_col;
  int row = 0;
  for (int j = 0; j < C && row < R; ++j) {
    int piv = row;
    while (piv < R && M[piv][j] == 0) ++piv;
    if (piv == R) continue;
    std::swap(M[piv], M[row]);
    const long long s = inv[M[row][j]];
    for (int& v : M[row]) v = static_cast<int>(v * s % p);
    for (int r = 0; r < R; ++r) {
      if (r == row || M[r][j] == 0) continue;
      const int f = M[r][j];
      for (int c = j; c <= C; ++c) {
        if (M[row][c]) M[r][c] = ((M[r][c] - f * M[row][c]) % p + p) % p;
      }
    }
    pivot_col.push_back(j);
    ++row;
  }
  FpSolve out;
  for (int r = row; r < R; ++r) {
    if (M[r][C] != 0) return out;
  }
  out.ok = true;
  out.x.assign(C, 0);
  for (int r = 0; r < row; ++r) out.x[pivot_col[r]] = M[r][C];
  std::vector<bool> is_pivot(C, false);
  for (int j : pivot_col) is_pivot[j] = true;
  for (int f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    std::vector<int> k(C, 0);
    k[f] = 1;
    for (int r = 0; r < row; ++r) k[pivot_col[r]] = (p - M[r][f]) % p;
    out.kernel.push_back(std::move(k));
  }
  return out;
}

LieElem combine(const Algebra& L, const std::vector<LieElem>& xs, const std::vector<int>& c) {
  LieElem out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (c[i]) L.axpy(out, L.field().from_int(c[i]), xs[i]);
  }
  return out;
}

// F_p-basis of the sigma-fixed part of span(xs).
std::vector<LieElem> sigma_fixed(const Algebra& L, const std::vector<LieElem>& xs) {
  IdealBasis flat(L);
  std::vector<IdealBasis::Row> cols;
  for (const LieElem& x : xs) cols.push_back(flat.flatten(L.sub(L.sigma(x, 1), x)));
  FpSolve s = fp_solve(cols, {}, L.p());
  std::vector<LieElem> out;
  for (const auto& k : s.kernel) out.push_back(combine(L, xs, k));
  return out;
}

std::vector<LieElem> fp_unit_basis(const Algebra& L) {
  std::vector<LieElem> out;
  const Field& k = L.field();
  for (std::uint32_t id = 0; id < L.dim(); ++id) {
    FieldElem w = 1;
    for (int j = 0; j < k.n0(); ++j, w = k.mul(w, k.gen())) out.push_back(L.basis(id, w));
  }
  return out;
}

std::vector<FieldElem> k_basis(const Field& k) {
  std::vector<FieldElem> out;
  FieldElem w = 1;
  for (int j = 0; j < k.n0(); ++j, w = k.mul(w, k.gen())) out.push_back(w);
  return out;
}

Rational p_power(int p, int n) {
  Rational r(1);
  for (int i = 0; i < std::abs(n); ++i) r *= p;
  return n >= 0 ? r : Rational(1) / r;
}

}  // namespace

const LieElem& LetterMap::at(int a) const {
  if (a == 0) return on_d0;
  auto it = on_a.find(a);
  return it == on_a.end() ? kZero : it->second;
}

std::vector<LieElem> LetterMap::on_letters(const Algebra& L) const {
  std::vector<LieElem> out(L.num_gens());
  for (int i = 0; i < L.num_gens(); ++i) {
    const GenId& g = L.gen(i);
    out[i] = g.a == 0 ? on_d0 : L.sigma(at(g.a), g.n);
  }
  return out;
}

Automorphism::Automorphism(const Algebra& L, const LetterMap& m) : L_(&L), m_(m) {
  const std::vector<LieElem> letters = m.on_letters(L);
  on_basis_.resize(L.dim());
  for (std::uint32_t id = 0; id < L.dim(); ++id) {
    const HallWord& w = L.word(id);
    on_basis_[id] = w.degree == 1 ? letters[w.letter]
                                  : L.bracket(on_basis_[w.left], on_basis_[w.right]);
  }
}

Automorphism Automorphism::identity(const Algebra& L) { return Automorphism(L, identity_map(L)); }

LieElem Automorphism::apply(const LieElem& x) const {
  LieElem out;
  for (const Term& t : x.terms) L_->axpy(out, t.c, on_basis_[t.id]);
  return out;
}

LieSeries Automorphism::apply(const SeriesSpace& S, const LieSeries& f) const {
  return S.map_coeffs(f, [this](const LieElem& x) { return apply(x); });
}

Automorphism Automorphism::compose(const Automorphism& other) const {
  LetterMap m;
  for (const auto& [a, v] : other.m_.on_a) m.on_a[a] = apply(v);
  m.on_d0 = apply(other.m_.on_d0);
  return Automorphism(*L_, m);
}

LieSeries apply_to_e(const SeriesSpace& S, const LetterMap& m) {
  const Algebra& L = S.algebra();
  LieSeries out = S.zero();
  for (const auto& [a, v] : m.on_a) out = S.add(out, S.monomial(-a, v));
  return S.add(out, S.monomial(0, L.scale(m.on_d0, L.field().alpha0())));
}

LetterMap log_automorphism(const Automorphism& A) {
  const Algebra& L = A.algebra();
  const int p = L.p();
  const LetterMap id = identity_map(L);
  LetterMap v = map_sub(L, A.letters(), id);
  for (int iter = 0; iter < p; ++iter) {
    Derivation D(L, v.on_letters(L));
    LetterMap next = v;
    auto correct = [&](const LieElem& g, const LieElem& ag) {
      LieElem r = L.sub(ag, g);
      LieElem term = D.apply(g);
      for (int k = 2; k < p; ++k) {
        term = D.apply(term);
        if (term.is_zero()) break;
        L.axpy(r, L.field().neg(L.field().from_int(inv_factorial(p, k))), term);
      }
      return r;
    };
    for (auto& [a, x] : next.on_a) x = correct(id.at(a), A.letters().at(a));
    next.on_d0 = correct(id.on_d0, A.letters().on_d0);
    bool same = next.on_d0 == v.on_d0;
    for (const auto& [a, x] : next.on_a) same = same && x == v.at(a);
    v = std::move(next);
    if (same) break;
  }
  return v;
}

LiftSolution solve_lift(const SeriesSpace& S, const UniversalBCH& ch, const AutSpec& h) {
  const Algebra& L = S.algebra();
  const Field& k = L.field();
  const int p = L.p();
  SeriesOps ops{&S};
  const LieSeries he = substitute_h(S, build_e(S), h);
  LiftSolution sol;
  sol.A = zero_map(L);
  sol.c = S.zero();
  sol.replay_ok = true;
  const FieldElem inv_a0 = k.inv(k.alpha0());
  for (int s = 1; s < p; ++s) {
    const LieSeries Ae = apply_to_e(S, sol.A);
    const LieSeries diff = S.sub(ch(ops, he, sol.c), ch(ops, S.sigma(sol.c, 1), Ae));
    if (!S.degree_below(diff, s).is_zero()) sol.replay_ok = false;
    const LieSeries B = S.degree_part(diff, s);
    const LieSeries r = S.R(B), X = S.S(B);
    std::map<int, LieElem> step;
    for (const auto& [m, x] : r.terms) {
      if (m == 0) {
        step[0] = L.scale(x, inv_a0);
        sol.A.on_d0 = L.add(sol.A.on_d0, step[0]);
      } else {
        step[-m] = x;
        LieElem& slot = sol.A.on_a[-m];
        slot = L.add(slot, x);
      }
    }
    const LieSeries replay = S.sub(S.add(S.sub(S.sigma(X, 1), X), r), B);
    if (!replay.is_zero()) sol.replay_ok = false;
    sol.B.push_back(B);
    sol.X.push_back(X);
    sol.A_step.push_back(std::move(step));
    sol.replay.push_back(replay);
    sol.c = S.add(sol.c, X);
  }
  const LieSeries Ae = apply_to_e(S, sol.A);
  sol.relation_ok = ch(ops, he, sol.c) == ch(ops, S.sigma(sol.c, 1), Ae);
  sol.V = log_automorphism(Automorphism(L, sol.A));
  return sol;
}

LieSeries LinearSolution::c1_minus() const {
  LieSeries out{c1.policy, {}};
  for (const auto& [m, x] : c1.terms)
    if (m < 0) out.terms.emplace(m, x);
  return out;
}

LieElem LinearSolution::c1_zero() const { return c1.coeff(0); }

LieSeries LinearSolution::c1_plus() const {
  LieSeries out{c1.policy, {}};
  for (const auto& [m, x] : c1.terms)
    if (m > 0) out.terms.emplace(m, x);
  return out;
}

LieSeries d_h_e(const SeriesSpace& S, const AutSpec& h) {
  const Algebra& L = S.algebra();
  const Field& k = L.field();
  LieSeries out = S.zero();
  for (int a : base_labels(L)) {
    for (int i = 0; i < static_cast<int>(h.A.size()); ++i) {
      if (h.A[i] == 0) continue;
      const FieldElem c = k.mul(k.from_int(-a), h.A[i]);
      out = S.add(out, S.monomial(S.c0() + S.p() * i - a, L.scale(L.d(a, 0), c)));
    }
  }
  return out;
}

LieSeries w_from_v(const SeriesSpace& S, const LetterMap& V) { return apply_to_e(S, V); }

namespace {

LieSeries linear_rhs(const SeriesSpace& S, const LieSeries& e, const LieSeries& de,
                     const LieSeries& c1, const LieSeries& W) {
  SeriesOps ops{&S};
  const LieSeries sc = S.sigma(c1, 1);
  LieSeries out = e0_apply(ops, e, de);
  out = S.sub(out, S.sub(e0_apply(ops, e, W), W));
  out = S.sub(out, S.sub(exp_ad(ops, e, sc), sc));
  return out;
}

}  // namespace

LieSeries linear_residual(const SeriesSpace& S, const AutSpec& h, const LieSeries& c1,
                          const LieSeries& W) {
  const LieSeries e = build_e(S), de = d_h_e(S, h);
  const LieSeries lhs = S.add(S.sub(S.sigma(c1, 1), c1), W);
  return S.sub(lhs, linear_rhs(S, e, de, c1, W));
}

LinearSolution solve_linearized(const SeriesSpace& S, const AutSpec& h) {
  const Algebra& L = S.algebra();
  const Field& k = L.field();
  const LieSeries e = build_e(S), de = d_h_e(S, h);
  LinearSolution sol;
  sol.c1 = S.zero();
  sol.W = S.zero();
  for (int s = 1; s < S.p(); ++s) {
    const LieSeries rhs = S.degree_part(linear_rhs(S, e, de, sol.c1, sol.W), s);
    sol.rhs.push_back(rhs);
    sol.W = S.add(sol.W, S.R(rhs));
    sol.c1 = S.add(sol.c1, S.S(rhs));
  }
  sol.replay_ok = linear_residual(S, h, sol.c1, sol.W).is_zero();
  sol.V = zero_map(L);
  for (const auto& [m, x] : sol.W.terms) {
    if (m == 0) {
      sol.V.on_d0 = L.scale(x, k.inv(k.alpha0()));
    } else {
      sol.V.on_a[-m] = x;
    }
  }
  return sol;
}

LieSeries iterate_c(const SeriesSpace& S, const UniversalBCH& ch, const AutSpec& h,
                    const LiftSolution& lift, int n) {
  SeriesOps ops{&S};
  const Automorphism A(S.algebra(), lift.A);
  LieSeries out = S.zero();
  for (int j = 0; j < n; ++j) {
    LieSeries term = lift.c;
    for (int i = 0; i < n - 1 - j; ++i) term = substitute_h(S, term, h);
    for (int i = 0; i < j; ++i) term = A.apply(S, term);
    out = ch(ops, out, term);
  }
  return out;
}

LieSeries interpolate_c1(const SeriesSpace& S, const UniversalBCH& ch, const AutSpec& h,
                         const LiftSolution& lift) {
  const int p = S.p();
  const auto W = vandermonde_inverse(p);
  LieSeries out = S.zero();
  for (int n = 1; n < p; ++n) {
    if (W[1][n] == 0) continue;
    out = S.add(out, S.scale_int(iterate_c(S, ch, h, lift, n), W[1][n]));
  }
  return out;
}

AgreementReport compare_lifts(const SeriesSpace& S, const UniversalBCH& ch, const AutSpec& h,
                              const LiftSolution& lift, const LinearSolution& lin) {
  const Algebra& L = S.algebra();
  AgreementReport r;
  const LieSeries c1 = interpolate_c1(S, ch, h, lift);
  const LieSeries W = w_from_v(S, lift.V);
  r.nonlinear_satisfies_linear = linear_residual(S, h, c1, W).is_zero();
  r.same_V = lin.V.on_d0 == lift.V.on_d0;
  for (int a : base_labels(L)) r.same_V = r.same_V && lin.V.at(a) == lift.V.at(a);
  r.same_c1 = c1 == lin.c1;
  LieSeries plus{c1.policy, {}};
  for (const auto& [m, x] : c1.terms)
    if (m > 0) plus.terms.emplace(m, x);
  r.same_c1_plus = plus == lin.c1_plus();
  return r;
}

LieElem v_closed_form(const F0Table& table, const AutSpec& h, int a, int reading) {
  const Algebra& L = table.algebra();
  const int p = L.p(), c0 = L.c0();
  const auto grid = table.gammas();
  const Rational top = grid.empty() ? Rational(0) : grid.back();
  LieElem out;
  for (int i = 0; i < static_cast<int>(h.A.size()); ++i) {
    if (h.A[i] == 0) continue;
    const Rational base(c0 + p * i);
    for (int n = 1; n <= table.depth(); ++n) {
      const LieElem f = table.get(base + Rational(a) * p_power(p, -n), n);
      out = L.add(out, L.sigma(L.scale(f, h.A[i]), n));
    }
    for (int m = 0;; ++m) {
      const Rational g = base + Rational(a) * p_power(p, m);
      if (g > top) break;
      const LieElem f = L.scale(table.get(g, 0), h.A[i]);
      const int e = reading == 1 ? 0 : (reading == 2 ? m : -m);
      out = L.add(out, L.sigma(f, e));
    }
  }
  return L.neg(out);
}

LieElem v0_closed_form(const F0Table& table, const AutSpec& h) {
  const Algebra& L = table.algebra();
  const int p = L.p(), c0 = L.c0();
  LieElem out;
  for (int i = 0; i < static_cast<int>(h.A.size()); ++i) {
    if (h.A[i] == 0) continue;
    const LieElem f = L.scale(table.get(Rational(c0 + p * i), 0), h.A[i]);
    for (int n = 0; n < L.n0(); ++n) out = L.add(out, L.sigma(f, n));
  }
  return L.neg(out);
}

ReadingReport check_v_readings(const F0Table& table, const AutSpec& h, const LetterMap& V,
                               const IdealBasis* mod) {
  const Algebra& L = table.algebra();
  auto same = [&](const LieElem& x, const LieElem& y) {
    return mod ? member(L.sub(x, y), *mod) : x == y;
  };
  ReadingReport r;
  r.first_reading = r.second_reading = r.third_reading = true;
  for (int a : base_labels(L)) {
    ++r.checked;
    const LieElem& v = V.at(a);
    bool any = false;
    for (int reading = 1; reading <= 3; ++reading) {
      const bool eq = same(v_closed_form(table, h, a, reading), v);
      any = any || eq;
      bool& flag = reading == 1 ? r.first_reading : (reading == 2 ? r.second_reading : r.third_reading);
      flag = flag && eq;
    }
    if (!any) r.mismatches.push_back("V_" + std::to_string(a));
  }
  const LieElem v0 = v0_closed_form(table, h);
  r.v0_plain = same(V.on_d0, v0);
  r.v0_scaled = same(L.scale(V.on_d0, L.field().alpha0()), v0);
  return r;
}

LieSeries c1_plus_closed_form(const SeriesSpace& S, const F0Table& table, const AutSpec& h, int N) {
  const Algebra& L = S.algebra();
  const int p = L.p(), c0 = L.c0();
  const auto grid = table.gammas();
  LieSeries out = S.zero();
  for (int j = 0; j < static_cast<int>(h.A.size()); ++j) {
    if (h.A[j] == 0) continue;
    const Rational top(c0 + p * j);
    for (int n = 0; n < N && n <= table.depth(); ++n) {
      const Rational scale = p_power(p, n);
      for (const Rational& g : grid) {
        if (g >= top) break;
        const Rational ex = scale * (top - g);
        if (ex.denominator() != 1) continue;
        const LieElem f = table.get(g, n);
        if (f.is_zero()) continue;
        const long long m = ex.numerator();
        if (m > (p - 1) * c0) continue;  // beyond M(p-1) for every weight
        out = S.add(out, S.monomial(static_cast<int>(m), L.sigma(L.scale(f, h.A[j]), n)));
      }
    }
  }
  return out;
}

C1PlusReport check_c1_plus(const SeriesSpace& S, const F0Table& table, const AutSpec& h,
                           const LieSeries& c1_plus) {
  C1PlusReport r;
  const int top = table.depth() + 1;
  std::vector<LieSeries> forms;
  for (int N = 1; N <= top; ++N) forms.push_back(c1_plus_closed_form(S, table, h, N));
  r.n_used = top;
  for (int N = top; N >= 1; --N) {
    if (forms[N - 1] == forms.back()) r.n_used = N;
    else break;
  }
  r.stabilized = r.n_used < top;
  r.equal = forms.back() == c1_plus;
  return r;
}

LieElem arithmetic_c1_zero(const F0Table& table, const AutSpec& h, int N) {
  const Algebra& L = table.algebra();
  const int p = L.p(), c0 = L.c0();
  LieElem out;
  for (int j = 0; j < static_cast<int>(h.A.size()); ++j) {
    if (h.A[j] == 0) continue;
    for (int i = 0; i < N; ++i) {
      const LieElem f = L.scale(table.get(Rational(c0 + p * j), i), h.A[j]);
      out = L.add(out, L.sigma(f, i));
    }
  }
  return out;
}

bool is_arithmetical(const LieElem& c1_zero, const F0Table& table, const AutSpec& h, int N,
                     const IdealBasis& ideal_c0) {
  const Algebra& L = table.algebra();
  return member(L.sub(c1_zero, arithmetic_c1_zero(table, h, N)), ideal_c0);
}

LieElem g0_apply(const Algebra& L, const LieElem& x) {
  return exp_ad(LieOps{&L}, L.d(0, 0), x);
}

LieElem f0_apply(const Algebra& L, const LieElem& x) {
  return e0_apply(LieOps{&L}, L.d(0, 0), x);
}

LieElem omega0(const F0Table& table, const AutSpec& h, int n_tilde) {
  const Algebra& L = table.algebra();
  const int p = L.p(), c0 = L.c0();
  LieElem out;
  for (int j = 0; j < static_cast<int>(h.A.size()); ++j) {
    if (h.A[j] == 0) continue;
    out = L.add(out, L.scale(table.get(Rational(c0 + p * j), n_tilde), h.A[j]));
  }
  return out;
}

LieElem zero_part_lhs(const Algebra& L, const LieElem& c, const LieElem& v) {
  const LieElem gc = L.sub(g0_apply(L, L.sigma(c, 1)), c);
  return L.add(gc, f0_apply(L, L.scale(v, L.field().alpha0())));
}

ZeroPartResult solve_zero_part(const Algebra& L, const LieElem& rhs, const IdealBasis& ideal,
                      const LieElem* fixed_v) {
  IdealBasis flat(L);
  ZeroPartResult r;
  r.rhs = rhs;
  const LieElem target = fixed_v ? L.sub(rhs, zero_part_lhs(L, {}, *fixed_v)) : rhs;
  auto attempt = [&](const std::vector<LieElem>& cs, std::vector<LieElem> vs) {
    if (fixed_v) vs.clear();
    std::vector<IdealBasis::Row> cols;
    for (const LieElem& c : cs) cols.push_back(flat.flatten(zero_part_lhs(L, c, {})));
    for (const LieElem& v : vs) cols.push_back(flat.flatten(zero_part_lhs(L, {}, v)));
    FpSolve s = fp_solve(cols, flat.flatten(target), L.p());
    if (!s.ok) return false;
    std::vector<int> xc(s.x.begin(), s.x.begin() + static_cast<long>(cs.size()));
    std::vector<int> xv(s.x.begin() + static_cast<long>(cs.size()), s.x.end());
    r.c0 = combine(L, cs, xc);
    r.v = fixed_v ? *fixed_v : combine(L, vs, xv);
    return true;
  };
  const std::vector<LieElem> in_c = ideal.elements();
  if (attempt(in_c, sigma_fixed(L, in_c))) {
    r.solved = r.in_ideal = true;
  } else {
    const std::vector<LieElem> all = fp_unit_basis(L);
    r.fallback = true;
    r.solved = attempt(all, sigma_fixed(L, all));
  }
  r.residual_ok = r.solved && zero_part_lhs(L, r.c0, r.v) == rhs;
  return r;
}

CongruenceReport congruence_check(const Algebra& L, const AutSpec& h, const LetterMap& A) {
  const Field& k = L.field();
  const int p = L.p(), c0 = L.c0();
  CongruenceReport r;
  for (int a : base_labels(L)) {
    const int s = L.gen_weight(a);
    if (s > p - 2) continue;
    ++r.checked;
    LieElem diff = L.sub(A.at(a), L.d(a, 0));
    for (int i = 0; i < static_cast<int>(h.alphas.size()); ++i) {
      L.axpy(diff, k.mul(h.alphas[i], k.from_int(a)), L.d(a + c0 + p * i, 0));
    }
    const IdealBasis allowed = coordinate_subspace(L, [s](const HallWord& w) {
      return w.weight >= s + 2 || (w.weight >= s + 1 && w.degree >= 2);
    });
    if (!member(diff, allowed)) {
      r.ok = false;
      r.failures.push_back("D_{" + std::to_string(a) + ",0}");
    }
  }
  const IdealBasis allowed0 = coordinate_subspace(
      L, [](const HallWord& w) { return w.weight >= 3 || (w.weight >= 2 && w.degree >= 2); });
  r.d0_ok = member(L.sub(A.on_d0, L.d0()), allowed0);
  r.ok = r.ok && r.d0_ok;
  return r;
}

FiltrationReport weight_filtration_check(const Algebra& L, const UniversalBCH& ch,
                                         const Automorphism& A) {
  FiltrationReport r;
  LieOps ops{&L};
  const auto kb = k_basis(L.field());
  const int top = std::min(L.weight_cap(), L.p() - 1);
  for (int s = 1; s < top; ++s) {
    ++r.levels;
    const IdealBasis next = weight_ideal(L, s + 1);
    IdealBasis span = coordinate_subspace(
        L, [s](const HallWord& w) { return w.weight >= s + 1 && w.degree >= 2; });
    for (std::uint32_t id = 0; id < L.dim(); ++id) {
      const HallWord& w = L.word(id);
      if (w.weight < s) continue;
      for (FieldElem c : kb) {
        const LieElem l = L.basis(id, c);
        const LieElem g = ch(ops, A.apply(l), L.neg(l));
        if (!member(g, next)) r.raises = false;
        if (w.degree == 1 && L.gen(w.letter).a != 0) span.insert(span.flatten(g));
      }
    }
    if (!span.same_space(next)) r.spans = false;
  }
  return r;
}

bool elimination_check(const Algebra& L, const LetterMap& V, std::vector<std::string>* missing) {
  const auto kb = k_basis(L.field());
  IdealBasis space = commutator_ideal(L, 2);
  const std::vector<LieElem> images = V.on_letters(L);
  for (const LieElem& x : images)
    for (FieldElem c : kb) space.insert(space.flatten(L.scale(x, c)));
  bool ok = true;
  for (int i = 0; i < L.num_gens(); ++i) {
    const GenId& g = L.gen(i);
    if (g.a <= L.c0()) continue;
    if (!space.contains(space.flatten(L.letter(i)))) {
      ok = false;
      if (missing) missing->push_back("D_{" + std::to_string(g.a) + "," + std::to_string(g.n) + "}");
    }
  }
  return ok;
}

SolutionCount solution_count(const Algebra& L) {
  SolutionCount r;
  r.ok = true;
  const auto kb = k_basis(L.field());
  const int top = std::min(L.weight_cap(), L.p() - 1);
  for (int s = 1; s <= top; ++s) {
    IdealBasis img(L);
    int words = 0;
    for (std::uint32_t id = 0; id < L.dim(); ++id) {
      if (L.word(id).weight != s) continue;
      ++words;
      for (FieldElem c : kb) {
        const LieElem x = L.basis(id, c);
        img.insert(img.flatten(L.sub(L.sigma(x, 1), x)));
      }
    }
    r.kernel_dim.push_back(words * L.n0() - img.dim());
    r.expected.push_back(words);
    r.ok = r.ok && r.kernel_dim.back() == words;
  }
  return r;
}

}  // namespace nilp
