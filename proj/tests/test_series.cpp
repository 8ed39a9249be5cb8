#include <random>

#include "doctest.h"
#include "nilp/series.hpp"

using namespace nilp;

namespace {

LieSeries random_series(const SeriesSpace& S, std::mt19937& rng, int terms, int level = 0) {
  const Algebra& L = S.algebra();
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(L.dim() - 1));
  std::uniform_int_distribution<int> coef(1, L.field().q() - 1);
  LieSeries f = S.zero();
  for (int i = 0; i < terms; ++i) {
    const std::uint32_t id = pick(rng);
    const int s = L.word(id).weight;
    if (s >= S.p()) continue;
    // t^m x lies in N(level) when m > (level - s) c0, and outside M(p-1) up to (p-1-s) c0.
    const int lo = (level - s) * S.c0() + 1, hi = (S.p() - 1 - s) * S.c0();
    if (lo > hi) continue;
    std::uniform_int_distribution<int> ex(lo, hi);
    f = S.add(f, S.monomial(ex(rng), L.basis(id, static_cast<FieldElem>(coef(rng)))));
  }
  return f;
}

bool in_level(const SeriesSpace& S, const LieSeries& f, int level) {
  for (const auto& [m, x] : f.terms) {
    for (const Term& t : x.terms) {
      if (m <= (level - S.algebra().word(t.id).weight) * S.c0()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("monomial bracket rule") {
  Field k(3, 1);
  Algebra L(k, {3, 6, 2, 0});
  SeriesSpace S(L, Policy::Exact);
  LieElem x = L.d(1, 0), y = L.d(2, 0);
  LieSeries f = S.bracket(S.monomial(-1, x), S.monomial(-2, y));
  CHECK(f.terms.size() == 1);
  CHECK(f.coeff(-3) == L.bracket(x, y));
  CHECK_THROWS_AS(S.monomial(-7, x), OverflowError);
}

TEST_CASE("sigma on series") {
  Field k3(3, 1);
  Algebra L(k3, {3, 6, 2, 0});
  SeriesSpace S(L);
  LieSeries f = S.sigma(S.monomial(-1, L.d(1, 0)), 1);
  CHECK(f.coeff(-3) == L.d(1, 0));

  Field k9(3, 2);
  Algebra M(k9, {3, 6, 2, 0});
  SeriesSpace T(M);
  const FieldElem w = k9.gen();
  LieElem x = M.d(1, 0);
  LieSeries g = T.sigma(T.monomial(1, M.scale(x, w)), 1);
  CHECK(g.coeff(3) == M.scale(M.d(1, 1), k9.frobenius(w, 1)));
  std::mt19937 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    LieSeries h = T.degree_below(random_series(T, rng, 6), 3);
    LieSeries neg = T.negative_part(h);
    bool inside = true;
    for (const auto& [m, y] : neg.terms) inside = inside && 3 * m >= T.min_exp();
    if (inside) CHECK(T.sigma(T.sigma(neg, 1), -1) == neg);
  }
  CHECK_THROWS_AS(T.sigma(T.monomial(-1, x), -1), DomainError);
}

TEST_CASE("R on monomials") {
  Field k(3, 2);
  Algebra L(k, {3, 6, 2, 0});
  SeriesSpace S(L);
  LieElem x = L.add(L.d(1, 0), L.scale(L.d(2, 1), k.gen()));
  CHECK(S.R(S.monomial(2, x)).is_zero());
  LieSeries r = S.R(S.monomial(-6, x));
  CHECK(r.terms.size() == 1);
  CHECK(r.coeff(-2) == L.sigma(x, -1));
  // on t^0 the image is alpha0 times a sigma-fixed element
  LieSeries r0 = S.R(S.monomial(0, x));
  const LieElem fixed = L.scale(r0.coeff(0), k.inv(k.alpha0()));
  CHECK(L.sigma(fixed, 1) == fixed);
}

TEST_CASE("R and S split every series") {
  for (auto [p, n0] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}, {5, 2}}) {
    Field k(p, n0);
    const int c0 = p;
    Algebra L(k, {c0, (p - 1) * c0, p - 1, p - 1});
    SeriesSpace S(L);
    std::mt19937 rng(17 + p * 3 + n0);
    for (int trial = 0; trial < 60; ++trial) {
      LieSeries b = random_series(S, rng, 8);
      LieSeries r = S.R(b), s = S.S(b);
      CHECK(S.add(r, S.sub(S.sigma(s, 1), s)) == b);
      for (const auto& [m, x] : r.terms) CHECK((m == 0 || (m < 0 && (-m) % p != 0)));
      CHECK(S.R(r) == r);
    }
  }
}

TEST_CASE("R and S preserve the N(i) filtration") {
  Field k(3, 2);
  Algebra L(k, {3, 6, 2, 2});
  SeriesSpace S(L);
  std::mt19937 rng(8);
  for (int level = 0; level <= 2; ++level) {
    for (int trial = 0; trial < 40; ++trial) {
      LieSeries b = random_series(S, rng, 6, level);
      REQUIRE(in_level(S, b, level));
      CHECK(in_level(S, S.R(b), level));
      CHECK(in_level(S, S.S(b), level));
    }
  }
}

TEST_CASE("Campbell-Hausdorff on series") {
  Field k(3, 1);
  Algebra L(k, {3, 6, 2, 2});
  SeriesSpace S(L);
  UniversalBCH ch(3);
  SeriesOps ops{&S};
  LieSeries e = build_e(S);
  CHECK(ch(ops, e, S.neg(e)).is_zero());
  LieSeries f = S.monomial(-1, L.d(1, 0)), g = S.monomial(2, L.d(1, 0));
  CHECK(ch(ops, f, g) == S.add(f, g));
  std::mt19937 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    LieSeries x = random_series(S, rng, 4, 0), y = random_series(S, rng, 4, 0),
              z = random_series(S, rng, 4, 0);
    CHECK(ch(ops, ch(ops, x, y), z) == ch(ops, x, ch(ops, y, z)));
  }
}

TEST_CASE("build_e") {
  Field k(3, 1);
  Algebra L(k, {3, 6, 2, 0});
  SeriesSpace S(L);
  LieSeries e = build_e(S);
  std::vector<int> exps;
  for (const auto& [m, x] : e.terms) exps.push_back(m);
  CHECK(exps == std::vector<int>{-5, -4, -2, -1, 0});
  CHECK(e.coeff(-4) == L.d(4, 0));
  CHECK(e.coeff(0) == L.d0());
  for (const auto& [m, x] : e.terms) CHECK(-m < L.weight(x) * 3 + (m == 0 ? 1 : 0));
}

TEST_CASE("A_i from log(h(t)/t)") {
  Field k(3, 2);
  const FieldElem a0 = k.gen(), a1 = k.from_int(2);
  AutSpec h = AutSpec::make(k, 3, {a0, a1});
  REQUIRE(h.A.size() >= 1);
  CHECK(h.A[0] == a0);
  // t^6 coefficient: alpha_1 - alpha_0^2 / 2
  const FieldElem expect = k.sub(a1, k.mul(k.mul(a0, a0), k.from_int(k.inv_mod_p(2))));
  CHECK(h.a_coeff(1) == expect);
  CHECK_THROWS_AS(AutSpec::make(k, 4, {1}), DomainError);
  CHECK_THROWS_AS(AutSpec::make(k, 3, {0, 1}), DomainError);
  CHECK(AutSpec::make(k, 3, {}).identity());
}

TEST_CASE("iterates of h follow exp(n eps^p)") {
  for (auto [p, n0] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}}) {
    Field k(p, n0);
    std::mt19937 rng(p + n0);
    std::uniform_int_distribution<int> pick(1, k.q() - 1), any(0, k.q() - 1);
    const int c0 = p;
    std::vector<FieldElem> alphas{static_cast<FieldElem>(pick(rng))};
    for (int i = 1; i < 4; ++i) alphas.push_back(static_cast<FieldElem>(any(rng)));
    AutSpec h = AutSpec::make(k, c0, alphas);
    const int len = p * c0;
    KSeries g(len, 0);
    g[0] = 1;
    for (int n = 1; n <= p; ++n) {
      g = compose_h(k, h, g, len);
      KSeries eps = h.eps_p(len);
      for (auto& c : eps) c = k.mul(c, k.from_int(n));
      CHECK(g == kseries_exp_trunc(k, eps, len));
    }
  }
}

TEST_CASE("substitution t -> h(t)") {
  Field k(3, 2);
  Algebra L(k, {3, 6, 2, 2});
  SeriesSpace S(L);
  const FieldElem a0 = k.gen();
  AutSpec id = AutSpec::make(k, 3, {});
  std::mt19937 rng(9);
  LieSeries F = random_series(S, rng, 6);
  CHECK(substitute_h(S, F, id) == F);

  AutSpec h = AutSpec::make(k, 3, {a0, 1, 2});
  // h(t)^{-1} by long division against h(t)/t
  const int len = 8;
  KSeries q = h.h_over_t(len), inv(len, 0);
  inv[0] = 1;
  for (int n = 1; n < len; ++n) {
    FieldElem s = 0;
    for (int j = 1; j <= n; ++j) s = k.sub(s, k.mul(q[j], inv[n - j]));
    inv[n] = s;
  }
  LieElem x = L.d(1, 0);
  LieSeries hx = substitute_h(S, S.monomial(-1, x), h);
  for (int n = 0; n < len; ++n) {
    const int m = n - 1;
    if (m > 3) break;  // beyond the truncation for weight 1
    CHECK(hx.coeff(m) == L.scale(x, inv[n]));
  }
  CHECK(hx.coeff(2) == L.scale(x, k.neg(a0)));

  for (int trial = 0; trial < 20; ++trial) {
    LieSeries u = random_series(S, rng, 4), v = random_series(S, rng, 4);
    CHECK(substitute_h(S, S.bracket(u, v), h) ==
          S.bracket(substitute_h(S, u, h), substitute_h(S, v, h)));
  }
}
