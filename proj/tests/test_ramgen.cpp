#include <random>

#include "doctest.h"
#include "nilp/ramgen.hpp"

using namespace nilp;

TEST_CASE("eta coefficients") {
  CHECK(eta_coeff({0, 0}, 3) == 2);
  CHECK(eta_coeff({0, -1}, 3) == 1);
  CHECK(eta_coeff({0, 0, -1, -1}, 5) == 4);
  CHECK(eta_coeff({0, 0, 0}, 5) == 1);
  CHECK(eta_coeff({0, 1}, 3) == 0);
  CHECK(eta_coeff({-1}, 3) == 0);
}

TEST_CASE("F0 small cases") {
  Field k(3, 1);
  Algebra L(k, {3, 6, 2, 2});
  F0Table t(L, 0);
  LieElem expect = L.add(L.d(1, 0), L.scale_int(L.bracket(L.d(1, 0), L.d(0, 0)), 2));
  CHECK(t.get(Rational(1)) == expect);
  for (int a : {1, 2, 4, 5}) {
    CHECK(L.degree_part(t.get(Rational(a)), 1) == L.scale_int(L.d(a, 0), a));
  }
  F0Table t2(L, 2);
  CHECK(t2.get(Rational(1, 27)).is_zero());
  // [D_{1,0}, D_{1,-1}] = 0 when N0 = 1
  CHECK(t2.get(Rational(4, 3)).is_zero());
  CHECK(t2.get(Rational(5, 3), 0).is_zero());
  CHECK(!t2.get(Rational(5, 3), 1).is_zero());
}

TEST_CASE("F0 agrees with brute-force enumeration") {
  struct Case {
    int p, n0, c0, a_max, deg, cap, N;
  };
  for (Case c : {Case{3, 1, 3, 6, 2, 2, 2}, Case{3, 2, 3, 6, 2, 2, 1}, Case{5, 1, 5, 10, 4, 4, 1}}) {
    Field k(c.p, c.n0);
    Algebra L(k, {c.c0, c.a_max, c.deg, c.cap});
    F0Table fast(L, c.N), serial(L, c.N, Exec::Serial);
    long long den = 1;
    for (int d = 0; d <= c.N; ++d, den *= c.p) {
      for (int j = 1; j <= 12; ++j) {
        const Rational g(j, den);
        if (g.denominator() != den) continue;
        const LieElem ref = f0_reference(L, g, c.N);
        CHECK(fast.get(g) == ref);
        CHECK(serial.get(g) == ref);
      }
    }
  }
}

TEST_CASE("ramification ideals") {
  Field k(3, 2);
  Algebra L(k, {3, 6, 2, 2});
  F0Table t(L, 2);
  RamIdeal all = ramification_ideal(t, Rational(0), 2);
  // everything except the line k D0
  CHECK(all.ideal.dim() == static_cast<int>(L.dim()) * k.n0() - k.n0());
  CHECK(!member(L.d0(), all.ideal));
  const auto grid = t.gammas();
  IdealBasis prev = all.ideal;
  for (const Rational& g : grid) {
    IdealBasis cur = ramification_ideal(t, g, 2).ideal;
    CHECK(prev.includes(cur));
    prev = cur;
  }
  // D_{c0 s - 1, n} generates L^(c0 s - 1) modulo L(s + 1)
  for (int s = 1; s <= 2; ++s) {
    const IdealBasis W = weight_ideal(L, s + 1);
    std::vector<LieElem> gens;
    for (int n = 0; n < k.n0(); ++n) gens.push_back(L.d(3 * s - 1, n));
    IdealBasis lhs = ideal_sum(ramification_ideal(t, Rational(3 * s - 1), 2).ideal, W);
    IdealBasis rhs = ideal_sum(minimal_sigma_ideal(L, gens), W);
    CHECK(lhs.same_space(rhs));
  }
}

TEST_CASE("ramification ideal stabilizes in N") {
  Field k(3, 1);
  Algebra L(k, {3, 6, 2, 2});
  for (const Rational v : {Rational(2), Rational(5, 3), Rational(4)}) {
    const int n = ram_depth_probe(L, v, 0, 5);
    CHECK(n < 5);
    F0Table t(L, n + 2);
    CHECK(ramification_ideal(t, v, n).ideal.same_space(ramification_ideal(t, v, n + 2).ideal));
  }
}

TEST_CASE("maximal ramification numbers") {
  for (auto [p, N] : std::vector<std::pair<int, int>>{{3, 2}, {5, 1}}) {
    Field k(p, 1);
    const int c0 = p;
    Algebra L(k, {c0, (p - 1) * c0, p - 1, p - 1});
    F0Table t(L, N);
    for (int s = 1; s <= std::min(3, p - 1); ++s) {
      MaxRamResult r = max_ram_number(t, s);
      CHECK(r.v == Rational(c0 * s - 1));
      CHECK(r.ideal_outside_at_v);
      CHECK(r.ideal_inside_above_v);
    }
  }
}

TEST_CASE("generators of high weight lie in L^(c0) + C_s") {
  Field k(3, 1);
  Algebra L(k, {3, 9, 2, 3});
  F0Table t(L, 2);
  const IdealBasis I = ramification_ideal(t, Rational(3), 2).ideal;
  const IdealBasis C2 = commutator_ideal(L, 2);
  CHECK(member(L.d(4, 0), I, &C2));
  MembershipReport r = check_Lp_in_ram_ideal(t);
  CHECK(r.ok);
  CHECK(r.checked == 6);
}

TEST_CASE("Gamma set and parameter choice") {
  const auto g = gamma_set(3, Rational(3), 4, Rational(3));
  REQUIRE(!g.empty());
  CHECK(g.back() == Rational(26, 9));
  CHECK(gamma_max_below(3, Rational(3), 4, Rational(3)) == Rational(26, 9));
  CHECK(gamma_max_below(3, Rational(7, 2), 3, Rational(7, 2)) ==
        gamma_set(3, Rational(7, 2), 3, Rational(7, 2)).back());
  for (int p : {3, 5}) {
    for (const Rational v0 : {Rational(p), Rational(2 * p), Rational(7, 2)}) {
      for (int n_tilde : {0, 2}) {
        ParamChoice c = choose_parameters(p, v0, n_tilde);
        std::string why;
        CHECK_MESSAGE(params_valid(p, v0, c, n_tilde, &why), why);
        CHECK(c.delta > 0);
        // enlarging q to q^2 keeps every constraint
        ParamChoice d = c;
        d.n_star *= 2;
        d.q = c.q * c.q;
        const Rational b = d.r_star * Rational(d.q - 1);
        d.b_star = b.numerator();
        d.a_star = (Rational(d.q) * (v0 - d.delta)).numerator();
        CHECK_MESSAGE(params_valid(p, v0, d, n_tilde, &why), why);
      }
    }
  }
}

TEST_CASE("Herbrand functions") {
  const HerbrandFn phi({{Rational(2), Rational(2)}, {Rational(5), Rational(3)}}, Rational(1, 9));
  CHECK(HerbrandFn::identity().compose(phi) == phi);
  CHECK(phi.compose(HerbrandFn::identity()) == phi);
  CHECK(phi.concave());
  const HerbrandFn one = HerbrandFn::single_edge(Rational(7, 2), Rational(1, 27));
  CHECK(one(Rational(3)) == Rational(3));
  CHECK(one(Rational(7, 2) + 27) == Rational(9, 2));
  CHECK(phi.inverse().compose(phi) == HerbrandFn::identity());
  CHECK_THROWS_AS(HerbrandFn({{Rational(2), Rational(2)}, {Rational(1), Rational(3)}}, Rational(1)),
                  DomainError);
  CHECK_THROWS_AS(HerbrandFn({}, Rational(0)), DomainError);

  // upper numbers above c0 move by v* = c0 + p (v - c0)
  const int c0 = 3, p = 3;
  const HerbrandFn down({{Rational(c0), Rational(c0)}}, Rational(1, p));
  for (const Rational v : {Rational(4), Rational(11, 3), Rational(10)}) {
    CHECK(down.inverse()(v) == Rational(c0) + Rational(p) * (v - c0));
  }

  std::mt19937 rng(12);
  auto random_fn = [&]() {
    std::uniform_int_distribution<int> step(1, 5), n(0, 3);
    std::vector<std::pair<Rational, Rational>> vs;
    Rational x(0), y(0);
    for (int i = n(rng); i > 0; --i) {
      x += Rational(step(rng), step(rng));
      y += Rational(step(rng), step(rng));
      vs.emplace_back(x, y);
    }
    return HerbrandFn(vs, Rational(1, step(rng)));
  };
  for (int trial = 0; trial < 50; ++trial) {
    const HerbrandFn f = random_fn(), g = random_fn(), h = random_fn();
    CHECK(f.compose(g).compose(h) == f.compose(g.compose(h)));
    for (int i = 0; i < 5; ++i) {
      const Rational x(i * 7 + 1, 3);
      CHECK(f.compose(g)(x) == f(g(x)));
    }
  }
}

TEST_CASE("mixed characteristic summary") {
  MixedCharReport r = mixed_char_summary(3, 2, 1);
  CHECK(r.c0 == 3);
  CHECK(r.generators == 4);
  CHECK(r.v == std::vector<Rational>{Rational(3), Rational(11, 3)});
  CHECK(r.v == r.v_via_herbrand);
  MixedCharReport r5 = mixed_char_summary(5, 8, 2);
  CHECK(r5.c0 == 10);
  CHECK(r5.generators == 18);
  CHECK(r5.v == r5.v_via_herbrand);
  CHECK_THROWS_AS(mixed_char_summary(3, 3, 1), DomainError);
  CHECK(parse_rational("11/3") == Rational(11, 3));
  CHECK(to_string(Rational(-4, 6)) == "-2/3");
  CHECK_THROWS_AS(parse_rational("1/x"), DomainError);
}
