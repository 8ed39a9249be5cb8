#include <map>
#include <random>

#include "doctest.h"
#include "nilp/bch.hpp"

using namespace nilp;

namespace {

LieElem random_elem(const Algebra& L, std::mt19937& rng, int terms) {
  std::uniform_int_distribution<std::uint32_t> id(0, static_cast<std::uint32_t>(L.dim() - 1));
  std::uniform_int_distribution<int> c(1, L.field().q() - 1);
  LieElem x;
  for (int i = 0; i < terms; ++i) L.axpy(x, static_cast<FieldElem>(c(rng)), L.basis(id(rng)));
  return x;
}

// Coproduct of a tensor element, as a map from (left word, right word) to
// coefficient, where words are letter vectors.
using Word = std::vector<int>;
using TensorSq = std::map<std::pair<Word, Word>, FieldElem>;

Word letters_of(const Algebra& L, const EnvTerm& t) {
  Word w(t.deg);
  std::uint64_t idx = t.idx;
  for (int i = t.deg - 1; i >= 0; --i) {
    w[i] = static_cast<int>(idx % L.num_gens());
    idx /= L.num_gens();
  }
  return w;
}

TensorSq coproduct(const Algebra& L, const EnvElem& u) {
  const Field& k = L.field();
  TensorSq out;
  for (const EnvTerm& t : u.terms) {
    Word w = letters_of(L, t);
    const int d = static_cast<int>(w.size());
    for (int mask = 0; mask < (1 << d); ++mask) {
      Word a, b;
      for (int i = 0; i < d; ++i) ((mask >> i) & 1 ? a : b).push_back(w[i]);
      FieldElem& s = out[{a, b}];
      s = k.add(s, t.c);
    }
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

TensorSq tensor_square(const Algebra& L, const EnvElem& u) {
  const Field& k = L.field();
  TensorSq out;
  for (const EnvTerm& a : u.terms) {
    for (const EnvTerm& b : u.terms) {
      if (a.deg + b.deg > L.max_deg()) continue;
      FieldElem& s = out[{letters_of(L, a), letters_of(L, b)}];
      s = k.add(s, k.mul(a.c, b.c));
    }
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

}  // namespace

TEST_CASE("truncated exponential and logarithm") {
  Field k(3, 1);
  Algebra L(k, {3, 3, 2, 0});
  CHECK(env_equal(exp_trunc(L, {}), env_scalar(1)));
  LieElem x = L.add(L.d(1, 0), L.d0());
  // p = 3: exp(x) = 1 + x + x^2 / 2
  EnvElem ex = env_from_lie(L, x);
  EnvElem expect = env_add(L, env_add(L, env_scalar(1), ex), env_scale(L, env_mul(L, ex, ex), 2));
  CHECK(env_equal(exp_trunc(L, x), expect));
  CHECK_THROWS_AS(log_trunc(L, env_scalar(2)), DomainError);

  Field k5(5, 2);
  Algebra M(k5, {5, 4, 4, 0});
  std::mt19937 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    LieElem y = random_elem(M, rng, 5);
    CHECK(log_trunc(M, exp_trunc(M, y)) == y);
  }
}

TEST_CASE("exp of a Lie element is diagonal") {
  Field k(5, 1);
  Algebra L(k, {5, 3, 4, 0});
  std::mt19937 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    EnvElem e = exp_trunc(L, random_elem(L, rng, 4));
    CHECK(coproduct(L, e) == tensor_square(L, e));
  }
  // A non-Lie element is rejected by the projection.
  EnvElem sq = env_mul(L, env_from_lie(L, L.d(1, 0)), env_from_lie(L, L.d(1, 0)));
  CHECK(!lie_part(L, sq).has_value());
}

TEST_CASE("Campbell-Hausdorff group law") {
  Field k(5, 1);
  Algebra L(k, {5, 4, 4, 0});
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    LieElem x = random_elem(L, rng, 3), y = random_elem(L, rng, 3), z = random_elem(L, rng, 3);
    CHECK(ch_mul(L, ch_mul(L, x, y), z) == ch_mul(L, x, ch_mul(L, y, z)));
    CHECK(ch_mul(L, x, L.neg(x)).is_zero());
    CHECK(ch_mul(L, x, {}) == x);
  }
  // commuting elements
  LieElem a = L.d(1, 0);
  CHECK(ch_mul(L, a, L.scale_int(a, 3)) == L.scale_int(a, 4));
  // class 2: x o y = x + y + [x, y] / 2
  Algebra L2(k, {5, 4, 2, 0});
  for (int trial = 0; trial < 20; ++trial) {
    LieElem x = random_elem(L2, rng, 3), y = random_elem(L2, rng, 3);
    LieElem expect = L2.add(L2.add(x, y), L2.scale_int(L2.bracket(x, y), 3));
    CHECK(ch_mul(L2, x, y) == expect);
  }
}

TEST_CASE("universal series matches the enveloping route") {
  for (int p : {3, 5, 7}) {
    UniversalBCH ch(p);
    Field k(p, p == 7 ? 1 : 2);
    Algebra L(k, {p, 4, std::min(p - 1, 4), 0});
    LieOps ops{&L};
    std::mt19937 rng(p);
    for (int trial = 0; trial < 15; ++trial) {
      LieElem x = random_elem(L, rng, 4), y = random_elem(L, rng, 4);
      CHECK(ch(ops, x, y) == ch_mul(L, x, y));
    }
  }
  // degree-2 part is [X, Y] / 2
  UniversalBCH ch5(5);
  const Algebra& F = ch5.free_algebra();
  CHECK(F.degree_part(ch5.series(), 2) == F.scale_int(F.bracket(F.letter(0), F.letter(1)), 3));
}

TEST_CASE("Ad agrees with exp of ad") {
  Field k(5, 2);
  Algebra L(k, {5, 4, 4, 0});
  LieOps ops{&L};
  UniversalBCH ch(5);
  std::mt19937 rng(4);
  CHECK(Ad(ops, ch, LieElem{}, L.d(1, 0)) == L.d(1, 0));
  for (int trial = 0; trial < 100; ++trial) {
    LieElem x = random_elem(L, rng, 3), y = random_elem(L, rng, 3);
    CHECK(ad(ops, x, x).is_zero());
    CHECK(Ad(ops, ch, x, y) == exp_ad(ops, x, y));
  }
}

TEST_CASE("E0 and the jet identities") {
  Field k(5, 1);
  Algebra L(k, {5, 4, 4, 0});
  LieOps base{&L};
  JetOps<LieOps> jops{base};
  UniversalBCH ch(5);
  std::mt19937 rng(6);
  LieElem a = L.d(2, 0);
  CHECK(e0_apply(base, a, L.scale_int(a, 2)) == L.scale_int(a, 2));
  Algebra L2(k, {5, 4, 2, 0});
  LieOps b2{&L2};
  LieElem x2 = L2.d(1, 0), y2 = L2.d(2, 0);
  CHECK(e0_apply(b2, x2, y2) == L2.add(y2, L2.scale_int(L2.bracket(y2, x2), 3)));
  for (int trial = 0; trial < 30; ++trial) {
    LieElem x = random_elem(L, rng, 3), y = random_elem(L, rng, 3);
    Jet<LieElem> X{x, {}}, UY{{}, y};
    // jet form of the sum: x + Uy = x o (U E0(ad x) y)
    auto lhs6 = jops.add(X, UY);
    auto rhs6 = ch(jops, X, Jet<LieElem>{{}, e0_apply(base, x, y)});
    CHECK(lhs6.v == rhs6.v);
    CHECK(lhs6.d == rhs6.d);
    // jet form of conjugation: (Uy) o x = x o (U exp(ad x) y)
    auto lhs5 = ch(jops, UY, X);
    auto rhs5 = ch(jops, X, Jet<LieElem>{{}, exp_ad(base, x, y)});
    CHECK(lhs5.v == rhs5.v);
    CHECK(lhs5.d == rhs5.d);
  }
}

TEST_CASE("Bernoulli numbers") {
  for (int p : {3, 5, 7, 11}) {
    CHECK(bernoulli_mod_p(0, p) == 1);
    CHECK(bernoulli_mod_p(1, p) == (p - 1) / 2);
    CHECK_THROWS_AS(bernoulli_mod_p(p - 1, p), DomainError);
  }
  using Q = boost::rational<long long>;
  const bool b0 = bernoulli_exact(0) == Q(1);
  const bool b1 = bernoulli_exact(1) == Q(-1, 2);
  const bool b2 = bernoulli_exact(2) == Q(1, 6);
  const bool b3 = bernoulli_exact(3) == Q(0);
  const bool b4 = bernoulli_exact(4) == Q(-1, 30);
  CHECK(b0);
  CHECK(b1);
  CHECK(b2);
  CHECK(b3);
  CHECK(b4);
}

TEST_CASE("power-sum polynomials") {
  CHECK(power_sum_poly({0}, 5) == PolyFp{0, 1});
  // (U^2 - U) / 2 mod 5 = 3U^2 + 2U... as residues: -1/2 = 2, 1/2 = 3
  CHECK(power_sum_poly({1}, 5) == PolyFp{0, 2, 3});
  CHECK(power_sum_poly({0, 0}, 5) == PolyFp{0, 2, 3});
  CHECK_THROWS_AS(power_sum_poly({2, 1}, 5), DomainError);
  for (int p : {3, 5, 7}) {
    // every tuple with d < p, checked against direct sums
    std::vector<std::vector<int>> tuples;
    std::function<void(std::vector<int>, int)> gen = [&](std::vector<int> cur, int d) {
      if (!cur.empty()) tuples.push_back(cur);
      for (int i = 0; d + i + 1 < p; ++i) {
        auto nxt = cur;
        nxt.push_back(i);
        gen(nxt, d + i + 1);
      }
    };
    gen({}, 0);
    for (const auto& t : tuples) {
      PolyFp F = power_sum_poly(t, p);
      int d = static_cast<int>(t.size());
      for (int i : t) d += i;
      CHECK(static_cast<int>(F.size()) - 1 == d);
      CHECK(F[0] == 0);
      // f(n) by dynamic programming over m
      std::vector<long long> f(t.size() + 1, 0);  // f[j] = sum over chains of length j
      f[0] = 1;
      for (int n = 0; n <= 50; ++n) {
        CHECK(poly_eval(F, n, p) == f[t.size()] % p);
        for (std::size_t j = t.size(); j >= 1; --j) {
          long long pw = 1;
          for (int e = 0; e < t[j - 1]; ++e) pw = pw * n % p;
          f[j] = (f[j] + f[j - 1] * pw) % p;
        }
      }
    }
  }
}

TEST_CASE("orbit products and coefficients") {
  Field k(5, 1);
  Algebra L(k, {2, 8, 4, 4});
  LieOps ops{&L};
  UniversalBCH ch(5);
  std::mt19937 rng(8);
  std::function<LieElem(const LieElem&)> id = [](const LieElem& v) { return v; };
  LieElem l = random_elem(L, rng, 4);
  for (int n = 0; n < 7; ++n) CHECK(orbit_product(ops, ch, l, id, n) == L.scale_int(l, n));

  for (int trial = 0; trial < 10; ++trial) {
    std::vector<LieElem> on_letters;
    for (int g = 0; g < L.num_gens(); ++g) {
      const int w = L.gen_weight(L.gen(g).a);
      on_letters.push_back(L.filter(random_elem(L, rng, 6),
                                    [w](const HallWord& h) { return h.weight > w; }));
    }
    Derivation D(L, on_letters);
    std::function<LieElem(const LieElem&)> B = [&](const LieElem& v) { return D.exp_apply(v); };
    LieElem m = random_elem(L, rng, 5);
    // B is an automorphism
    LieElem u = random_elem(L, rng, 3), v = random_elem(L, rng, 3);
    CHECK(B(L.bracket(u, v)) == L.bracket(B(u), B(v)));
    CHECK(orbit_product(ops, ch, m, B, 5).is_zero());
    auto coeffs = orbit_coefficients(ops, ch, m, B);
    for (int i = 1; i < 5; ++i) CHECK(L.weight(coeffs[i]) >= i);
    for (int n = 0; n < 12; ++n) {
      LieElem poly;
      long long pw = 1;
      for (int i = 1; i < 5; ++i) {
        pw = pw * n % 5;
        L.axpy(poly, static_cast<FieldElem>(pw), coeffs[i]);
      }
      CHECK(orbit_product(ops, ch, m, B, n) == poly);
    }
  }
}

TEST_CASE("Vandermonde inverse") {
  for (int p : {3, 5, 7}) {
    auto W = vandermonde_inverse(p);
    for (int i = 1; i < p; ++i) {
      for (int j = 1; j < p; ++j) {
        long long s = 0;
        for (int n = 1; n < p; ++n) {
          long long pw = 1;
          for (int e = 0; e < j; ++e) pw = pw * n % p;
          s += W[i][n] * pw;
        }
        CHECK(s % p == (i == j ? 1 : 0));
      }
    }
  }
}
