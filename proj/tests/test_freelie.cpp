#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "nilp/freelie.hpp"

using namespace nilp;

namespace {

long long mobius(int n) {
  int r = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      r = -r;
    }
  }
  if (n > 1) r = -r;
  return r;
}

long long witt(int g, int d) {
  long long s = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    long long pw = 1;
    for (int i = 0; i < d / e; ++i) pw *= g;
    s += mobius(e) * pw;
  }
  return s / d;
}

LieElem random_elem(const Algebra& L, std::mt19937& rng, int terms) {
  std::uniform_int_distribution<std::uint32_t> id(0, static_cast<std::uint32_t>(L.dim() - 1));
  std::uniform_int_distribution<int> c(1, L.field().q() - 1);
  LieElem x;
  for (int i = 0; i < terms; ++i) L.axpy(x, static_cast<FieldElem>(c(rng)), L.basis(id(rng)));
  return x;
}

// Dense rank over F_p, used as an independent closure oracle.
int dense_rank(std::vector<std::vector<int>> m, int p) {
  int rank = 0;
  const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  for (int c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r) {
      if (m[r][c]) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    int inv = 1;
    while (m[rank][c] * inv % p != 1) ++inv;
    for (auto& v : m[rank]) v = v * inv % p;
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == rank || !m[r][c]) continue;
      const int f = m[r][c];
      for (int j = 0; j < cols; ++j) m[r][j] = ((m[r][j] - f * m[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

std::vector<int> dense(const Algebra& L, const LieElem& x) {
  std::vector<int> v(L.dim() * L.n0(), 0);
  for (const Term& t : x.terms) {
    auto c = L.field().coeffs(t.c);
    for (int j = 0; j < L.n0(); ++j) v[t.id * L.n0() + j] = c[j];
  }
  return v;
}

int brute_closure_dim(const Algebra& L, std::vector<LieElem> gens) {
  const Field& k = L.field();
  int last = -1;
  while (true) {
    std::vector<std::vector<int>> m;
    for (auto& g : gens) m.push_back(dense(L, g));
    const int r = dense_rank(m, k.p());
    if (r == last) return r;
    last = r;
    const std::size_t n = gens.size();
    for (std::size_t i = 0; i < n; ++i) {
      gens.push_back(L.sigma(gens[i], 1));
      gens.push_back(L.sigma(gens[i], -1));
      gens.push_back(L.scale(gens[i], k.gen()));
      for (int l = 0; l < L.num_gens(); ++l) gens.push_back(L.bracket(gens[i], L.letter(l)));
    }
  }
}

}  // namespace

TEST_CASE("graded dimensions follow the Witt formula") {
  for (int amax = 2; amax <= 6; ++amax) {
    Field k(7, 1);
    Algebra L(k, {7, amax, 6, 0});
    const int g = L.num_gens();
    CHECK(g == amax);
    auto dims = L.graded_dims();
    for (int d = 1; d <= 6; ++d) CHECK(dims[d - 1] == witt(g, d));
  }
  Field k5(5, 1);
  Algebra two(k5, {5, 2, 4, 0});
  CHECK(two.graded_dims() == std::vector<int>{2, 1, 2, 3});
  Algebra two2(k5, {5, 2, 2, 0});
  CHECK(two2.dim() == 3);
  Algebra three(k5, {5, 3, 2, 0});
  CHECK(three.graded_dims()[1] == 3);
}

TEST_CASE("bracket axioms") {
  Field k(5, 2);
  Algebra L(k, {5, 4, 4, 0});
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    LieElem x = random_elem(L, rng, 4), y = random_elem(L, rng, 4), z = random_elem(L, rng, 3);
    CHECK(L.bracket(x, x).is_zero());
    CHECK(L.add(L.bracket(x, y), L.bracket(y, x)).is_zero());
    LieElem jac = L.add(L.add(L.bracket(L.bracket(x, y), z), L.bracket(L.bracket(y, z), x)),
                        L.bracket(L.bracket(z, x), y));
    CHECK(jac.is_zero());
    FieldElem c = k.gen();
    CHECK(L.bracket(L.scale(x, c), y) == L.scale(L.bracket(x, y), c));
    CHECK(L.bracket(L.add(x, z), y) == L.add(L.bracket(x, y), L.bracket(z, y)));
  }
}

TEST_CASE("bracket agrees with the tensor commutator") {
  Field k(5, 1);
  Algebra L(k, {5, 4, 4, 0});
  // For Lyndon basis elements, the expansion of [b_i, b_j] equals the commutator of expansions.
  for (std::uint32_t i = 0; i < L.dim(); i += 3) {
    for (std::uint32_t j = 0; j < L.dim(); j += 5) {
      if (L.word(i).degree + L.word(j).degree > 4) continue;
      LieElem b = L.bracket(L.basis(i), L.basis(j));
      std::map<std::uint64_t, int> lhs, rhs;
      for (const Term& t : b.terms) {
        for (auto [key, c] : L.expansion(t.id)) lhs[key] = (lhs[key] + c * static_cast<int>(t.c)) % 5;
      }
      for (auto [ki, ci] : L.expansion(i)) {
        for (auto [kj, cj] : L.expansion(j)) {
          auto wi = L.key_word(ki), wj = L.key_word(kj);
          auto a = wi;
          a.insert(a.end(), wj.begin(), wj.end());
          auto bw = wj;
          bw.insert(bw.end(), wi.begin(), wi.end());
          rhs[L.word_key(a)] = ((rhs[L.word_key(a)] + ci * cj) % 5 + 5) % 5;
          rhs[L.word_key(bw)] = ((rhs[L.word_key(bw)] - ci * cj) % 5 + 5) % 5;
        }
      }
      std::erase_if(lhs, [](auto& e) { return e.second % 5 == 0; });
      std::erase_if(rhs, [](auto& e) { return e.second % 5 == 0; });
      for (auto& e : lhs) e.second = (e.second % 5 + 5) % 5;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("sigma action") {
  Field k(3, 2);
  Algebra L(k, {3, 6, 2, 0});
  CHECK(L.sigma(L.d0(), 1) == L.d0());
  CHECK(L.sigma(L.d(1, 0), 1) == L.d(1, 1));
  CHECK(L.sigma(L.d(1, 1), 1) == L.d(1, 0));
  CHECK(L.sigma(L.d(0, 0), 1) == L.d(0, 1));
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    LieElem x = random_elem(L, rng, 5), y = random_elem(L, rng, 5);
    CHECK(L.sigma(L.sigma(x, 1), -1) == x);
    CHECK(L.sigma(x, 2) == x);
    CHECK(L.sigma(L.bracket(x, y), 1) == L.bracket(L.sigma(x, 1), L.sigma(y, 1)));
    FieldElem lam = static_cast<FieldElem>(rng() % k.q());
    CHECK(L.sigma(L.scale(x, lam), 1) == L.scale(L.sigma(x, 1), k.frobenius(lam, 1)));
  }
}

TEST_CASE("weight filtration") {
  Field k(5, 1);
  Algebra L3(k, {3, 9, 4, 0});
  CHECK(L3.weight(L3.d(1, 0)) == 1);
  CHECK(L3.weight(L3.d(4, 0)) == 2);
  CHECK(L3.weight(L3.bracket(L3.d(4, 0), L3.d(4, 0))) == 5);
  CHECK(L3.weight(L3.d0()) == 1);
  IdealBasis W2 = weight_ideal(L3, 2);
  for (int a = 1; a < 9; ++a) {
    if (a % 5 == 0) continue;
    CHECK(member(L3.d(a, 0), W2) == (L3.gen_weight(a) >= 2));
  }
  // [L(s1), L(s2)] lies in L(s1 + s2)
  for (std::uint32_t i = 0; i < L3.dim(); ++i) {
    for (std::uint32_t j = i + 1; j < L3.dim(); j += 7) {
      LieElem b = L3.bracket(L3.basis(i), L3.basis(j));
      if (b.is_zero()) continue;
      CHECK(L3.weight(b) >= std::min(5, L3.word(i).weight + L3.word(j).weight));
    }
  }
}

TEST_CASE("weight cap drops heavy words") {
  Field k(5, 2);
  Algebra L(k, {5, 19, 4, 4});
  for (std::uint32_t i = 0; i < L.dim(); ++i) CHECK(L.word(i).weight <= 4);
  CHECK(L.letter_of(19, 0) == -1);
  CHECK(L.letter_of(18, 1) >= 0);
}

TEST_CASE("serial and parallel construction agree") {
  Field k(3, 2);
  Algebra A(k, {3, 6, 2, 2}, Exec::Serial), B(k, {3, 6, 2, 2}, Exec::Parallel);
  REQUIRE(A.dim() == B.dim());
  for (std::uint32_t i = 0; i < A.dim(); ++i) {
    CHECK(A.describe_word(i) == B.describe_word(i));
    for (std::uint32_t j = 0; j < A.dim(); ++j) CHECK(A.bracket(A.basis(i), A.basis(j)) == B.bracket(B.basis(i), B.basis(j)));
  }
}

TEST_CASE("minimal sigma ideal against a brute-force closure") {
  Field k(5, 2);
  Algebra L(k, {5, 3, 4, 0});
  CHECK(minimal_sigma_ideal(L, {}).dim() == 0);
  CHECK(minimal_sigma_ideal(L, {LieElem{}}).dim() == 0);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<LieElem> gens{random_elem(L, rng, 2)};
    if (trial == 0) gens = {L.d(1, 0)};
    IdealBasis I = minimal_sigma_ideal(L, gens, Exec::Serial);
    IdealBasis J = minimal_sigma_ideal(L, gens, Exec::Parallel);
    CHECK(I.same_space(J));
    CHECK(I.dim() == brute_closure_dim(L, gens));
    // idempotence
    IdealBasis K = minimal_sigma_ideal(L, I.elements());
    CHECK(K.same_space(I));
    for (const auto& r : I.rows()) {
      CHECK(member(I.unflatten(r), I));
      CHECK(member(L.sigma(I.unflatten(r), 1), I));
    }
  }
  // top-degree word: closure is the sigma-orbit span over F_p
  std::uint32_t top = 0;
  while (L.word(top).degree < 4) ++top;
  IdealBasis T = minimal_sigma_ideal(L, {L.basis(top)});
  CHECK(T.dim() == brute_closure_dim(L, {L.basis(top)}));
  CHECK(T.dim() == 2 * 2);
}

TEST_CASE("rows are in reduced echelon form") {
  Field k(3, 2);
  Algebra L(k, {3, 5, 2, 0});
  IdealBasis I = minimal_sigma_ideal(L, {L.d(2, 0)});
  std::set<std::uint32_t> pivots;
  for (const auto& r : I.rows()) {
    CHECK(r.front().second == 1);
    pivots.insert(r.front().first);
  }
  for (const auto& r : I.rows()) {
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(pivots.count(r[i].first) == 0);
  }
}

TEST_CASE("member with modulo") {
  Field k(3, 1);
  Algebra L(k, {3, 9, 2, 0});
  IdealBasis C2 = commutator_ideal(L, 2);
  IdealBasis W2 = weight_ideal(L, 2);
  CHECK(member(LieElem{}, W2));
  CHECK(!member(L.d(1, 0), W2));
  CHECK(member(L.add(L.d(4, 0), L.bracket(L.d(1, 0), L.d(2, 0))), W2, &C2));
  CHECK(!member(L.add(L.d(1, 0), L.d(4, 0)), W2, &C2));
}
