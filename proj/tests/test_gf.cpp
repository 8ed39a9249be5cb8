#include <random>

#include "doctest.h"
#include "nilp/gf.hpp"

using namespace nilp;

TEST_CASE("prime field arithmetic") {
  Field k(3, 1);
  CHECK(k.mul(2, 2) == 1);
  CHECK(k.add(2, 2) == 1);
  CHECK(k.neg(1) == 2);
  for (FieldElem x = 1; x < 3; ++x) CHECK(k.mul(x, k.inv(x)) == 1);
  CHECK_THROWS_AS(k.inv(0), DomainError);
}

TEST_CASE("F9 with modulus w^2+1") {
  Field k(3, 2);
  CHECK(k.modulus() == std::vector<int>{1, 0});
  const FieldElem w = k.gen();
  CHECK(k.mul(w, w) == k.from_int(-1));
  CHECK(k.frobenius(w, 1) == k.from_coeffs({0, 2}));
  CHECK(k.trace(w) == 0);
  CHECK(k.trace(1) == 2);
  CHECK(k.alpha0() == 2);
  CHECK(k.trace(k.alpha0()) == 1);
}

TEST_CASE("smallest irreducible modulus yields a field") {
  for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {5, 2}, {7, 2}, {3, 4}}) {
    auto m = smallest_irreducible(p, n);
    Field k(p, n);
    for (FieldElem x = 1; x < static_cast<FieldElem>(k.q()); ++x) {
      CHECK(k.mul(x, k.inv(x)) == 1);
    }
    CHECK(m.size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("frobenius is a field automorphism of order N0") {
  std::mt19937 rng(7);
  for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {3, 3}, {7, 1}}) {
    Field k(p, n);
    std::uniform_int_distribution<int> pick(0, k.q() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      FieldElem x = pick(rng), y = pick(rng);
      CHECK(k.frobenius(k.mul(x, y), 1) == k.mul(k.frobenius(x, 1), k.frobenius(y, 1)));
      CHECK(k.frobenius(k.add(x, y), 1) == k.add(k.frobenius(x, 1), k.frobenius(y, 1)));
      CHECK(k.frobenius(x, n) == x);
      CHECK(k.frobenius(k.frobenius(x, 1), -1) == x);
      CHECK((k.frobenius(x, 1) == x) == k.in_prime_field(x));
      CHECK(k.trace(k.frobenius(x, 1)) == k.trace(x));
      CHECK(k.in_prime_field(static_cast<FieldElem>(k.trace(x))));
    }
    CHECK(k.trace(k.alpha0()) == 1);
  }
}

TEST_CASE("alpha0 for N0 = 1 is one") {
  for (int p : {3, 5, 7, 11}) CHECK(Field(p, 1).alpha0() == 1);
}

TEST_CASE("field construction rejects bad input") {
  CHECK_THROWS_AS(Field(2, 1), DomainError);
  CHECK_THROWS_AS(Field(9, 1), DomainError);
  CHECK_THROWS_AS(Field(3, 0), DomainError);
  CHECK_THROWS_AS(Field(3, 7), ResourceError);
}
