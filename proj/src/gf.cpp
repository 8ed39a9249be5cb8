#include "nilp/gf.hpp"

#include <algorithm>

namespace nilp {

namespace {

using Poly = std::vector<int>;  // low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over F_p.
Poly poly_rem(Poly a, const Poly& b, int p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

// Monic polynomial of degree d whose lower coefficients are the base-p
// digits of index, digit 0 being the constant term.
Poly monic_from_index(long long index, int d, int p) {
  Poly f(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    f[i] = static_cast<int>(index % p);
    index /= p;
  }
  f[d] = 1;
  return f;
}

// Sort key with the constant coefficient as the most significant digit.
long long lex_to_index(const std::vector<int>& digits, int p) {
  long long v = 0;
  for (int d : digits) v = v * p + d;
  return v;
}

bool irreducible(const Poly& f, int p) {
  const int n = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= n / 2; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
      Poly g = monic_from_index(idx, d, p);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<int> smallest_irreducible(int p, int n0) {
  if (n0 == 1) return {0};
  long long count = 1;
  for (int i = 0; i < n0; ++i) count *= p;
  // Walk coefficient sequences (m_0, m_1, ..., m_{N0-1}) in lexicographic order.
  for (long long r = 0; r < count; ++r) {
    std::vector<int> digits(n0);
    long long t = r;
    for (int i = n0 - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(t % p);
      t /= p;
    }
    Poly f(digits.begin(), digits.end());
    f.push_back(1);
    if (irreducible(f, p)) return digits;
  }
  throw DomainError("no irreducible polynomial found");
}

Field::Field(int p, int n0) : p_(p), n0_(n0) {
  if (p <= 2 || !is_prime(p)) throw DomainError("p must be an odd prime");
  if (n0 < 1) throw DomainError("N0 must be positive");
  long long q = 1;
  for (int i = 0; i < n0; ++i) {
    q *= p;
    if (q > kMaxOrder) throw ResourceError("field order exceeds table cap");
  }
  q_ = static_cast<int>(q);
  modulus_ = smallest_irreducible(p, n0);

  Poly mod(modulus_.begin(), modulus_.end());
  mod.push_back(1);

  add_.resize(static_cast<std::size_t>(q_) * q_);
  mul_.resize(static_cast<std::size_t>(q_) * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  frob_.resize(q_);

  std::vector<Poly> as_poly(q_);
  for (int x = 0; x < q_; ++x) {
    Poly a(n0, 0);
    int t = x;
    for (int i = 0; i < n0; ++i) {
      a[i] = t % p;
      t /= p;
    }
    as_poly[x] = a;
  }
  auto encode = [&](Poly a) {
    a.resize(n0, 0);
    FieldElem v = 0;
    for (int i = n0 - 1; i >= 0; --i) v = v * p + a[i];
    return v;
  };
  for (int x = 0; x < q_; ++x) {
    Poly nx(n0);
    for (int i = 0; i < n0; ++i) nx[i] = (p - as_poly[x][i]) % p;
    neg_[x] = static_cast<std::uint16_t>(encode(nx));
    for (int y = 0; y < q_; ++y) {
      Poly s(n0);
      for (int i = 0; i < n0; ++i) s[i] = (as_poly[x][i] + as_poly[y][i]) % p;
      add_[x * q_ + y] = static_cast<std::uint16_t>(encode(s));
      Poly prod(2 * n0, 0);
      for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n0; ++j)
          prod[i + j] = (prod[i + j] + as_poly[x][i] * as_poly[y][j]) % p;
      mul_[x * q_ + y] = static_cast<std::uint16_t>(encode(poly_rem(prod, mod, p)));
    }
  }
  for (int x = 1; x < q_; ++x) {
    for (int y = 1; y < q_; ++y) {
      if (mul_[x * q_ + y] == 1) {
        inv_[x] = static_cast<std::uint16_t>(y);
        break;
      }
    }
  }
  for (int x = 0; x < q_; ++x) frob_[x] = static_cast<std::uint16_t>(pow(x, p));

  // Frobenius must have order exactly N0 on the generator.
  FieldElem w = gen();
  FieldElem y = w;
  for (int e = 1; e <= n0; ++e) {
    y = frob_[y];
    if (y == w && e < n0) throw DomainError("modulus is not irreducible");
  }
  if (y != w) throw DomainError("modulus is not irreducible");

  bool found = false;
  std::vector<FieldElem> order(q_);
  for (int x = 0; x < q_; ++x) order[x] = x;
  auto key = [&](FieldElem x) {
    std::vector<int> c = coeffs(x);
    return lex_to_index(c, p);
  };
  std::sort(order.begin(), order.end(),
            [&](FieldElem a, FieldElem b) { return key(a) < key(b); });
  for (FieldElem x : order) {
    if (x != 0 && trace(x) == 1) {
      alpha0_ = x;
      found = true;
      break;
    }
  }
  if (!found) throw DomainError("no trace-one element");
}

FieldElem Field::from_int(long long v) const { return static_cast<FieldElem>(mod(v)); }

FieldElem Field::from_coeffs(const std::vector<int>& c) const {
  if (static_cast<int>(c.size()) != n0_) throw DomainError("coefficient count must equal N0");
  FieldElem v = 0;
  for (int i = n0_ - 1; i >= 0; --i) v = v * p_ + mod(c[i]);
  return v;
}

std::vector<int> Field::coeffs(FieldElem x) const {
  std::vector<int> c(n0_);
  for (int i = 0; i < n0_; ++i) {
    c[i] = static_cast<int>(x % p_);
    x /= p_;
  }
  return c;
}

FieldElem Field::inv(FieldElem x) const {
  if (x == 0) throw DomainError("inverse of zero");
  return inv_[x];
}

FieldElem Field::pow(FieldElem x, long long e) const {
  if (e < 0) {
    x = inv(x);
    e = -e;
  }
  FieldElem r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

FieldElem Field::frobenius(FieldElem x, long long e) const {
  long long k = e % n0_;
  if (k < 0) k += n0_;
  for (long long i = 0; i < k; ++i) x = frob_[x];
  return x;
}

int Field::trace(FieldElem x) const {
  FieldElem s = 0;
  FieldElem y = x;
  for (int i = 0; i < n0_; ++i) {
    s = add(s, y);
    y = frob_[y];
  }
  return static_cast<int>(s);
}

int Field::inv_mod_p(long long v) const {
  const int a = mod(v);
  if (a == 0) throw DomainError("residue not invertible mod p");
  long long r = 1, b = a, e = p_ - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p_;
    b = b * b % p_;
    e >>= 1;
  }
  return static_cast<int>(r);
}

}  // namespace nilp
