#ifndef NILP_GF_HPP
#define NILP_GF_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilp {

// An element of k = F_{p^N0}, encoded as sum_i c_i p^i over the polynomial
// basis 1, w, ..., w^{N0-1}. The code is canonical, so equality is integer
// equality and codes below p are exactly the prime field.
using FieldElem = std::uint32_t;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Table-driven arithmetic for a small finite field. The modulus is the
// lexicographically smallest monic irreducible polynomial of degree N0.
class Field {
 public:
  static constexpr int kMaxOrder = 1024;

  Field(int p, int n0);

  int p() const { return p_; }
  int n0() const { return n0_; }
  int q() const { return q_; }
  // Coefficients m_0..m_{N0-1} of the monic modulus w^N0 + sum m_i w^i.
  const std::vector<int>& modulus() const { return modulus_; }

  FieldElem zero() const { return 0; }
  FieldElem one() const { return 1; }
  FieldElem from_int(long long v) const;
  FieldElem from_coeffs(const std::vector<int>& c) const;
  std::vector<int> coeffs(FieldElem x) const;
  // Generator w of k over F_p (equals 1 when N0 = 1).
  FieldElem gen() const { return n0_ == 1 ? 1 : static_cast<FieldElem>(p_); }

  FieldElem add(FieldElem x, FieldElem y) const { return add_[x * q_ + y]; }
  FieldElem sub(FieldElem x, FieldElem y) const { return add_[x * q_ + neg_[y]]; }
  FieldElem neg(FieldElem x) const { return neg_[x]; }
  FieldElem mul(FieldElem x, FieldElem y) const { return mul_[x * q_ + y]; }
  FieldElem inv(FieldElem x) const;
  FieldElem pow(FieldElem x, long long e) const;

  // sigma^e(x) = x^{p^e}, e taken mod N0.
  FieldElem frobenius(FieldElem x, long long e) const;
  // Tr_{k/F_p}(x) as a residue in [0, p).
  int trace(FieldElem x) const;
  bool in_prime_field(FieldElem x) const { return x < static_cast<FieldElem>(p_); }

  // Lexicographically smallest nonzero element (by coefficient sequence,
  // c_0 first) with trace 1.
  FieldElem alpha0() const { return alpha0_; }

  // Residue arithmetic in F_p.
  int mod(long long v) const {
    long long r = v % p_;
    return static_cast<int>(r < 0 ? r + p_ : r);
  }
  int inv_mod_p(long long v) const;

 private:
  int p_;
  int n0_;
  int q_;
  std::vector<int> modulus_;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> mul_;
  std::vector<std::uint16_t> neg_;
  std::vector<std::uint16_t> inv_;
  std::vector<std::uint16_t> frob_;  // frob_[x] = x^p
  FieldElem alpha0_ = 1;
};

bool is_prime(long long n);

// Lexicographic search for the smallest monic irreducible of degree n0.
std::vector<int> smallest_irreducible(int p, int n0);

}  // namespace nilp

#endif
