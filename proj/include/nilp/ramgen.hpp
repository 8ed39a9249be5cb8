#ifndef NILP_RAMGEN_HPP
#define NILP_RAMGEN_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "nilp/freelie.hpp"

namespace nilp {

using Rational = boost::rational<long long>;

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

// (s_1! (s_2 - s_1)! ...)^{-1} mod p over the runs of a nonincreasing sequence
// starting at 0; 0 for any other sequence.
int eta_coeff(const std::vector<int>& n, int p);

// One term of a composition: D_{a, n} with a in Z0(p).
struct CompLetter {
  int a;
  int n;
};

// All compositions (a_i, n_i) with 0 = n_1 >= ... >= n_s >= -N, s < p, a_1 != 0,
// carried through the algebra's truncation, grouped by gamma and by the
// depth -n_s. F0(gamma, N') for N' <= N is the sum over depths <= N'.
class F0Table {
 public:
  F0Table(const Algebra& L, int N, Exec exec = Exec::Parallel);

  const Algebra& algebra() const { return *L_; }
  int depth() const { return N_; }

  LieElem get(const Rational& gamma) const { return get(gamma, N_); }
  LieElem get(const Rational& gamma, int N) const;
  // Terms whose composition has min_i n_i = -d exactly.
  LieElem get_exact_depth(const Rational& gamma, int d) const;
  // gamma values with a nonzero F0 at full depth, ascending.
  std::vector<Rational> gammas() const;
  std::size_t compositions() const { return count_; }

 private:
  const Algebra* L_;
  int N_;
  std::size_t count_ = 0;
  // (gamma * p^N, depth) -> partial sum
  std::map<std::pair<long long, int>, LieElem> parts_;
};

// Slow reference enumeration by nested loops over explicit compositions.
LieElem f0_reference(const Algebra& L, const Rational& gamma, int N);

struct RamIdeal {
  IdealBasis ideal;
  std::vector<Rational> generators_used;
  Rational v;
  int N;
};

// Minimal sigma-stable ideal containing every F0(gamma, -N) with gamma >= v.
RamIdeal ramification_ideal(const F0Table& table, const Rational& v, int N, Exec exec);
RamIdeal ramification_ideal(const F0Table& table, const Rational& v, int N);

// Smallest N0 <= N <= N_max after which the ideal stops changing for three
// consecutive depths (the last is returned when it never settles).
int ram_depth_probe(const Algebra& L, const Rational& v, int n_start, int n_max);

struct MaxRamResult {
  Rational v;
  bool ideal_outside_at_v = false;      // L^(v) not in L(s+1)
  bool ideal_inside_above_v = false;    // next grid point lies in L(s+1)
};

// Largest grid point v with L^(v) not contained in L(s+1).
MaxRamResult max_ram_number(const F0Table& table, int s);

struct MembershipReport {
  bool ok = true;
  std::vector<std::string> failures;
  int checked = 0;
};

// Every generator D_{a n} of weight s lies in L^(c0)_k + C_s(L_k).
MembershipReport check_Lp_in_ram_ideal(const F0Table& table);

// Gamma(A, v0) below a bound, A = [0, p v0) intersected with Z0(p), depth <= D.
std::vector<Rational> gamma_set(int p, const Rational& v0, int depth, const Rational& below);
// max of the same set, by branch and bound (-1 when empty).
Rational gamma_max_below(int p, const Rational& v0, int depth, const Rational& below);

// Piecewise-linear increasing function through (0,0) with a final slope.
class HerbrandFn {
 public:
  HerbrandFn() : HerbrandFn({}, Rational(1)) {}
  HerbrandFn(std::vector<std::pair<Rational, Rational>> vertices, Rational final_slope);

  static HerbrandFn identity() { return HerbrandFn(); }
  // One edge at (x, x) and slope 1/q after it.
  static HerbrandFn single_edge(const Rational& x, const Rational& slope_after);

  const std::vector<std::pair<Rational, Rational>>& vertices() const { return v_; }
  const Rational& final_slope() const { return final_; }
  Rational operator()(const Rational& x) const;
  HerbrandFn inverse() const;
  // (this o inner)(x) = this(inner(x)).
  HerbrandFn compose(const HerbrandFn& inner) const;
  // Slopes are nonincreasing (the shape of a Herbrand function).
  bool concave() const;
  std::vector<Rational> slopes() const;
  bool operator==(const HerbrandFn& o) const { return v_ == o.v_ && final_ == o.final_; }

 private:
  void simplify();
  std::vector<std::pair<Rational, Rational>> v_;  // excludes (0,0)
  Rational final_;
};

struct ParamChoice {
  Rational gamma_below;  // max Gamma point below v0
  Rational delta;
  Rational r_star;
  int n_star = 0;
  long long q = 0;
  long long b_star = 0;
  long long a_star = 0;
  Rational phi_surrogate;
};

// Checks the constraints on (delta, r*, N*) for v0; the phi term in the
// second inequality uses phi_surrogate.
// choose_parameters takes v0 - delta as the coarsest Z[1/p] point allowed,
// r* as the least b*/(q - 1) at or above the midpoint of (v0 - delta, v0),
// and the least N* for which everything holds.
bool params_valid(int p, const Rational& v0, const ParamChoice& c, int n_tilde,
                  std::string* why = nullptr);
ParamChoice choose_parameters(int p, const Rational& v0, int n_tilde, int gamma_depth = 6);

struct MixedCharReport {
  int p;
  int e_k;
  int n0;
  int c0;
  int generators;
  std::vector<Rational> v;  // v[s - 1] for s = 1..p-1
  std::vector<Rational> v_via_herbrand;
};

MixedCharReport mixed_char_summary(int p, int e_k, int n0);

}  // namespace nilp

#endif
