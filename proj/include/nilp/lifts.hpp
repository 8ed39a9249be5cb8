#ifndef NILP_LIFTS_HPP
#define NILP_LIFTS_HPP

#include <map>
#include <string>
#include <vector>

#include "nilp/bch.hpp"
#include "nilp/freelie.hpp"
#include "nilp/ramgen.hpp"
#include "nilp/series.hpp"

namespace nilp {

// Values of an F_p-form map (automorphism or derivation of L) on the letters
// D_{a0} and D0; D_{an} is sent to sigma^n of the D_{a0} value.
struct LetterMap {
  std::map<int, LieElem> on_a;  // a in Z+(p) -> image of D_{a0}
  LieElem on_d0;                // image of D0 (sigma-fixed)

  const LieElem& at(int a) const;
  std::vector<LieElem> on_letters(const Algebra& L) const;
};

// Lie automorphism of L_k given on letters, k-linear, commuting with sigma.
class Automorphism {
 public:
  Automorphism(const Algebra& L, const LetterMap& m);
  static Automorphism identity(const Algebra& L);

  const Algebra& algebra() const { return *L_; }
  LieElem apply(const LieElem& x) const;
  LieSeries apply(const SeriesSpace& S, const LieSeries& f) const;
  // (this o other)(x) = this(other(x)).
  Automorphism compose(const Automorphism& other) const;
  const LetterMap& letters() const { return m_; }

 private:
  const Algebra* L_;
  LetterMap m_;
  std::vector<LieElem> on_basis_;
};

// (A (x) id)(e) = sum_a t^{-a} A(D_{a0}) + alpha0 A(D0).
LieSeries apply_to_e(const SeriesSpace& S, const LetterMap& m);

// Derivation V with exp~(V) = A, by fixed-point iteration along the weight
// filtration. Requires A - id to raise weight.
LetterMap log_automorphism(const Automorphism& A);

struct LiftSolution {
  std::vector<LieSeries> B;                       // B_s, index s - 1
  std::vector<LieSeries> X;                       // X_s = S(B_s)
  std::vector<std::map<int, LieElem>> A_step;     // a -> A_s(D_{a0}); key 0 is A_s(D0)
  LetterMap A;                                    // accumulated Ad h_{<p} on letters
  LetterMap V;                                    // log of A
  LieSeries c;
  std::vector<LieSeries> replay;                  // sigma X_s - X_s + R-part - B_s
  bool replay_ok = false;
  bool relation_ok = false;                       // h(e) o c == sigma c o A(e)
};

// Degree-by-degree R/S lift of h to the nilpotent Artin-Schreier extension.
LiftSolution solve_lift(const SeriesSpace& S, const UniversalBCH& ch, const AutSpec& h);

struct LinearSolution {
  std::vector<LieSeries> rhs;  // degree-s part of the right-hand side, index s - 1
  LieSeries c1;
  LieSeries W;                 // sum_a t^{-a} V_a with V_0 = alpha0 V(D0)
  LetterMap V;
  bool replay_ok = false;

  LieSeries c1_minus() const;
  LieElem c1_zero() const;
  LieSeries c1_plus() const;
};

// -sum_a t^{-a} eps^p a D_{a0}, the derivative of (id (x) h^U)e at U = 0.
LieSeries d_h_e(const SeriesSpace& S, const AutSpec& h);
// W built from values V(D_{a0}), V(D0).
LieSeries w_from_v(const SeriesSpace& S, const LetterMap& V);
// sigma c1 - c1 + W minus the linearized right-hand side; zero for solutions.
LieSeries linear_residual(const SeriesSpace& S, const AutSpec& h, const LieSeries& c1,
                          const LieSeries& W);

// R/S-normalized solution of the linearized recurrence, degree by degree.
LinearSolution solve_linearized(const SeriesSpace& S, const AutSpec& h);

// c(n) for the n-th iterate of a lift: prod_{j<n} (A^j (x) h^{n-1-j}) c.
LieSeries iterate_c(const SeriesSpace& S, const UniversalBCH& ch, const AutSpec& h,
                    const LiftSolution& lift, int n);
// Linear coefficient c_1 of c(U) from c(1..p-1).
LieSeries interpolate_c1(const SeriesSpace& S, const UniversalBCH& ch, const AutSpec& h,
                         const LiftSolution& lift);

struct AgreementReport {
  bool nonlinear_satisfies_linear = false;  // (interpolated c1, log A) solves the linear recurrence
  bool same_V = false;                      // R/S linear V equals log A of the R/S lift
  bool same_c1 = false;
  bool same_c1_plus = false;
};

AgreementReport compare_lifts(const SeriesSpace& S, const UniversalBCH& ch, const AutSpec& h,
                              const LiftSolution& lift, const LinearSolution& lin);

// Closed forms for V mod L(3); table must live on the same algebra.
struct ReadingReport {
  bool first_reading = false;   // second sum without sigma
  bool second_reading = false;  // second sum with sigma^m
  bool third_reading = false;   // second sum with sigma^{-m}
  bool v0_plain = false;        // V(D0) equals the V_0 closed form
  bool v0_scaled = false;       // alpha0 V(D0) equals it
  int checked = 0;
  std::vector<std::string> mismatches;
};

LieElem v_closed_form(const F0Table& table, const AutSpec& h, int a, int reading);
LieElem v0_closed_form(const F0Table& table, const AutSpec& h);
// Comparisons are modulo *mod when given.
ReadingReport check_v_readings(const F0Table& table, const AutSpec& h, const LetterMap& V,
                               const IdealBasis* mod = nullptr);

// sum_{j, 0 <= n < N} sum_{gamma < c0 + p j} sigma^n(A_j F0(gamma, -n)) t^{p^n (c0 + p j - gamma)}.
LieSeries c1_plus_closed_form(const SeriesSpace& S, const F0Table& table, const AutSpec& h, int N);

struct C1PlusReport {
  bool equal = false;
  int n_used = 0;         // smallest N after which the closed form no longer changes
  bool stabilized = false;
};

C1PlusReport check_c1_plus(const SeriesSpace& S, const F0Table& table, const AutSpec& h,
                           const LieSeries& c1_plus);

// sum_{j} sum_{0 <= i < N} sigma^i(A_j F0(c0 + p j, -i)).
LieElem arithmetic_c1_zero(const F0Table& table, const AutSpec& h, int N);
bool is_arithmetical(const LieElem& c1_zero, const F0Table& table, const AutSpec& h, int N,
                     const IdealBasis& ideal_c0);

// G0 = exp~(alpha0 ad D0), F0 = E0(alpha0 ad D0).
LieElem g0_apply(const Algebra& L, const LieElem& x);
LieElem f0_apply(const Algebra& L, const LieElem& x);

struct ZeroPartResult {
  LieElem c0;           // c^0
  LieElem v;            // V0 = alpha0 v, v sigma-fixed
  LieElem rhs;
  bool solved = false;
  bool in_ideal = false;     // found inside L^(c0)
  bool fallback = false;     // global solve was needed
  bool residual_ok = false;
};

// sum_j A_j F0(c0 + p j, -Ntilde).
LieElem omega0(const F0Table& table, const AutSpec& h, int n_tilde);
// (G0 sigma - id) c + F0(alpha0 v).
LieElem zero_part_lhs(const Algebra& L, const LieElem& c, const LieElem& v);
// Solves (G0 sigma - id) c + F0(alpha0 v) = rhs, first with c and v in the ideal.
// With fixed_v only c is unknown.
ZeroPartResult solve_zero_part(const Algebra& L, const LieElem& rhs, const IdealBasis& ideal,
                      const LieElem* fixed_v = nullptr);

struct CongruenceReport {
  bool ok = true;
  bool d0_ok = true;
  int checked = 0;
  std::vector<std::string> failures;
};

CongruenceReport congruence_check(const Algebra& L, const AutSpec& h, const LetterMap& A);

// Weight-filtration checks of Ad h_{<p}: (Ad l) o (-l) lies in L(s+1) for
// every basis l of weight s, and together with L(s+1) n C2 these elements
// span L(s+1).
struct FiltrationReport {
  bool raises = true;
  bool spans = true;
  int levels = 0;
};

FiltrationReport weight_filtration_check(const Algebra& L, const UniversalBCH& ch,
                                         const Automorphism& A);

// D_{b + c0, n} lies in V(L_k) + C2(L_k) (+ L(p), which is zero in the truncation).
bool elimination_check(const Algebra& L, const LetterMap& V, std::vector<std::string>* missing);

// Per weight s: F_p-dimension of ker(sigma - id) on the weight-s part of L_k
// against the number of Hall words of weight s.
struct SolutionCount {
  std::vector<int> kernel_dim;
  std::vector<int> expected;
  bool ok = false;
};

SolutionCount solution_count(const Algebra& L);

}  // namespace nilp

#endif
