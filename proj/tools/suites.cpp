#include "suites.hpp"

#include <random>

#include <boost/rational.hpp>

namespace nilp {

void SuiteResult::check(bool ok, const std::string& what) {
  ++checks;
  if (ok) return;
  ++failures;
  pass = false;
  if (notes.size() < 20) notes.push_back("failed: " + what);
}

Json SuiteResult::to_json() const {
  return {{"suite", name}, {"pass", pass}, {"checks", checks}, {"failures", failures},
          {"notes", notes}, {"data", data}};
}

namespace {

struct Ctx {
  Field k;
  Algebra L;
  AutSpec h;
  explicit Ctx(const RunConfig& cfg)
      : k(cfg.p, cfg.n0), L(k, cfg.spec()), h(AutSpec::make(k, cfg.c0, cfg.alpha_elems(k))) {}
};

LieElem random_elem(const Algebra& L, std::mt19937_64& rng, int terms, int min_weight = 0,
                    int max_weight = 1 << 20) {
  std::vector<std::uint32_t> ids;
  for (std::uint32_t id = 0; id < L.dim(); ++id) {
    const int w = L.word(id).weight;
    if (w >= min_weight && w <= max_weight) ids.push_back(id);
  }
  LieElem x;
  if (ids.empty()) return x;
  std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
  std::uniform_int_distribution<int> coef(1, L.field().q() - 1);
  for (int i = 0; i < terms; ++i) {
    L.axpy(x, static_cast<FieldElem>(coef(rng)), L.basis(ids[pick(rng)]));
  }
  return x;
}

// Mostly generators, plus a few degree-2 words, so that CH has nonzero higher terms.
LieElem random_low_degree(const Algebra& L, std::mt19937_64& rng, int terms) {
  std::vector<std::uint32_t> ones, twos;
  for (std::uint32_t id = 0; id < L.dim(); ++id) {
    if (L.word(id).degree == 1) ones.push_back(id);
    if (L.word(id).degree == 2) twos.push_back(id);
  }
  std::uniform_int_distribution<int> coef(1, L.field().q() - 1);
  LieElem x;
  for (int i = 0; i < terms; ++i) {
    const auto& pool = (i % 3 == 2 && !twos.empty()) ? twos : ones;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    L.axpy(x, static_cast<FieldElem>(coef(rng)), L.basis(pool[pick(rng)]));
  }
  return x;
}

LieSeries random_series(const SeriesSpace& S, std::mt19937_64& rng, int terms) {
  const Algebra& L = S.algebra();
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(L.dim() - 1));
  std::uniform_int_distribution<int> coef(1, L.field().q() - 1);
  LieSeries f = S.zero();
  for (int i = 0; i < terms; ++i) {
    const std::uint32_t id = pick(rng);
    const int s = L.word(id).weight;
    if (s >= S.p()) continue;
    const int lo = -s * S.c0() + 1, hi = (S.p() - 1 - s) * S.c0();
    if (lo > hi) continue;
    std::uniform_int_distribution<int> ex(lo, hi);
    f = S.add(f, S.monomial(ex(rng), L.basis(id, static_cast<FieldElem>(coef(rng)))));
  }
  return f;
}

std::vector<FieldElem> random_alphas(const Field& k, std::mt19937_64& rng, int len) {
  std::uniform_int_distribution<int> c(0, k.q() - 1), nz(1, k.q() - 1);
  std::vector<FieldElem> out{static_cast<FieldElem>(nz(rng))};
  for (int i = 1; i < len; ++i) out.push_back(static_cast<FieldElem>(c(rng)));
  return out;
}

}  // namespace

SuiteResult suite_ch_group(const RunConfig& cfg, int trials) {
  SuiteResult r{"ch_group"};
  Ctx c(cfg);
  UniversalBCH ch(cfg.p);
  LieOps ops{&c.L};
  std::mt19937_64 rng(cfg.seed);
  int nonabelian = 0;
  for (int t = 0; t < trials; ++t) {
    const LieElem x = random_low_degree(c.L, rng, 4), y = random_low_degree(c.L, rng, 4),
                  z = random_low_degree(c.L, rng, 4);
    const LieElem xy = ch(ops, x, y);
    if (xy != c.L.add(x, y)) ++nonabelian;
    r.check(ch(ops, xy, z) == ch(ops, x, ch(ops, y, z)), "associativity");
    r.check(ch(ops, x, c.L.neg(x)).is_zero(), "right inverse");
    r.check(ch(ops, c.L.neg(y), y).is_zero(), "left inverse");
  }
  r.check(nonabelian > 0, "some CH(x, y) differ from x + y");
  r.data = {{"dim", c.L.dim()}, {"trials", trials}, {"nonabelian", nonabelian}};
  return r;
}

SuiteResult suite_splitting(const RunConfig& cfg, int trials) {
  SuiteResult r{"splitting"};
  Field k(cfg.p, cfg.n0);
  Algebra L(k, cfg.spec());
  SeriesSpace S(L, cfg.policy);
  std::mt19937_64 rng(cfg.seed);
  for (int t = 0; t < trials; ++t) {
    const LieSeries b = random_series(S, rng, 6);
    const LieSeries R = S.R(b), X = S.S(b);
    r.check(S.add(R, S.sub(S.sigma(X, 1), X)) == b, "b = R(b) + (sigma - id) S(b)");
    for (const auto& [m, x] : R.terms) {
      r.check(m <= 0 && (m == 0 || m % cfg.p != 0), "shape of R(b)");
      if (m == 0) {
        const LieElem y = L.scale(x, k.inv(k.alpha0()));
        r.check(L.sigma(y, 1) == y, "R(b) at t^0 is alpha0 times a sigma-fixed element");
      }
    }
  }
  return r;
}

SuiteResult suite_lift(const RunConfig& cfg) {
  SuiteResult r{"lift"};
  Ctx c(cfg);
  SeriesSpace S(c.L);
  UniversalBCH ch(cfg.p);
  const LiftSolution lift = solve_lift(S, ch, c.h);
  r.check(lift.replay_ok, "recurrence replay");
  r.check(lift.relation_ok, "h(e) o c = sigma c o A(e)");
  const LinearSolution lin = solve_linearized(S, c.h);
  r.check(lin.replay_ok, "linear recurrence replay");
  const AgreementReport ag = compare_lifts(S, ch, c.h, lift, lin);
  r.check(ag.nonlinear_satisfies_linear, "interpolated c1 and log A solve the linear recurrence");
  r.check(ag.same_c1_plus, "c1+ independent of the lift");
  const Automorphism A(c.L, lift.A);
  Derivation V(c.L, lift.V.on_letters(c.L));
  for (std::uint32_t id = 0; id < c.L.dim(); ++id) {
    r.check(V.exp_apply(c.L.basis(id)) == A.apply(c.L.basis(id)), "exp(log A) = A");
  }
  r.data = {{"same_V", ag.same_V}, {"same_c1", ag.same_c1}};
  return r;
}

SuiteResult suite_ram_numbers(const RunConfig& cfg) {
  SuiteResult r{"ram_numbers"};
  Field k(cfg.p, cfg.n0);
  Algebra L(k, cfg.spec());
  F0Table t(L, cfg.depth);
  Json v = Json::object();
  for (int s = 1; s <= std::min(2, std::min(cfg.cap, cfg.p - 1)); ++s) {
    const MaxRamResult m = max_ram_number(t, s);
    v[std::to_string(s)] = to_string(m.v);
    r.check(m.v == Rational(cfg.c0 * s - 1), "v[" + std::to_string(s) + "] = c0 s - 1");
    r.check(m.ideal_outside_at_v, "L^(v) not in L(s+1)");
    r.check(m.ideal_inside_above_v, "ideal inside L(s+1) above v");
  }
  r.data = {{"v", v}, {"N", cfg.depth}};
  return r;
}

SuiteResult suite_readings(const RunConfig& cfg) {
  SuiteResult r{"readings"};
  Ctx c(cfg);
  SeriesSpace S(c.L);
  const LinearSolution lin = solve_linearized(S, c.h);
  F0Table t(c.L, cfg.depth);
  const IdealBasis W3 = weight_ideal(c.L, 3);
  const ReadingReport rr = check_v_readings(t, c.h, lin.V, &W3);
  r.check(rr.checked > 0, "some V_a checked");
  r.check(rr.mismatches.empty(), "every V_a matches a closed form");
  r.check(rr.first_reading && rr.second_reading && rr.third_reading, "all readings agree mod L(3)");
  r.check(rr.v0_plain, "V(D0) closed form");
  r.data = {{"checked", rr.checked}, {"v0_scaled", rr.v0_scaled}};
  return r;
}

SuiteResult suite_congruences(const RunConfig& cfg, int trials) {
  SuiteResult r{"congruences"};
  Field k(cfg.p, cfg.n0);
  Algebra L(k, cfg.spec());
  SeriesSpace S(L);
  UniversalBCH ch(cfg.p);
  std::mt19937_64 rng(cfg.seed);
  int checked = 0;
  for (int t = 0; t < trials; ++t) {
    const AutSpec h = AutSpec::make(k, cfg.c0, t == 0 ? cfg.alpha_elems(k) : random_alphas(k, rng, cfg.p - 1));
    if (h.identity()) continue;
    const LiftSolution lift = solve_lift(S, ch, h);
    const CongruenceReport rep = congruence_check(L, h, lift.A);
    checked += rep.checked;
    r.check(rep.ok, "D~_{a0} congruence");
    r.check(rep.d0_ok, "D~_0 congruence");
    for (const auto& f : rep.failures) r.notes.push_back(f);
  }
  r.data = {{"generators_checked", checked}};
  return r;
}

SuiteResult suite_c1_plus(const RunConfig& cfg) {
  SuiteResult r{"c1_plus"};
  Ctx c(cfg);
  SeriesSpace S(c.L);
  const LinearSolution lin = solve_linearized(S, c.h);
  F0Table t(c.L, cfg.depth);
  const C1PlusReport rep = check_c1_plus(S, t, c.h, lin.c1_plus());
  r.check(rep.equal, "closed form equals the recurrence output mod M(p-1)");
  r.check(rep.stabilized, "closed form stable in N");
  r.data = {{"n_used", rep.n_used}};
  return r;
}

SuiteResult suite_zero_part(const RunConfig& cfg) {
  SuiteResult r{"zero_part"};
  Ctx c(cfg);
  const Algebra& L = c.L;
  const int N = std::max(1, cfg.depth);
  F0Table t(L, N);
  const IdealBasis I = ramification_ideal(t, Rational(cfg.c0), N).ideal;
  const LieElem om = omega0(t, c.h, N - 1);
  const LieElem rhs = L.sigma(om, N);
  const ZeroPartResult e = solve_zero_part(L, rhs, I);
  r.check(e.solved, "solvable");
  r.check(e.in_ideal && !e.fallback, "solution inside L^(c0)");
  r.check(e.residual_ok, "residual");
  const LieElem c1z = L.add(e.c0, arithmetic_c1_zero(t, c.h, N));
  r.check(is_arithmetical(c1z, t, c.h, N, I), "restricted lift is arithmetical");
  const LieElem bump = L.d(1, 0);
  r.check(!member(bump, I), "D_{1,0} outside L^(c0)");
  r.check(!is_arithmetical(L.add(c1z, bump), t, c.h, N, I), "perturbed c1(0) is rejected");

  SeriesSpace S(L);
  const LinearSolution lin = solve_linearized(S, c.h);
  const LieElem c0 = L.sub(lin.c1_zero(), arithmetic_c1_zero(t, c.h, N));
  const LieElem lhs = zero_part_lhs(L, c0, lin.V.on_d0);
  r.data = {{"N", N},
            {"ideal_dim", I.dim()},
            {"linear_solution_rhs_plus", lhs == rhs},
            {"linear_solution_rhs_minus", lhs == L.neg(rhs)},
            {"c0", lie_to_json(L, e.c0)},
            {"v", lie_to_json(L, e.v)}};
  return r;
}

SuiteResult suite_membership(const RunConfig& cfg) {
  SuiteResult r{"membership"};
  Field k(cfg.p, cfg.n0);
  Algebra L(k, cfg.spec());
  F0Table t(L, cfg.depth);
  const MembershipReport rep = check_Lp_in_ram_ideal(t);
  r.check(rep.checked > 0, "generators checked");
  r.check(rep.ok, "generators lie in L^(c0) + C_s");
  for (const auto& f : rep.failures) r.notes.push_back(f);
  r.data = {{"checked", rep.checked}};
  return r;
}

SuiteResult suite_power_sums(int p, int n_max) {
  SuiteResult r{"power_sums"};
  long tuples = 0;
  std::vector<int> idx;
  auto powm = [p](long long b, int e) {
    long long out = 1;
    for (int i = 0; i < e; ++i) out = out * (b % p) % p;
    return out;
  };
  std::function<void(int)> rec = [&](int budget) {
    if (!idx.empty()) {
      ++tuples;
      const PolyFp f = power_sum_poly(idx, p);
      // dp[j]: sum over 0 <= m_1 < ... < m_j < n of the first j factors
      std::vector<long long> dp(idx.size() + 1, 0);
      dp[0] = 1;
      bool ok = true;
      for (int n = 0; n <= n_max; ++n) {
        ok = ok && poly_eval(f, n, p) == static_cast<int>(dp[idx.size()]);
        for (std::size_t j = idx.size(); j >= 1; --j) dp[j] = (dp[j] + dp[j - 1] * powm(n, idx[j - 1])) % p;
      }
      r.check(ok, "F at tuple of length " + std::to_string(idx.size()));
    }
    for (int i = 0; i + 1 <= budget; ++i) {
      idx.push_back(i);
      rec(budget - i - 1);
      idx.pop_back();
    }
  };
  rec(p - 1);
  r.data = {{"p", p}, {"tuples", tuples}, {"n_max", n_max}};
  return r;
}

SuiteResult suite_bernoulli(int p) {
  using Q = boost::rational<long long>;
  SuiteResult r{"bernoulli"};
  // (1 - exp(-x))/x = sum_k (-1)^k x^k/(k+1)!, inverted as a power series
  std::vector<Q> g(p), inv(p);
  Q fact(1);
  for (int k = 0; k < p; ++k) {
    fact *= (k + 1);
    g[k] = Q(k % 2 ? -1 : 1) / fact;
  }
  inv[0] = Q(1) / g[0];
  for (int m = 1; m < p; ++m) {
    Q s(0);
    for (int j = 1; j <= m; ++j) s += g[j] * inv[m - j];
    inv[m] = -s / g[0];
  }
  Q mfact(1);
  Json rows = Json::array();
  for (int m = 0; m < p; ++m) {
    if (m) mfact *= m;
    const Q rhs = bernoulli_exact(m) * Q(m % 2 ? -1 : 1) / mfact;
    r.check(inv[m] == rhs, "exact coefficient of x^" + std::to_string(m));
    const bool integral = inv[m].denominator() % p != 0;
    if (m <= p - 2) {
      r.check(integral, "p-integral coefficient of x^" + std::to_string(m));
      Field k(p, 1);
      const long long num = ((inv[m].numerator() % p) + p) % p;
      const int lhs = static_cast<int>(num * k.inv_mod_p(inv[m].denominator()) % p);
      long long mf = 1;
      for (int i = 2; i <= m; ++i) mf = mf * i % p;
      int rhs_mod = static_cast<int>((bernoulli_mod_p(m, p) * k.inv_mod_p(mf)) % p);
      if (m % 2) rhs_mod = (p - rhs_mod) % p;
      r.check(lhs == rhs_mod, "mod p coefficient of x^" + std::to_string(m));
    }
    rows.push_back({{"m", m}, {"coeff", to_string(inv[m])}, {"p_integral", integral}});
  }
  r.data = {{"p", p}, {"coefficients", rows}};
  return r;
}

SuiteResult suite_orbit_products(int p, int trials, std::uint64_t seed) {
  SuiteResult r{"orbit_products"};
  // letters of weights 1..p, filtration by weight, kept up to weight p + 1 so
  // that N(p) is not the last step and B is not exactly exp of a derivation
  Field k(p, 1);
  Algebra L(k, {p, p * p, p - 1, p + 1});
  UniversalBCH ch(p);
  LieOps ops{&L};
  const IdealBasis Np = weight_ideal(L, p);
  std::mt19937_64 rng(seed);
  int nonzero = 0, shorter_outside = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<LieElem> on_letters(L.num_gens());
    for (int i = 0; i < L.num_gens(); ++i) {
      const int w = L.gen_weight(L.gen(i).a);
      // mostly one weight step up, so that high powers of D survive
      on_letters[i] = L.add(random_elem(L, rng, 2, w + 1, w + 1), random_elem(L, rng, 1, w + 1));
    }
    const Derivation D(L, on_letters);
    const std::function<LieElem(const LieElem&)> B = [&](const LieElem& x) { return D.exp_apply(x); };
    const LieElem m = L.add(random_elem(L, rng, 3, 1, 1), random_elem(L, rng, 3));
    const LieElem prod = orbit_product(ops, ch, m, B, p);
    r.check(member(prod, Np), "orbit product in N(p)");
    if (!prod.is_zero()) ++nonzero;
    if (!member(orbit_product(ops, ch, m, B, p - 1), Np)) ++shorter_outside;
  }
  r.check(nonzero > 0, "some products are nonzero");
  r.data = {{"p", p}, {"dim", L.dim()}, {"trials", trials}, {"nonzero_products", nonzero},
            {"p_minus_1_products_outside", shorter_outside}};
  return r;
}

SuiteResult suite_mixedchar(int p, int e_k, int n0) {
  SuiteResult r{"mixedchar"};
  const MixedCharReport m = mixed_char_summary(p, e_k, n0);
  r.check(m.c0 * (p - 1) == e_k * p, "c0 = e_K p/(p-1)");
  r.check(m.v == m.v_via_herbrand, "closed form agrees with the Herbrand translation");
  for (std::size_t s = 1; s < m.v.size(); ++s) r.check(m.v[s - 1] < m.v[s], "increasing");
  r.data = mixed_char_to_json(m);
  return r;
}

std::vector<std::string> suite_names() {
  return {"ch_group", "splitting", "lift",        "ram_numbers", "readings",  "congruences", "c1_plus",
          "zero_part",     "membership",      "power_sums", "bernoulli",   "orbit_products", "mixedchar"};
}

SuiteResult run_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "ch_group") return suite_ch_group(cfg, 50);
  if (name == "splitting") return suite_splitting(cfg, 100);
  if (name == "lift") return suite_lift(cfg);
  if (name == "ram_numbers") return suite_ram_numbers(cfg);
  if (name == "readings") return suite_readings(cfg);
  if (name == "congruences") return suite_congruences(cfg, 4);
  if (name == "c1_plus") return suite_c1_plus(cfg);
  if (name == "zero_part") return suite_zero_part(cfg);
  if (name == "membership") return suite_membership(cfg);
  if (name == "power_sums") return suite_power_sums(cfg.p, 50);
  if (name == "bernoulli") return suite_bernoulli(cfg.p);
  if (name == "orbit_products") return suite_orbit_products(cfg.p, 20, cfg.seed);
  if (name == "mixedchar") {
    return suite_mixedchar(cfg.p, cfg.e_k > 0 ? cfg.e_k : cfg.p - 1, cfg.n0);
  }
  std::string all;
  for (const auto& n : suite_names()) all += " " + n;
  throw UsageError("unknown suite '" + name + "'; available:" + all);
}

}  // namespace nilp
