#include "nilp/ramgen.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>
#include <omp.h>

#include "nilp/series.hpp"

namespace nilp {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > std::numeric_limits<long long>::max() / b) throw OverflowError("p^N overflows");
    r *= b;
  }
  return r;
}

bool is_p_power(long long d, int p) {
  while (d % p == 0) d /= p;
  return d == 1;
}

int mod_n0(int n, int n0) {
  const int r = n % n0;
  return r < 0 ? r + n0 : r;
}

struct Letter {
  int a;
  int n;
  LieElem d;
};

std::vector<Letter> letters_at_depth(const Algebra& L, int N) {
  std::vector<Letter> out;
  for (int n = 0; n >= -N; --n) {
    for (int i = 0; i < L.num_gens(); ++i) {
      const GenId& g = L.gen(i);
      if (g.a != 0 && g.n != mod_n0(n, L.n0())) continue;
      if (g.a == 0) {
        out.push_back({0, n, L.d(0, mod_n0(n, L.n0()))});
      } else {
        out.push_back({g.a, n, L.letter(i)});
      }
    }
  }
  return out;
}

// Numerator of a p^n over p^N.
long long scaled(int a, int n, int N, int p) { return static_cast<long long>(a) * ipow(p, N + n); }

}  // namespace

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
      const long long v = std::stoll(s, &used);
      if (used != s.size()) throw DomainError("not a rational: " + s);
      return Rational(v);
    }
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    const long long n = std::stoll(a, &used);
    if (used != a.size()) throw DomainError("not a rational: " + s);
    const long long d = std::stoll(b, &used);
    if (used != b.size() || d == 0) throw DomainError("not a rational: " + s);
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw DomainError("not a rational: " + s);
  }
}

int eta_coeff(const std::vector<int>& n, int p) {
  if (n.empty() || n[0] != 0) return 0;
  for (std::size_t i = 1; i < n.size(); ++i) {
    if (n[i] > n[i - 1]) return 0;
  }
  long long denom = 1;
  std::size_t i = 0;
  while (i < n.size()) {
    std::size_t j = i;
    while (j < n.size() && n[j] == n[i]) ++j;
    for (std::size_t f = 2; f <= j - i; ++f) denom = denom * static_cast<long long>(f) % p;
    i = j;
  }
  Field fp(p, 1);
  return fp.inv_mod_p(denom);
}

F0Table::F0Table(const Algebra& L, int N, Exec exec) : L_(&L), N_(N) {
  const int p = L.p();
  const Field& k = L.field();
  const std::vector<Letter> letters = letters_at_depth(L, N);
  std::vector<std::size_t> first;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i].a != 0 && letters[i].n == 0) first.push_back(i);
  }
  using Map = std::map<std::pair<long long, int>, LieElem>;
  std::vector<Map> partial(first.size());
  std::vector<std::size_t> counts(first.size(), 0);

  auto run = [&](std::size_t root) {
    Map& out = partial[root];
    const Letter& l1 = letters[first[root]];
    struct Frame {
      LieElem x;
      long long num;
      int last_n;
      int run;
      int eta;
      int s;
    };
    const int a1 = k.mod(l1.a);
    std::vector<Frame> stack{{l1.d, scaled(l1.a, 0, N, p), 0, 1, 1, 1}};
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      ++counts[root];
      const FieldElem c = k.from_int(static_cast<long long>(a1) * f.eta);
      if (c != 0) {
        LieElem& slot = out[{f.num, -f.last_n}];
        L.axpy(slot, c, f.x);
      }
      if (f.s + 1 >= p) continue;
      for (const Letter& l : letters) {
        if (l.n > f.last_n) continue;
        LieElem y = L.bracket(f.x, l.d);
        if (y.is_zero()) continue;
        const int run = l.n == f.last_n ? f.run + 1 : 1;
        const int eta = static_cast<int>(static_cast<long long>(f.eta) * k.inv_mod_p(run) % p);
        stack.push_back({std::move(y), f.num + scaled(l.a, l.n, N, p), l.n, run, eta, f.s + 1});
      }
    }
  };

  const long n_roots = static_cast<long>(first.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long r = 0; r < n_roots; ++r) run(static_cast<std::size_t>(r));
  } else {
    for (long r = 0; r < n_roots; ++r) run(static_cast<std::size_t>(r));
  }
  for (std::size_t r = 0; r < first.size(); ++r) {
    count_ += counts[r];
    for (auto& [key, x] : partial[r]) {
      if (x.is_zero()) continue;
      LieElem& slot = parts_[key];
      slot = L.add(slot, x);
    }
  }
  for (auto it = parts_.begin(); it != parts_.end();) {
    it = it->second.is_zero() ? parts_.erase(it) : std::next(it);
  }
}

LieElem F0Table::get(const Rational& gamma, int N) const {
  LieElem out;
  const long long den = gamma.denominator();
  const long long scale = ipow(L_->p(), N_);
  if (scale % den != 0) return out;
  const long long num = gamma.numerator() * (scale / den);
  for (auto it = parts_.lower_bound({num, 0}); it != parts_.end() && it->first.first == num; ++it) {
    if (it->first.second <= N) out = L_->add(out, it->second);
  }
  return out;
}

LieElem F0Table::get_exact_depth(const Rational& gamma, int d) const {
  const long long den = gamma.denominator();
  const long long scale = ipow(L_->p(), N_);
  if (scale % den != 0) return {};
  auto it = parts_.find({gamma.numerator() * (scale / den), d});
  return it == parts_.end() ? LieElem{} : it->second;
}

std::vector<Rational> F0Table::gammas() const {
  const long long scale = ipow(L_->p(), N_);
  std::vector<Rational> out;
  for (auto it = parts_.begin(); it != parts_.end();) {
    const long long num = it->first.first;
    LieElem sum;
    for (; it != parts_.end() && it->first.first == num; ++it) sum = L_->add(sum, it->second);
    if (!sum.is_zero()) out.emplace_back(num, scale);
  }
  return out;
}

LieElem f0_reference(const Algebra& L, const Rational& gamma, int N) {
  const int p = L.p();
  const Field& k = L.field();
  const std::vector<Letter> letters = letters_at_depth(L, N);
  const std::size_t m = letters.size();
  LieElem out;
  for (int s = 1; s < p; ++s) {
    std::vector<std::size_t> idx(s, 0);
    while (true) {
      Rational g(0);
      std::vector<int> ns;
      for (int i = 0; i < s; ++i) {
        const Letter& l = letters[idx[i]];
        g += Rational(l.a) * (l.n >= 0 ? Rational(ipow(p, l.n)) : Rational(1, ipow(p, -l.n)));
        ns.push_back(l.n);
      }
      const int eta = eta_coeff(ns, p);
      const int a1 = k.mod(letters[idx[0]].a);
      if (g == gamma && eta != 0 && a1 != 0) {
        LieElem x = letters[idx[0]].d;
        for (int i = 1; i < s; ++i) x = L.bracket(x, letters[idx[i]].d);
        L.axpy(out, k.from_int(static_cast<long long>(a1) * eta), x);
      }
      int pos = s - 1;
      while (pos >= 0 && ++idx[pos] == m) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return out;
}

RamIdeal ramification_ideal(const F0Table& table, const Rational& v, int N, Exec exec) {
  const Algebra& L = table.algebra();
  RamIdeal r{IdealBasis(L), {}, v, N};
  std::vector<LieElem> gens;
  for (const Rational& g : table.gammas()) {
    if (g < v) continue;
    LieElem x = table.get(g, N);
    if (x.is_zero()) continue;
    gens.push_back(std::move(x));
    r.generators_used.push_back(g);
  }
  r.ideal = minimal_sigma_ideal(L, gens, exec);
  return r;
}

RamIdeal ramification_ideal(const F0Table& table, const Rational& v, int N) {
  return ramification_ideal(table, v, N, table.algebra().exec());
}

int ram_depth_probe(const Algebra& L, const Rational& v, int n_start, int n_max) {
  F0Table table(L, n_max);
  std::vector<IdealBasis> ideals;
  for (int N = n_start; N <= n_max; ++N) ideals.push_back(ramification_ideal(table, v, N).ideal);
  for (std::size_t i = 0; i + 2 < ideals.size(); ++i) {
    if (ideals[i].same_space(ideals[i + 1]) && ideals[i].same_space(ideals[i + 2])) {
      return n_start + static_cast<int>(i);
    }
  }
  return n_max;
}

MaxRamResult max_ram_number(const F0Table& table, int s) {
  const Algebra& L = table.algebra();
  const IdealBasis W = weight_ideal(L, s + 1);
  const std::vector<Rational> grid = table.gammas();
  MaxRamResult r;
  int at = -1;
  for (int i = static_cast<int>(grid.size()) - 1; i >= 0; --i) {
    if (!member(table.get(grid[i]), W)) {
      at = i;
      break;
    }
  }
  if (at < 0) {
    r.v = Rational(0);
    r.ideal_inside_above_v = true;
    return r;
  }
  r.v = grid[at];
  r.ideal_outside_at_v = !W.includes(ramification_ideal(table, r.v, table.depth()).ideal);
  if (at + 1 < static_cast<int>(grid.size())) {
    r.ideal_inside_above_v = W.includes(ramification_ideal(table, grid[at + 1], table.depth()).ideal);
  } else {
    r.ideal_inside_above_v = true;
  }
  return r;
}

MembershipReport check_Lp_in_ram_ideal(const F0Table& table) {
  const Algebra& L = table.algebra();
  MembershipReport r;
  const IdealBasis I = ramification_ideal(table, Rational(L.c0()), table.depth()).ideal;
  std::map<int, IdealBasis> cs;
  for (int i = 0; i < L.num_gens(); ++i) {
    const GenId& g = L.gen(i);
    if (g.a == 0) continue;
    const int s = L.gen_weight(g.a);
    ++r.checked;
    if (s == 1) continue;
    auto it = cs.find(s);
    if (it == cs.end()) it = cs.emplace(s, commutator_ideal(L, s)).first;
    if (!member(L.letter(i), I, &it->second)) {
      r.ok = false;
      r.failures.push_back("D_{" + std::to_string(g.a) + "," + std::to_string(g.n) + "}");
    }
  }
  return r;
}

std::vector<int> gamma_digits(int p, const Rational& v0) {
  std::vector<int> A;
  for (int a = 0; Rational(a) < Rational(p) * v0; ++a) {
    if (a == 0 || a % p != 0) A.push_back(a);
  }
  return A;
}

std::vector<Rational> gamma_set(int p, const Rational& v0, int depth, const Rational& below) {
  const std::vector<int> A = gamma_digits(p, v0);
  std::set<Rational> out;
  struct Frame {
    Rational g;
    int n;
    int s;
    bool operator<(const Frame& o) const {
      return std::tie(g, n, s) < std::tie(o.g, o.n, o.s);
    }
  };
  std::set<Frame> seen;
  std::vector<Frame> stack;
  for (int a : A) {
    if (Rational(a) < below) stack.push_back({Rational(a), 0, 1});
  }
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (!seen.insert(f).second) continue;
    out.insert(f.g);
    if (f.s + 1 >= p) continue;
    for (int n = f.n; n >= -depth; --n) {
      const Rational unit(1, ipow(p, -n));
      for (int a : A) {
        const Rational g = f.g + Rational(a) * unit;
        if (g < below) stack.push_back({g, n, f.s + 1});
      }
    }
  }
  return {out.begin(), out.end()};
}

Rational gamma_max_below(int p, const Rational& v0, int depth, const Rational& below) {
  const std::vector<int> A = gamma_digits(p, v0);
  const Rational amax(A.back());
  Rational best(-1);
  // Terms after position s at level <= n add at most (p - 1 - s) amax p^n.
  std::function<void(const Rational&, int, int)> dfs = [&](const Rational& g, int n, int s) {
    if (g > best) best = g;
    if (s + 1 >= p) return;
    for (int m = n; m >= -depth; --m) {
      const Rational unit(1, ipow(p, -m));
      if (g + Rational(p - 1 - s) * amax * unit <= best) break;
      for (auto it = A.rbegin(); it != A.rend(); ++it) {
        const Rational h = g + Rational(*it) * unit;
        if (h < below) dfs(h, m, s + 1);
      }
    }
  };
  for (auto it = A.rbegin(); it != A.rend(); ++it) {
    if (Rational(*it) < below) dfs(Rational(*it), 0, 1);
  }
  return best;
}

HerbrandFn::HerbrandFn(std::vector<std::pair<Rational, Rational>> vertices, Rational final_slope)
    : v_(std::move(vertices)), final_(final_slope) {
  if (final_ <= 0) throw DomainError("Herbrand function needs a positive final slope");
  Rational px(0), py(0);
  for (const auto& [x, y] : v_) {
    if (x <= px || y <= py) throw DomainError("Herbrand vertices must be strictly increasing");
    px = x;
    py = y;
  }
  simplify();
}

HerbrandFn HerbrandFn::single_edge(const Rational& x, const Rational& slope_after) {
  return HerbrandFn({{x, x}}, slope_after);
}

void HerbrandFn::simplify() {
  std::vector<std::pair<Rational, Rational>> out;
  Rational px(0), py(0);
  for (std::size_t i = 0; i < v_.size(); ++i) {
    const Rational in = (v_[i].second - py) / (v_[i].first - px);
    const Rational next = i + 1 < v_.size()
                              ? (v_[i + 1].second - v_[i].second) / (v_[i + 1].first - v_[i].first)
                              : final_;
    if (in == next) continue;
    out.push_back(v_[i]);
    px = v_[i].first;
    py = v_[i].second;
  }
  v_ = std::move(out);
}

std::vector<Rational> HerbrandFn::slopes() const {
  std::vector<Rational> out;
  Rational px(0), py(0);
  for (const auto& [x, y] : v_) {
    out.push_back((y - py) / (x - px));
    px = x;
    py = y;
  }
  out.push_back(final_);
  return out;
}

bool HerbrandFn::concave() const {
  const auto s = slopes();
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] > s[i - 1]) return false;
  }
  return true;
}

Rational HerbrandFn::operator()(const Rational& x) const {
  Rational px(0), py(0);
  for (const auto& [vx, vy] : v_) {
    if (x <= vx) return py + (x - px) * (vy - py) / (vx - px);
    px = vx;
    py = vy;
  }
  return py + (x - px) * final_;
}

HerbrandFn HerbrandFn::inverse() const {
  std::vector<std::pair<Rational, Rational>> w;
  for (const auto& [x, y] : v_) w.emplace_back(y, x);
  return HerbrandFn(std::move(w), Rational(1) / final_);
}

HerbrandFn HerbrandFn::compose(const HerbrandFn& inner) const {
  std::set<Rational> xs;
  for (const auto& [x, y] : inner.v_) xs.insert(x);
  const HerbrandFn inv = inner.inverse();
  for (const auto& [x, y] : v_) xs.insert(inv(x));
  std::vector<std::pair<Rational, Rational>> w;
  for (const Rational& x : xs) w.emplace_back(x, (*this)(inner(x)));
  return HerbrandFn(std::move(w), final_ * inner.final_);
}

bool params_valid(int p, const Rational& v0, const ParamChoice& c, int n_tilde, std::string* why) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  auto big = [](const Rational& r) {
    return cpp_rational(cpp_int(r.numerator()), cpp_int(r.denominator()));
  };
  const Rational x = v0 - c.delta;
  if (c.delta <= 0) return fail("delta must be positive");
  if (!(x > c.gamma_below)) return fail("v0 - delta must exceed every Gamma point below v0");
  if (!(Rational(p) * c.delta < 2 * v0)) return fail("p delta < 2 v0 fails");
  if (!is_p_power(x.denominator(), p)) return fail("v0 - delta must lie in Z[1/p]");
  if (c.r_star.numerator() % p == 0 || c.r_star.denominator() % p == 0) {
    return fail("r* must be a p-adic unit");
  }
  if (!(x < c.r_star && c.r_star < v0)) return fail("r* must lie in (v0 - delta, v0)");
  if (c.n_star < n_tilde + 1) return fail("N* below the stabilization depth");
  cpp_int q = 1;
  for (int i = 0; i < c.n_star; ++i) q *= p;
  if (cpp_int(c.q) != q) return fail("q != p^N*");
  const cpp_rational bq = big(c.r_star) * cpp_rational(q - 1);
  if (denominator(bq) != 1 || numerator(bq) != c.b_star) return fail("b* != r*(q - 1)");
  if (c.b_star % p == 0) return fail("b* divisible by p");
  const cpp_rational xb = big(x), rb = big(c.r_star), qb(q);
  const cpp_rational aq = qb * xb;
  if (denominator(aq) != 1 || numerator(aq) != c.a_star) return fail("a* != q (v0 - delta)");
  if (c.a_star <= 0 || c.a_star % p != 0) return fail("a* must lie in pN");
  if (!(rb - xb > (rb + cpp_rational(p) * xb) / qb)) return fail("first inequality in d) fails");
  if (!(big(v0) - rb > (big(c.phi_surrogate) - rb) / qb)) {
    return fail("second inequality in d) fails");
  }
  return true;
}

ParamChoice choose_parameters(int p, const Rational& v0, int n_tilde, int gamma_depth) {
  if (v0 <= 0) throw DomainError("v0 must be positive");
  ParamChoice c;
  // The maximum below v0 is attained at bounded depth; probe until it settles.
  Rational gmax(-1);
  for (int d = gamma_depth, stable = 0; stable < 2 && d < gamma_depth + 12; ++d) {
    const Rational m = gamma_max_below(p, v0, d, v0);
    stable = m == gmax ? stable + 1 : 0;
    gmax = m;
  }
  c.gamma_below = gmax;
  c.phi_surrogate = Rational(p) * v0;
  const Rational floor_x = std::max(gmax, v0 * Rational(p - 2, p));
  int m = 0;
  Rational x;
  for (;; ++m) {
    const long long pm = ipow(p, m);
    const Rational scaled_floor = floor_x * Rational(pm);
    const long long j = scaled_floor.numerator() / scaled_floor.denominator() + 1;
    x = Rational(j, pm);
    if (x < v0) break;
  }
  c.delta = v0 - x;
  const Rational mid = (x + v0) / 2;
  for (int N = std::max(n_tilde + 1, m + 1);; ++N) {
    long long q = 0;
    try {
      q = ipow(p, N);
      (void)ipow(p, N + 1);
    } catch (const OverflowError&) {
      throw ResourceError("no admissible q = p^N within 64-bit range");
    }
    // least p-unit b* with r* = b*/(q - 1) at or above the midpoint of (v0 - delta, v0)
    const Rational lo = mid * Rational(q - 1);
    long long b = lo.numerator() / lo.denominator() + (lo.denominator() == 1 ? 0 : 1);
    while (b % p == 0) ++b;
    const Rational r(b, q - 1);
    if (!(r < v0)) continue;
    c.n_star = N;
    c.q = q;
    c.b_star = b;
    c.r_star = r;
    const Rational a = Rational(q) * x;
    c.a_star = a.numerator() / a.denominator();
    if (params_valid(p, v0, c, n_tilde)) return c;
  }
}

MixedCharReport mixed_char_summary(int p, int e_k, int n0) {
  if (e_k <= 0 || e_k % (p - 1) != 0) {
    throw DomainError("e_K = " + std::to_string(e_k) + " is not a positive multiple of p - 1 = " +
                      std::to_string(p - 1) + "; c0 = e_K p/(p-1) would not lie in pN");
  }
  if (n0 < 1) throw DomainError("N0 must be positive");
  MixedCharReport r{p, e_k, n0, e_k * p / (p - 1), e_k * n0 + 2, {}, {}};
  const HerbrandFn phi({{Rational(r.c0), Rational(r.c0)}}, Rational(1, p));
  for (int s = 1; s < p; ++s) {
    if (s == 1) {
      r.v.emplace_back(r.c0);
      r.v_via_herbrand.emplace_back(r.c0);
      continue;
    }
    r.v.push_back(Rational(e_k) * (Rational(1) + Rational(s, p - 1)) - Rational(1, p));
    r.v_via_herbrand.push_back(phi(Rational(r.c0 * s - 1)));
  }
  return r;
}

}  // namespace nilp
