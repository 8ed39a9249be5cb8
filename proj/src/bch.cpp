#include "nilp/bch.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace nilp {

namespace {

long long powmod(long long b, long long e, int p) {
  long long r = 1;
  b %= p;
  if (b < 0) b += p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

int inv_mod(long long a, int p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw DomainError("division by zero mod p");
  return static_cast<int>(powmod(a, p - 2, p));
}

std::uint64_t pack(int deg, std::uint64_t idx) { return (static_cast<std::uint64_t>(deg) << 56) | idx; }

std::uint64_t word_offset(const Algebra& L, int deg) {
  std::uint64_t off = 0;
  for (int d = 1; d < deg; ++d) off += L.pow_gens(d);
  return off;
}

// Weight of a word index of given degree.
int word_weight(const Algebra& L, int deg, std::uint64_t idx) {
  const std::uint64_t g = L.num_gens();
  int w = 0;
  for (int i = 0; i < deg; ++i) {
    w += L.gen_weight(L.gen(static_cast<int>(idx % g)).a);
    idx /= g;
  }
  return w;
}

EnvElem from_map(const Algebra& L, const std::unordered_map<std::uint64_t, FieldElem>& acc) {
  std::vector<std::pair<std::uint64_t, FieldElem>> items;
  items.reserve(acc.size());
  for (const auto& kv : acc) {
    if (kv.second != 0) items.push_back(kv);
  }
  std::sort(items.begin(), items.end());
  EnvElem out;
  out.terms.reserve(items.size());
  for (const auto& [key, c] : items) {
    const int deg = static_cast<int>(key >> 56);
    const std::uint64_t idx = key & ((std::uint64_t(1) << 56) - 1);
    out.terms.push_back({static_cast<std::uint8_t>(deg),
                         static_cast<std::uint8_t>(deg ? word_weight(L, deg, idx) : 0), idx, c});
  }
  return out;
}

EnvElem env_power_series(const Algebra& L, const EnvElem& v, const std::vector<FieldElem>& coef) {
  // sum_i coef[i] v^i
  EnvElem out = env_scalar(coef.empty() ? 0 : coef[0]);
  EnvElem pw = env_scalar(1);
  for (std::size_t i = 1; i < coef.size(); ++i) {
    pw = env_mul(L, pw, v);
    if (pw.is_zero()) break;
    if (coef[i] != 0) out = env_add(L, out, env_scale(L, pw, coef[i]));
  }
  return out;
}

}  // namespace

int inv_factorial(int p, int k) {
  if (k >= p) throw DomainError("factorial not invertible mod p");
  long long f = 1;
  for (int i = 2; i <= k; ++i) f = f * i % p;
  return inv_mod(f, p);
}

int binomial_mod(long long n, long long k, int p) {
  if (k < 0 || n < 0 || k > n) return 0;
  long long r = 1;
  while (n > 0 || k > 0) {
    const long long ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    long long num = 1, den = 1;
    for (long long i = 0; i < ki; ++i) {
      num = num * ((ni - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    r = r * num % p * inv_mod(den, p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<int>(r);
}

EnvElem env_scalar(FieldElem c) {
  EnvElem e;
  if (c != 0) e.terms.push_back({0, 0, 0, c});
  return e;
}

EnvElem env_from_lie(const Algebra& L, const LieElem& x) {
  const Field& k = L.field();
  std::unordered_map<std::uint64_t, FieldElem> acc;
  for (const Term& t : x.terms) {
    const HallWord& w = L.word(t.id);
    const std::uint64_t off = word_offset(L, w.degree);
    for (const auto& [key, e] : L.expansion(t.id)) {
      FieldElem& slot = acc[pack(w.degree, key - off)];
      slot = k.add(slot, k.mul(t.c, k.from_int(e)));
    }
  }
  return from_map(L, acc);
}

EnvElem env_add(const Algebra& L, const EnvElem& a, const EnvElem& b) {
  const Field& k = L.field();
  EnvElem out;
  out.terms.reserve(a.terms.size() + b.terms.size());
  auto less = [](const EnvTerm& x, const EnvTerm& y) {
    return x.deg != y.deg ? x.deg < y.deg : x.idx < y.idx;
  };
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size() || (i < a.terms.size() && less(a.terms[i], b.terms[j]))) {
      out.terms.push_back(a.terms[i++]);
    } else if (i == a.terms.size() || less(b.terms[j], a.terms[i])) {
      out.terms.push_back(b.terms[j++]);
    } else {
      EnvTerm t = a.terms[i];
      t.c = k.add(t.c, b.terms[j].c);
      if (t.c != 0) out.terms.push_back(t);
      ++i;
      ++j;
    }
  }
  return out;
}

EnvElem env_scale(const Algebra& L, const EnvElem& a, FieldElem c) {
  if (c == 0) return {};
  EnvElem out = a;
  for (auto& t : out.terms) t.c = L.field().mul(t.c, c);
  return out;
}

EnvElem env_mul(const Algebra& L, const EnvElem& a, const EnvElem& b) {
  const Field& k = L.field();
  const int maxd = L.max_deg();
  const int cap = L.weight_cap();
  std::unordered_map<std::uint64_t, FieldElem> acc;
  acc.reserve(a.terms.size() * 4 + 16);
  for (const EnvTerm& x : a.terms) {
    for (const EnvTerm& y : b.terms) {
      const int d = x.deg + y.deg;
      if (d > maxd || x.wt + y.wt > cap) continue;
      const std::uint64_t idx = x.idx * L.pow_gens(y.deg) + y.idx;
      FieldElem& slot = acc[pack(d, idx)];
      slot = k.add(slot, k.mul(x.c, y.c));
    }
  }
  return from_map(L, acc);
}

bool env_equal(const EnvElem& a, const EnvElem& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const EnvTerm& x = a.terms[i];
    const EnvTerm& y = b.terms[i];
    if (x.deg != y.deg || x.idx != y.idx || x.c != y.c) return false;
  }
  return true;
}

EnvElem exp_trunc(const Algebra& L, const LieElem& x) {
  const int p = L.p();
  std::vector<FieldElem> coef(p);
  for (int i = 0; i < p; ++i) coef[i] = static_cast<FieldElem>(inv_factorial(p, i));
  return env_power_series(L, env_from_lie(L, x), coef);
}

EnvElem log_env(const Algebra& L, const EnvElem& u) {
  if (u.constant() != 1) throw DomainError("log of an element with constant term other than 1");
  const int p = L.p();
  EnvElem v = env_add(L, u, env_scalar(L.field().neg(1)));
  std::vector<FieldElem> coef(p, 0);
  for (int i = 1; i < p; ++i) {
    const int c = inv_mod(i, p);
    coef[i] = static_cast<FieldElem>(i % 2 ? c : (p - c) % p);
  }
  return env_power_series(L, v, coef);
}

std::optional<LieElem> lie_part(const Algebra& L, const EnvElem& u) {
  const Field& k = L.field();
  std::map<std::uint64_t, FieldElem> work;
  for (const EnvTerm& t : u.terms) {
    if (t.deg == 0) return std::nullopt;
    work[pack(t.deg, t.idx)] = t.c;
  }
  std::vector<std::uint64_t> offsets(L.max_deg() + 1, 0);
  for (int d = 1; d <= L.max_deg(); ++d) offsets[d] = word_offset(L, d);
  LieElem out;
  while (!work.empty()) {
    auto it = work.begin();
    if (it->second == 0) {
      work.erase(it);
      continue;
    }
    const int deg = static_cast<int>(it->first >> 56);
    const std::uint64_t idx = it->first & ((std::uint64_t(1) << 56) - 1);
    const long id = L.id_of_key(offsets[deg] + idx);
    if (id < 0) return std::nullopt;
    const FieldElem c = it->second;
    out.terms.push_back({static_cast<std::uint32_t>(id), c});
    for (const auto& [key, e] : L.expansion(static_cast<std::uint32_t>(id))) {
      FieldElem& slot = work[pack(deg, key - offsets[deg])];
      slot = k.sub(slot, k.mul(c, k.from_int(e)));
    }
  }
  std::sort(out.terms.begin(), out.terms.end(),
            [](const Term& a, const Term& b) { return a.id < b.id; });
  return out;
}

LieElem log_trunc(const Algebra& L, const EnvElem& u) {
  auto r = lie_part(L, log_env(L, u));
  if (!r) throw std::logic_error("truncated log is not a Lie element");
  return *r;
}

LieElem ch_mul(const Algebra& L, const LieElem& x, const LieElem& y) {
  return log_trunc(L, env_mul(L, exp_trunc(L, x), exp_trunc(L, y)));
}

UniversalBCH::UniversalBCH(int p) : p_(p) {
  k_ = std::make_unique<Field>(p, 1);
  free_ = std::make_unique<Algebra>(*k_, AlgebraSpec{p, 2, p - 1, 0}, Exec::Serial);
  z_ = ch_mul(*free_, free_->letter(0), free_->letter(1));
}

Derivation::Derivation(const Algebra& L, const std::vector<LieElem>& on_letters) : L_(&L) {
  on_basis_.resize(L.dim());
  for (std::uint32_t id = 0; id < L.dim(); ++id) {
    const HallWord& w = L.word(id);
    if (w.degree == 1) {
      on_basis_[id] = on_letters.at(w.letter);
    } else {
      const LieElem u = L.basis(w.left), v = L.basis(w.right);
      on_basis_[id] = L.add(L.bracket(on_basis_[w.left], v), L.bracket(u, on_basis_[w.right]));
    }
  }
}

LieElem Derivation::apply(const LieElem& x) const {
  LieElem out;
  for (const Term& t : x.terms) L_->axpy(out, t.c, on_basis_[t.id]);
  return out;
}

LieElem Derivation::exp_apply(const LieElem& x) const {
  const int p = L_->p();
  LieElem out = x;
  LieElem term = x;
  for (int k = 1; k < p; ++k) {
    term = apply(term);
    if (term.is_zero()) break;
    L_->axpy(out, static_cast<FieldElem>(inv_factorial(p, k)), term);
  }
  return out;
}

std::vector<std::vector<int>> vandermonde_inverse(int p) {
  const int n = p - 1;
  // Augmented [M | I] with M[r][c] = (r+1)^(c+1).
  std::vector<std::vector<long long>> a(n, std::vector<long long>(2 * n, 0));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a[r][c] = powmod(r + 1, c + 1, p);
    a[r][n + r] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    const long long inv = inv_mod(a[c][c], p);
    for (auto& v : a[c]) v = v * inv % p;
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const long long f = a[r][c];
      for (int j = 0; j < 2 * n; ++j) a[r][j] = ((a[r][j] - f * a[c][j]) % p + p) % p;
    }
  }
  // M^{-1}[i][n]: l_{i+1} = sum_n M^{-1}[i][n] l[n+1].
  std::vector<std::vector<int>> W(p, std::vector<int>(p, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) W[i + 1][j + 1] = static_cast<int>(a[i][n + j]);
  return W;
}

int bernoulli_mod_p(int m, int p) {
  if (m < 0 || m > p - 2) throw DomainError("B_m mod p needs 0 <= m <= p - 2");
  long long total = 0;
  for (int k = 0; k <= m; ++k) {
    long long inner = 0;
    for (int v = 0; v <= k; ++v) {
      const long long term = binomial_mod(k, v, p) * (m == 0 ? 1 : powmod(v, m, p)) % p;
      inner = (v % 2 ? inner - term : inner + term) % p;
    }
    total = (total + inner * inv_mod(k + 1, p)) % p;
  }
  return static_cast<int>((total % p + p) % p);
}

boost::rational<long long> bernoulli_exact(int m) {
  using Q = boost::rational<long long>;
  Q total = 0;
  for (int k = 0; k <= m; ++k) {
    long long inner = 0;
    long long binom = 1;
    for (int v = 0; v <= k; ++v) {
      long long pw = 1;
      for (int i = 0; i < m; ++i) pw *= v;
      inner += (v % 2 ? -1 : 1) * binom * pw;
      binom = binom * (k - v) / (v + 1);
    }
    total += Q(inner, k + 1);
  }
  return total;
}

int poly_eval(const PolyFp& f, long long n, int p) {
  long long r = 0;
  const long long x = ((n % p) + p) % p;
  for (std::size_t i = f.size(); i-- > 0;) r = (r * x + f[i]) % p;
  return static_cast<int>(r);
}

PolyFp power_sum_poly(const std::vector<int>& indices, int p) {
  if (indices.empty()) throw DomainError("power sum needs at least one index");
  int d = static_cast<int>(indices.size());
  for (int i : indices) {
    if (i < 0) throw DomainError("negative power-sum index");
    d += i;
  }
  if (d >= p) throw DomainError("power-sum degree must be below p");

  // Single-index polynomials F_j for j <= p - 2.
  std::vector<PolyFp> single(p - 1);
  single[0] = {0, 1};
  for (int i = 1; i <= p - 2; ++i) {
    PolyFp f(i + 2, 0);
    f[i + 1] = 1;
    for (int j = 0; j < i; ++j) {
      const int c = binomial_mod(i + 1, j, p);
      for (std::size_t t = 0; t < single[j].size(); ++t) {
        f[t] = static_cast<int>(((f[t] - static_cast<long long>(c) * single[j][t]) % p + p) % p);
      }
    }
    const int inv = inv_mod(i + 1, p);
    for (auto& c : f) c = static_cast<int>(static_cast<long long>(c) * inv % p);
    single[i] = f;
  }

  PolyFp cur = single[indices[0]];
  for (std::size_t s = 1; s < indices.size(); ++s) {
    const int is = indices[s];
    PolyFp next;
    for (std::size_t j = 1; j < cur.size(); ++j) {
      if (cur[j] == 0) continue;
      const PolyFp& f = single[j + is];
      if (next.size() < f.size()) next.resize(f.size(), 0);
      for (std::size_t t = 0; t < f.size(); ++t) {
        next[t] = static_cast<int>((next[t] + static_cast<long long>(cur[j]) * f[t]) % p);
      }
    }
    cur = next;
  }
  while (!cur.empty() && cur.back() == 0) cur.pop_back();
  return cur;
}

}  // namespace nilp
