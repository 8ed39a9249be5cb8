#include "nilp/freelie.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nilp {

namespace {

// Dense scratch vector with a touched list, reused per thread.
class Accumulator {
 public:
  void prepare(std::size_t n) {
    if (val_.size() < n) {
      val_.assign(n, 0);
      mark_.assign(n, 0);
    }
  }
  void add(const Field& k, std::uint32_t id, FieldElem c) {
    if (c == 0) return;
    if (!mark_[id]) {
      mark_[id] = 1;
      touched_.push_back(id);
      val_[id] = c;
    } else {
      val_[id] = k.add(val_[id], c);
    }
  }
  LieElem take() {
    std::sort(touched_.begin(), touched_.end());
    LieElem out;
    out.terms.reserve(touched_.size());
    for (std::uint32_t id : touched_) {
      if (val_[id] != 0) out.terms.push_back({id, val_[id]});
      val_[id] = 0;
      mark_[id] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<FieldElem> val_;
  std::vector<std::uint8_t> mark_;
  std::vector<std::uint32_t> touched_;
};

Accumulator& scratch(std::size_t n) {
  thread_local Accumulator acc;
  acc.prepare(n);
  return acc;
}

int gcd_int(int a, int b) { return std::gcd(a, b); }

}  // namespace

Algebra::Algebra(const Field& k, AlgebraSpec spec, Exec exec)
    : k_(&k), spec_(spec), exec_(exec) {
  const int p = k.p();
  if (spec_.c0 <= 0) throw DomainError("c0 must be positive");
  if (spec_.max_deg < 1 || spec_.max_deg > p - 1) throw DomainError("max_deg must lie in 1..p-1");
  if (spec_.a_max < 1) throw DomainError("a_max must be positive");
  cap_ = spec_.max_weight > 0 ? spec_.max_weight : 1 << 20;

  auto add_gen = [&](int a, int n) {
    const int w = gen_weight(a);
    if (w > cap_) return;
    letter_index_[static_cast<long long>(a) * 4096 + n] = static_cast<int>(gens_.size());
    gens_.push_back({a, n});
    gen_weights_.push_back(w);
  };
  add_gen(0, 0);
  for (int a = 1; a < spec_.a_max; ++a) {
    if (gcd_int(a, p) != 1) continue;
    for (int n = 0; n < k.n0(); ++n) add_gen(a, n);
  }

  build_words();
  build_expansions();
  build_brackets();
  build_sigma();
}

int Algebra::gen_weight(int a) const { return a == 0 ? 1 : a / spec_.c0 + 1; }

int Algebra::letter_of(int a, int n) const {
  if (a == 0) n = 0;
  n %= n0();
  if (n < 0) n += n0();
  auto it = letter_index_.find(static_cast<long long>(a) * 4096 + n);
  return it == letter_index_.end() ? -1 : it->second;
}

std::uint64_t Algebra::word_key(const std::vector<std::uint16_t>& w) const {
  std::uint64_t idx = 0;
  const std::uint64_t g = gens_.size();
  for (auto l : w) idx = idx * g + l;
  std::uint64_t off = 0;
  for (std::size_t d = 1; d < w.size(); ++d) off += pow_g_[d];
  return off + idx;
}

std::vector<std::uint16_t> Algebra::key_word(std::uint64_t key) const {
  std::size_t d = 1;
  while (d + 1 < pow_g_.size() && key >= pow_g_[d]) {
    key -= pow_g_[d];
    ++d;
  }
  std::vector<std::uint16_t> w(d);
  const std::uint64_t g = gens_.size();
  for (std::size_t i = d; i-- > 0;) {
    w[i] = static_cast<std::uint16_t>(key % g);
    key /= g;
  }
  return w;
}

void Algebra::build_words() {
  const int g = num_gens();
  const int n = spec_.max_deg;
  pow_g_.assign(n + 2, 1);
  for (int d = 1; d <= n + 1; ++d) {
    if (pow_g_[d - 1] > (std::uint64_t(1) << 58) / std::max(1, g)) {
      throw ResourceError("word space too large");
    }
    pow_g_[d] = pow_g_[d - 1] * g;
  }

  // Duval's algorithm: Lyndon words of length <= n in lexicographic order.
  std::vector<std::vector<std::uint16_t>> lyndon;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    int wt = 0;
    for (int l : w) wt += gen_weights_[l];
    if (wt <= cap_) {
      lyndon.emplace_back(w.begin(), w.end());
    }
    const std::size_t m = w.size();
    while (static_cast<int>(w.size()) < n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == g - 1) w.pop_back();
  }
  std::stable_sort(lyndon.begin(), lyndon.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  if (lyndon.size() > 4000000) throw ResourceError("Hall basis exceeds cap");

  words_.clear();
  words_.reserve(lyndon.size());
  for (auto& lw : lyndon) {
    HallWord hw;
    hw.degree = static_cast<int>(lw.size());
    hw.weight = 0;
    for (auto l : lw) hw.weight += gen_weights_[l];
    hw.word = lw;
    const auto id = static_cast<std::uint32_t>(words_.size());
    if (hw.degree == 1) {
      hw.letter = lw[0];
    } else {
      for (std::size_t i = 1; i < lw.size(); ++i) {
        std::vector<std::uint16_t> suf(lw.begin() + i, lw.end());
        auto it = word_ids_.find(word_key(suf));
        if (it != word_ids_.end()) {
          std::vector<std::uint16_t> pre(lw.begin(), lw.begin() + i);
          hw.left = static_cast<int>(word_ids_.at(word_key(pre)));
          hw.right = static_cast<int>(it->second);
          break;
        }
      }
      if (hw.left < 0) throw std::logic_error("standard factorization failed");
    }
    word_ids_[word_key(lw)] = id;
    words_.push_back(std::move(hw));
  }
}

void Algebra::build_expansions() {
  const int p = this->p();
  expansions_.resize(words_.size());
  for (std::size_t id = 0; id < words_.size(); ++id) {
    const HallWord& hw = words_[id];
    if (hw.degree == 1) {
      expansions_[id] = {{word_key(hw.word), 1}};
      continue;
    }
    const auto& eu = expansions_[hw.left];
    const auto& ev = expansions_[hw.right];
    const int du = words_[hw.left].degree;
    const int dv = words_[hw.right].degree;
    std::uint64_t off_u = 0, off_v = 0, off_uv = 0;
    for (int d = 1; d < du; ++d) off_u += pow_g_[d];
    for (int d = 1; d < dv; ++d) off_v += pow_g_[d];
    for (int d = 1; d < du + dv; ++d) off_uv += pow_g_[d];
    std::map<std::uint64_t, int> acc;
    for (const auto& [ku, cu] : eu) {
      for (const auto& [kv, cv] : ev) {
        const std::uint64_t iu = ku - off_u, iv = kv - off_v;
        const std::uint64_t uv = off_uv + iu * pow_g_[dv] + iv;
        const std::uint64_t vu = off_uv + iv * pow_g_[du] + iu;
        acc[uv] = (acc[uv] + cu * cv) % p;
        acc[vu] = ((acc[vu] - cu * cv) % p + p) % p;
      }
    }
    auto& out = expansions_[id];
    for (const auto& [key, c] : acc) {
      if (c != 0) out.push_back({key, c});
    }
  }
}

const std::vector<std::pair<std::uint64_t, int>>& Algebra::expansion(std::uint32_t id) const {
  return expansions_[id];
}

std::vector<Term> Algebra::project(std::vector<std::pair<std::uint64_t, int>>& tensor,
                                   int degree) const {
  (void)degree;
  const int p = this->p();
  std::map<std::uint64_t, int> work;
  for (const auto& [key, c] : tensor) {
    int& v = work[key];
    v = ((v + c) % p + p) % p;
  }
  std::vector<Term> out;
  while (!work.empty()) {
    auto it = work.begin();
    const int c = it->second;
    if (c == 0) {
      work.erase(it);
      continue;
    }
    auto wid = word_ids_.find(it->first);
    if (wid == word_ids_.end()) throw std::logic_error("projection met a non-Lyndon leading word");
    out.push_back({wid->second, static_cast<FieldElem>(c)});
    for (const auto& [key, e] : expansions_[wid->second]) {
      int& v = work[key];
      v = ((v - c * e) % p + p) % p;
    }
  }
  return out;
}

void Algebra::build_brackets() {
  const std::size_t n = words_.size();
  pair_rows_.assign(n, {});
  std::vector<std::vector<std::pair<std::uint32_t, std::vector<Term>>>> rows(n);
  const int maxd = spec_.max_deg;
  const int p = this->p();

#pragma omp parallel for schedule(dynamic, 16) if (exec_ == Exec::Parallel)
  for (long li = 0; li < static_cast<long>(n); ++li) {
    const auto i = static_cast<std::uint32_t>(li);
    const HallWord& wi = words_[i];
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const HallWord& wj = words_[j];
      if (wi.degree + wj.degree > maxd) break;  // ids sorted by degree
      if (wi.weight + wj.weight > cap_) continue;
      std::vector<Term> res;
      // Fast path: the concatenation is Lyndon with this standard factorization.
      std::vector<std::uint16_t> cat(wi.word);
      cat.insert(cat.end(), wj.word.begin(), wj.word.end());
      auto it = word_ids_.find(word_key(cat));
      if (it != word_ids_.end() && words_[it->second].left == static_cast<int>(i) &&
          words_[it->second].right == static_cast<int>(j)) {
        res.push_back({it->second, 1});
      } else {
        std::vector<std::uint16_t> rcat(wj.word);
        rcat.insert(rcat.end(), wi.word.begin(), wi.word.end());
        auto jt = word_ids_.find(word_key(rcat));
        if (jt != word_ids_.end() && words_[jt->second].left == static_cast<int>(j) &&
            words_[jt->second].right == static_cast<int>(i)) {
          res.push_back({jt->second, static_cast<FieldElem>(p - 1)});
        } else {
          const auto& ei = expansions_[i];
          const auto& ej = expansions_[j];
          const int di = wi.degree, dj = wj.degree;
          std::uint64_t off_i = 0, off_j = 0, off_ij = 0;
          for (int d = 1; d < di; ++d) off_i += pow_g_[d];
          for (int d = 1; d < dj; ++d) off_j += pow_g_[d];
          for (int d = 1; d < di + dj; ++d) off_ij += pow_g_[d];
          std::vector<std::pair<std::uint64_t, int>> tensor;
          tensor.reserve(2 * ei.size() * ej.size());
          for (const auto& [ku, cu] : ei) {
            for (const auto& [kv, cv] : ej) {
              const std::uint64_t iu = ku - off_i, iv = kv - off_j;
              tensor.push_back({off_ij + iu * pow_g_[dj] + iv, cu * cv});
              tensor.push_back({off_ij + iv * pow_g_[di] + iu, -cu * cv});
            }
          }
          res = project(tensor, di + dj);
        }
      }
      rows[i].push_back({j, std::move(res)});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& [j, res] : rows[i]) {
      pair_rows_[i].push_back({j, static_cast<std::uint32_t>(bracket_terms_.size()),
                               static_cast<std::uint32_t>(res.size())});
      bracket_terms_.insert(bracket_terms_.end(), res.begin(), res.end());
    }
  }
}

void Algebra::build_sigma() {
  const std::size_t n = words_.size();
  sigma_fwd_.resize(n);
  sigma_bwd_.resize(n);
  for (std::size_t id = 0; id < n; ++id) {
    const HallWord& hw = words_[id];
    if (hw.degree == 1) {
      const GenId& g = gens_[hw.letter];
      const int fwd = letter_of(g.a, g.n + 1);
      const int bwd = letter_of(g.a, g.n - 1);
      sigma_fwd_[id] = letter(fwd);
      sigma_bwd_[id] = letter(bwd);
    } else {
      sigma_fwd_[id] = bracket(sigma_fwd_[hw.left], sigma_fwd_[hw.right]);
      sigma_bwd_[id] = bracket(sigma_bwd_[hw.left], sigma_bwd_[hw.right]);
    }
  }
}

long Algebra::id_of_key(std::uint64_t key) const {
  auto it = word_ids_.find(key);
  return it == word_ids_.end() ? -1 : static_cast<long>(it->second);
}

std::vector<int> Algebra::graded_dims() const {
  std::vector<int> dims(spec_.max_deg, 0);
  for (const auto& w : words_) ++dims[w.degree - 1];
  return dims;
}

long Algebra::find_word(const std::vector<std::uint16_t>& w) const {
  if (w.empty() || static_cast<int>(w.size()) > spec_.max_deg) return -1;
  for (auto l : w) {
    if (l >= gens_.size()) return -1;
  }
  auto it = word_ids_.find(word_key(w));
  return it == word_ids_.end() ? -1 : static_cast<long>(it->second);
}

LieElem Algebra::basis(std::uint32_t id, FieldElem c) const {
  LieElem x;
  if (c != 0) x.terms.push_back({id, c});
  return x;
}

LieElem Algebra::letter(int l, FieldElem c) const {
  if (l < 0) return {};
  return basis(static_cast<std::uint32_t>(word_ids_.at(word_key({static_cast<std::uint16_t>(l)}))), c);
}

LieElem Algebra::d(int a, int n) const {
  if (a == 0) return letter(0, k_->frobenius(k_->alpha0(), n));
  return letter(letter_of(a, n));
}

LieElem Algebra::d0() const { return letter(0); }

LieElem Algebra::add(const LieElem& x, const LieElem& y) const {
  LieElem out;
  out.terms.reserve(x.terms.size() + y.terms.size());
  std::size_t i = 0, j = 0;
  while (i < x.terms.size() || j < y.terms.size()) {
    if (j == y.terms.size() || (i < x.terms.size() && x.terms[i].id < y.terms[j].id)) {
      out.terms.push_back(x.terms[i++]);
    } else if (i == x.terms.size() || y.terms[j].id < x.terms[i].id) {
      out.terms.push_back(y.terms[j++]);
    } else {
      const FieldElem c = k_->add(x.terms[i].c, y.terms[j].c);
      if (c != 0) out.terms.push_back({x.terms[i].id, c});
      ++i;
      ++j;
    }
  }
  return out;
}

LieElem Algebra::neg(const LieElem& x) const {
  LieElem out = x;
  for (auto& t : out.terms) t.c = k_->neg(t.c);
  return out;
}

LieElem Algebra::sub(const LieElem& x, const LieElem& y) const { return add(x, neg(y)); }

LieElem Algebra::scale(const LieElem& x, FieldElem c) const {
  if (c == 0) return {};
  LieElem out = x;
  for (auto& t : out.terms) t.c = k_->mul(t.c, c);
  return out;
}

LieElem Algebra::scale_int(const LieElem& x, long long c) const {
  return scale(x, k_->from_int(c));
}

void Algebra::axpy(LieElem& x, FieldElem c, const LieElem& y) const {
  if (c == 0 || y.is_zero()) return;
  x = add(x, scale(y, c));
}

const std::vector<Term>& Algebra::bracket_basis(std::uint32_t i, std::uint32_t j,
                                               bool& negate) const {
  static const std::vector<Term> kEmpty;
  thread_local std::vector<Term> view;
  negate = false;
  if (i == j) return kEmpty;
  if (i > j) {
    std::swap(i, j);
    negate = true;
  }
  const auto& row = pair_rows_[i];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const PairRef& r, std::uint32_t v) { return r.j < v; });
  if (it == row.end() || it->j != j) return kEmpty;
  view.assign(bracket_terms_.begin() + it->offset,
              bracket_terms_.begin() + it->offset + it->length);
  return view;
}

LieElem Algebra::bracket(const LieElem& x, const LieElem& y) const {
  if (x.is_zero() || y.is_zero()) return {};
  Accumulator& acc = scratch(words_.size());
  const int maxd = spec_.max_deg;
  for (const Term& tx : x.terms) {
    const HallWord& wx = words_[tx.id];
    for (const Term& ty : y.terms) {
      const HallWord& wy = words_[ty.id];
      if (wx.degree + wy.degree > maxd || wx.weight + wy.weight > cap_) continue;
      if (tx.id == ty.id) continue;
      std::uint32_t i = tx.id, j = ty.id;
      bool negate = false;
      if (i > j) {
        std::swap(i, j);
        negate = true;
      }
      const auto& row = pair_rows_[i];
      auto it = std::lower_bound(row.begin(), row.end(), j,
                                 [](const PairRef& r, std::uint32_t v) { return r.j < v; });
      if (it == row.end() || it->j != j) continue;
      FieldElem c = k_->mul(tx.c, ty.c);
      if (negate) c = k_->neg(c);
      for (std::uint32_t s = 0; s < it->length; ++s) {
        const Term& t = bracket_terms_[it->offset + s];
        acc.add(*k_, t.id, k_->mul(c, t.c));
      }
    }
  }
  return acc.take();
}

LieElem Algebra::ad_power(const LieElem& x, const LieElem& y, int k) const {
  LieElem r = x;
  for (int i = 0; i < k && !r.is_zero(); ++i) r = bracket(r, y);
  return r;
}

LieElem Algebra::sigma(const LieElem& x, long long e) const {
  long long k = e % n0();
  if (k < 0) k += n0();
  if (k == 0) return x;
  const bool forward = k <= n0() / 2 || n0() == 1;
  const long long steps = forward ? k : n0() - k;
  const auto& table = forward ? sigma_fwd_ : sigma_bwd_;
  LieElem cur = x;
  for (long long s = 0; s < steps; ++s) {
    Accumulator& acc = scratch(words_.size());
    for (const Term& t : cur.terms) {
      const FieldElem c = forward ? k_->frobenius(t.c, 1) : k_->frobenius(t.c, -1);
      for (const Term& u : table[t.id].terms) acc.add(*k_, u.id, k_->mul(c, u.c));
    }
    cur = acc.take();
  }
  return cur;
}

int Algebra::weight(const LieElem& x) const {
  int w = p();
  for (const Term& t : x.terms) w = std::min(w, words_[t.id].weight);
  return w;
}

int Algebra::degree_min(const LieElem& x) const {
  int d = spec_.max_deg + 1;
  for (const Term& t : x.terms) d = std::min(d, words_[t.id].degree);
  return d;
}

LieElem Algebra::filter(const LieElem& x, const std::function<bool(const HallWord&)>& keep) const {
  LieElem out;
  for (const Term& t : x.terms) {
    if (keep(words_[t.id])) out.terms.push_back(t);
  }
  return out;
}

LieElem Algebra::degree_part(const LieElem& x, int d) const {
  return filter(x, [d](const HallWord& w) { return w.degree == d; });
}

LieElem Algebra::mod_weight(const LieElem& x, int s) const {
  return filter(x, [s](const HallWord& w) { return w.weight < s; });
}

std::string Algebra::describe_word(std::uint32_t id) const {
  const HallWord& w = words_[id];
  if (w.degree == 1) {
    const GenId& g = gens_[w.letter];
    if (g.is_d0()) return "D0";
    return "D" + std::to_string(g.a) + "_" + std::to_string(g.n);
  }
  return "[" + describe_word(w.left) + "," + describe_word(w.right) + "]";
}

std::string Algebra::describe(const LieElem& x) const {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : x.terms) {
    if (!first) os << " + ";
    first = false;
    auto c = k_->coeffs(t.c);
    if (n0() == 1) {
      os << c[0];
    } else {
      os << "(";
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
      os << ")";
    }
    os << "*" << describe_word(t.id);
  }
  return os.str();
}

// ---------------------------------------------------------------------------

IdealBasis::IdealBasis(const Algebra& alg) : alg_(&alg) {}

namespace {

using Row = IdealBasis::Row;

Row axpy_rows(const Row& a, int c, const Row& b, int p) {
  // a + c*b over F_p
  Row out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      const int v = (c * b[j].second) % p;
      if (v) out.push_back({b[j].first, static_cast<std::uint8_t>(v)});
      ++j;
    } else {
      const int v = (a[i].second + c * b[j].second) % p;
      if (v) out.push_back({a[i].first, static_cast<std::uint8_t>(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

int row_value(const Row& r, std::uint32_t col) {
  auto it = std::lower_bound(r.begin(), r.end(), col,
                             [](const auto& e, std::uint32_t v) { return e.first < v; });
  return (it != r.end() && it->first == col) ? it->second : 0;
}

}  // namespace

void IdealBasis::reduce(Row& r) const {
  if (rows_.empty() || r.empty()) return;
  const int p = alg_->p();
  Row orig = r;
  for (const auto& [col, val] : orig) {
    auto it = piv_.find(col);
    if (it == piv_.end()) continue;
    r = axpy_rows(r, (p - val) % p, rows_[it->second], p);
  }
}

bool IdealBasis::insert(Row r) {
  const int p = alg_->p();
  reduce(r);
  if (r.empty()) return false;
  const int lead = r.front().second;
  const int inv = alg_->field().inv_mod_p(lead);
  for (auto& e : r) e.second = static_cast<std::uint8_t>(e.second * inv % p);
  const std::uint32_t pc = r.front().first;
  for (auto& row : rows_) {
    const int v = row_value(row, pc);
    if (v) row = axpy_rows(row, (p - v) % p, r, p);
  }
  piv_[pc] = rows_.size();
  rows_.push_back(std::move(r));
  return true;
}

bool IdealBasis::contains(const Row& r) const {
  Row t = r;
  reduce(t);
  return t.empty();
}

bool IdealBasis::includes(const IdealBasis& o) const {
  for (const auto& r : o.rows_) {
    if (!contains(r)) return false;
  }
  return true;
}

IdealBasis::Row IdealBasis::flatten(const LieElem& x) const {
  Row r;
  const int n0 = alg_->n0();
  const Field& k = alg_->field();
  for (const Term& t : x.terms) {
    auto c = k.coeffs(t.c);
    for (int j = 0; j < n0; ++j) {
      if (c[j]) r.push_back({t.id * static_cast<std::uint32_t>(n0) + j, static_cast<std::uint8_t>(c[j])});
    }
  }
  return r;
}

LieElem IdealBasis::unflatten(const Row& r) const {
  const int n0 = alg_->n0();
  const Field& k = alg_->field();
  LieElem x;
  std::size_t i = 0;
  while (i < r.size()) {
    const std::uint32_t id = r[i].first / n0;
    std::vector<int> c(n0, 0);
    while (i < r.size() && r[i].first / n0 == id) {
      c[r[i].first % n0] = r[i].second;
      ++i;
    }
    x.terms.push_back({id, k.from_coeffs(c)});
  }
  return x;
}

std::vector<LieElem> IdealBasis::elements() const {
  std::vector<std::pair<std::uint32_t, std::size_t>> order;
  for (std::size_t i = 0; i < rows_.size(); ++i) order.push_back({rows_[i].front().first, i});
  std::sort(order.begin(), order.end());
  std::vector<LieElem> out;
  for (const auto& [pc, i] : order) out.push_back(unflatten(rows_[i]));
  return out;
}

IdealBasis minimal_sigma_ideal(const Algebra& alg, const std::vector<LieElem>& elems,
                               Exec exec) {
  IdealBasis ideal(alg);
  const Field& k = alg.field();
  std::vector<LieElem> frontier;
  for (const auto& x : elems) {
    if (ideal.insert(ideal.flatten(x))) frontier.push_back(x);
  }
  const int g = alg.num_gens();
  std::vector<LieElem> letters(g);
  for (int l = 0; l < g; ++l) letters[l] = alg.letter(l);
  const int extra = k.n0() > 1 ? 2 : 1;
  while (!frontier.empty()) {
    const long m = static_cast<long>(frontier.size());
    const long per = g + extra;
    std::vector<LieElem> images(static_cast<std::size_t>(m * per));
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::Parallel)
    for (long t = 0; t < m * per; ++t) {
      const LieElem& x = frontier[t / per];
      const long r = t % per;
      if (r < g) {
        images[t] = alg.bracket(x, letters[r]);
      } else if (r == g) {
        images[t] = alg.sigma(x, 1);
      } else {
        images[t] = alg.scale(x, k.gen());
      }
    }
    std::vector<LieElem> next;
    for (auto& y : images) {
      if (y.is_zero()) continue;
      if (ideal.insert(ideal.flatten(y))) next.push_back(std::move(y));
    }
    frontier.swap(next);
  }
  ideal.sigma_stable = true;
  ideal.bracket_closed = true;
  return ideal;
}

IdealBasis minimal_sigma_ideal(const Algebra& alg, const std::vector<LieElem>& elems) {
  return minimal_sigma_ideal(alg, elems, alg.exec());
}

IdealBasis coordinate_subspace(const Algebra& alg,
                               const std::function<bool(const HallWord&)>& keep) {
  IdealBasis ideal(alg);
  const int n0 = alg.n0();
  for (std::uint32_t id = 0; id < alg.dim(); ++id) {
    if (!keep(alg.word(id))) continue;
    for (int j = 0; j < n0; ++j) {
      ideal.insert({{id * static_cast<std::uint32_t>(n0) + j, 1}});
    }
  }
  ideal.sigma_stable = true;
  return ideal;
}

IdealBasis weight_ideal(const Algebra& alg, int s) {
  auto I = coordinate_subspace(alg, [s](const HallWord& w) { return w.weight >= s; });
  I.bracket_closed = true;
  return I;
}

IdealBasis commutator_ideal(const Algebra& alg, int s) {
  auto I = coordinate_subspace(alg, [s](const HallWord& w) { return w.degree >= s; });
  I.bracket_closed = true;
  return I;
}

IdealBasis ideal_sum(const IdealBasis& a, const IdealBasis& b) {
  IdealBasis out = a;
  for (const auto& r : b.rows()) out.insert(r);
  out.sigma_stable = a.sigma_stable && b.sigma_stable;
  out.bracket_closed = a.bracket_closed && b.bracket_closed;
  return out;
}

bool member(const LieElem& x, const IdealBasis& ideal, const IdealBasis* modulo) {
  if (modulo == nullptr) return ideal.contains(ideal.flatten(x));
  IdealBasis::Row r = ideal.flatten(x);
  ideal.reduce(r);
  if (r.empty()) return true;
  return ideal_sum(ideal, *modulo).contains(r);
}

}  // namespace nilp
