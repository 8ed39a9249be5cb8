#ifndef NILP_FREELIE_HPP
#define NILP_FREELIE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nilp/gf.hpp"

namespace nilp {

enum class Exec { Serial, Parallel };

// D0 is encoded as a = 0; otherwise a prime to p and n in Z/N0.
struct GenId {
  int a = 0;
  int n = 0;
  bool is_d0() const { return a == 0; }
  bool operator==(const GenId& o) const { return a == o.a && n == o.n; }
};

struct HallWord {
  int degree = 1;
  int weight = 1;
  int letter = -1;  // set for degree 1
  int left = -1;    // standard factorization for degree >= 2
  int right = -1;
  std::vector<std::uint16_t> word;
};

struct Term {
  std::uint32_t id;
  FieldElem c;
  bool operator==(const Term& o) const { return id == o.id && c == o.c; }
};

// Sparse k-combination of Hall basis elements, sorted by id, no zeros.
struct LieElem {
  std::vector<Term> terms;
  bool is_zero() const { return terms.empty(); }
  bool operator==(const LieElem& o) const { return terms == o.terms; }
  bool operator!=(const LieElem& o) const { return !(*this == o); }
};

struct AlgebraSpec {
  int c0 = 0;
  int a_max = 0;       // generators D_{a,n} with a < a_max
  int max_deg = 0;     // class bound, at most p - 1
  int max_weight = 0;  // words of larger weight are dropped; 0 = no cap
};

// Free Lie k-algebra on {D0} u {D_{a,n}} truncated at degree max_deg and
// (optionally) at weight max_weight, with the Lyndon-word Hall basis.
// Basis ids are ordered by (degree, lexicographic word).
class Algebra {
 public:
  Algebra(const Field& k, AlgebraSpec spec, Exec exec = Exec::Parallel);

  const Field& field() const { return *k_; }
  const AlgebraSpec& spec() const { return spec_; }
  int p() const { return k_->p(); }
  int n0() const { return k_->n0(); }
  int c0() const { return spec_.c0; }
  int a_max() const { return spec_.a_max; }
  int max_deg() const { return spec_.max_deg; }
  int weight_cap() const { return cap_; }

  int num_gens() const { return static_cast<int>(gens_.size()); }
  const GenId& gen(int letter) const { return gens_[letter]; }
  // Letter index of D_{a,n} (a = 0 for D0), or -1 when outside the truncation.
  int letter_of(int a, int n) const;
  int gen_weight(int a) const;

  std::size_t dim() const { return words_.size(); }
  const HallWord& word(std::uint32_t id) const { return words_[id]; }
  std::vector<int> graded_dims() const;
  // Hall id of a Lyndon word given as letters, or -1.
  long find_word(const std::vector<std::uint16_t>& w) const;

  // Elements.
  LieElem basis(std::uint32_t id, FieldElem c = 1) const;
  LieElem letter(int letter, FieldElem c = 1) const;
  // D_{a,n}; for a = 0 this is D_{0n} = sigma^n(alpha0) D0. Zero outside truncation.
  LieElem d(int a, int n) const;
  LieElem d0() const;

  LieElem add(const LieElem& x, const LieElem& y) const;
  LieElem sub(const LieElem& x, const LieElem& y) const;
  LieElem neg(const LieElem& x) const;
  LieElem scale(const LieElem& x, FieldElem c) const;
  LieElem scale_int(const LieElem& x, long long c) const;
  // Adds c*y into x.
  void axpy(LieElem& x, FieldElem c, const LieElem& y) const;
  LieElem bracket(const LieElem& x, const LieElem& y) const;
  // (ad y)^k applied on the right: [...[x, y], ..., y].
  LieElem ad_power(const LieElem& x, const LieElem& y, int k) const;
  LieElem sigma(const LieElem& x, long long e) const;

  // Smallest weight among terms (p for zero, capped at p).
  int weight(const LieElem& x) const;
  int degree_min(const LieElem& x) const;
  LieElem filter(const LieElem& x, const std::function<bool(const HallWord&)>& keep) const;
  LieElem degree_part(const LieElem& x, int d) const;
  // Drops terms of weight >= s.
  LieElem mod_weight(const LieElem& x, int s) const;

  // Bracket of basis elements as a list of F_p-integral terms.
  const std::vector<Term>& bracket_basis(std::uint32_t i, std::uint32_t j, bool& negate) const;
  // Expansion of a basis element in the free associative algebra, as
  // (word key, residue) pairs. Word keys order words of equal length
  // lexicographically.
  const std::vector<std::pair<std::uint64_t, int>>& expansion(std::uint32_t id) const;
  std::uint64_t word_key(const std::vector<std::uint16_t>& w) const;
  std::vector<std::uint16_t> key_word(std::uint64_t key) const;
  // Hall id whose Lyndon word has this key, or -1.
  long id_of_key(std::uint64_t key) const;
  std::uint64_t pow_gens(int d) const { return pow_g_[d]; }

  Exec exec() const { return exec_; }

  std::string describe(const LieElem& x) const;
  std::string describe_word(std::uint32_t id) const;

 private:
  void build_words();
  void build_expansions();
  void build_brackets();
  void build_sigma();
  std::vector<Term> project(std::vector<std::pair<std::uint64_t, int>>& tensor, int degree) const;

  const Field* k_;
  AlgebraSpec spec_;
  Exec exec_;
  int cap_;
  std::vector<GenId> gens_;
  std::vector<int> gen_weights_;
  std::unordered_map<long long, int> letter_index_;
  std::vector<HallWord> words_;
  std::unordered_map<std::uint64_t, std::uint32_t> word_ids_;
  std::vector<std::uint64_t> pow_g_;
  std::vector<std::vector<std::pair<std::uint64_t, int>>> expansions_;
  // Row i lists (j, offset, length) for j > i into bracket_terms_.
  struct PairRef {
    std::uint32_t j;
    std::uint32_t offset;
    std::uint32_t length;
  };
  std::vector<std::vector<PairRef>> pair_rows_;
  std::vector<Term> bracket_terms_;
  std::vector<LieElem> sigma_fwd_;
  std::vector<LieElem> sigma_bwd_;
};

// Row space over F_p of flattened coordinates (Hall id * N0 + k-digit),
// kept in reduced row-echelon form.
class IdealBasis {
 public:
  using Row = std::vector<std::pair<std::uint32_t, std::uint8_t>>;

  IdealBasis() = default;
  explicit IdealBasis(const Algebra& alg);

  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Row>& rows() const { return rows_; }
  bool sigma_stable = false;
  bool bracket_closed = false;

  // Returns true when the row was outside the span and has been added.
  bool insert(Row r);
  // Reduces r to its normal form modulo the span.
  void reduce(Row& r) const;
  bool contains(const Row& r) const;
  bool is_zero() const { return rows_.empty(); }
  bool same_space(const IdealBasis& o) const { return dim() == o.dim() && includes(o); }
  bool includes(const IdealBasis& o) const;

  Row flatten(const LieElem& x) const;
  LieElem unflatten(const Row& r) const;
  std::vector<LieElem> elements() const;

  const Algebra* algebra() const { return alg_; }

 private:
  const Algebra* alg_ = nullptr;
  std::vector<Row> rows_;  // insertion order, fully reduced
  std::unordered_map<std::uint32_t, std::size_t> piv_;  // pivot column -> row
};

// Smallest F_p-space containing the inputs and stable under k-scalars,
// sigma and bracket with every generator.
IdealBasis minimal_sigma_ideal(const Algebra& alg, const std::vector<LieElem>& elems,
                               Exec exec);
IdealBasis minimal_sigma_ideal(const Algebra& alg, const std::vector<LieElem>& elems);

// Span of the Hall coordinates selected by keep (all k-multiples).
IdealBasis coordinate_subspace(const Algebra& alg,
                               const std::function<bool(const HallWord&)>& keep);
// L(s): Hall words of weight >= s.
IdealBasis weight_ideal(const Algebra& alg, int s);
// C_s: Hall words of degree >= s.
IdealBasis commutator_ideal(const Algebra& alg, int s);
IdealBasis ideal_sum(const IdealBasis& a, const IdealBasis& b);

bool member(const LieElem& x, const IdealBasis& ideal, const IdealBasis* modulo = nullptr);

}  // namespace nilp

#endif
