#ifndef NILP_SERIALIZE_HPP
#define NILP_SERIALIZE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nilp/lifts.hpp"
#include "nilp/ramgen.hpp"

namespace nilp {

using Json = nlohmann::json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Field elements are written as their F_p coordinates, rationals as "a/b".
Json field_to_json(const Field& k, FieldElem x);
FieldElem field_from_json(const Field& k, const Json& j);
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// [{"word": "[D1_0,D0]", "id": 4, "c": [1, 0]}, ...]
Json lie_to_json(const Algebra& L, const LieElem& x);
LieElem lie_from_json(const Algebra& L, const Json& j);

Json series_to_json(const Algebra& L, const LieSeries& f);
LieSeries series_from_json(const Algebra& L, const Json& j);

Json letter_map_to_json(const Algebra& L, const LetterMap& m);
LetterMap letter_map_from_json(const Algebra& L, const Json& j);

Json herbrand_to_json(const HerbrandFn& f);
HerbrandFn herbrand_from_json(const Json& j);

Json ideal_to_json(const IdealBasis& I);
IdealBasis ideal_from_json(const Algebra& L, const Json& j);

Json ram_ideal_to_json(const RamIdeal& r);
RamIdeal ram_ideal_from_json(const Algebra& L, const Json& j);

Json lift_to_json(const Algebra& L, const LiftSolution& s);
LiftSolution lift_from_json(const Algebra& L, const Json& j);

Json mixed_char_to_json(const MixedCharReport& r);
MixedCharReport mixed_char_from_json(const Json& j);

Json params_to_json(const ParamChoice& c);
ParamChoice params_from_json(const Json& j);

struct RunConfig {
  int p = 3;
  int n0 = 1;
  int c0 = 0;      // 0: take p
  int a_max = 0;   // 0: take (p - 1) c0
  int max_deg = 0;  // 0: take p - 1
  int cap = 0;      // weight cap, 0: take p - 1
  std::vector<std::vector<int>> alphas;  // F_p coordinates of alpha_i
  bool identity = false;
  int depth = 2;
  Policy policy = Policy::ModM;
  std::string cache_dir;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 1;
  int e_k = 0;

  // Fills defaults and checks every invariant, throwing UsageError naming it.
  void finalize();
  AlgebraSpec spec() const { return {c0, a_max, max_deg, cap}; }
  std::vector<FieldElem> alpha_elems(const Field& k) const;
  // Canonical text of the algebra-defining fields.
  std::string algebra_key() const;
};

// key = value lines, '#' comments; unknown keys are usage errors.
void apply_config_text(RunConfig& cfg, const std::string& text);
// "1,2" for N0 = 1; "1:0,0:1" with ':' between F_p coordinates.
std::vector<std::vector<int>> parse_alphas(const std::string& s);
std::string format_alphas(const std::vector<std::vector<int>>& a);

std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t x);

// File cache of F0 tables, content-addressed by the algebra key and depth.
// load returns nullopt on a missing file and sets *corrupt on a bad one.
struct F0Cache {
  std::string dir;
  std::string path(const RunConfig& cfg, int N) const;
  std::optional<std::vector<std::pair<Rational, LieElem>>> load(const RunConfig& cfg, const Algebra& L,
                                                                int N, bool* corrupt) const;
  void store(const RunConfig& cfg, const Algebra& L, int N, const F0Table& t) const;
};

}  // namespace nilp

#endif
