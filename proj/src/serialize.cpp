#include "nilp/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nilp {

namespace {

[[noreturn]] void bad(const std::string& what) { throw DomainError("malformed JSON: " + what); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw UsageError(key + ": expected an integer, got '" + v + "'");
  }
}

}  // namespace

Json field_to_json(const Field& k, FieldElem x) { return k.coeffs(x); }

FieldElem field_from_json(const Field& k, const Json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != k.n0()) bad("field element");
  std::vector<int> c;
  for (const Json& v : j) {
    const int x = v.get<int>();
    if (x < 0 || x >= k.p()) bad("field coordinate out of range");
    c.push_back(x);
  }
  return k.from_coeffs(c);
}

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) bad("rational must be a string");
  return parse_rational(j.get<std::string>());
}

Json lie_to_json(const Algebra& L, const LieElem& x) {
  Json out = Json::array();
  for (const Term& t : x.terms) {
    out.push_back({{"word", L.describe_word(t.id)}, {"id", t.id}, {"c", field_to_json(L.field(), t.c)}});
  }
  return out;
}

LieElem lie_from_json(const Algebra& L, const Json& j) {
  if (!j.is_array()) bad("Lie element");
  LieElem out;
  for (const Json& t : j) {
    const auto id = t.at("id").get<std::uint32_t>();
    if (id >= L.dim()) bad("basis id out of range");
    if (t.contains("word") && t.at("word").get<std::string>() != L.describe_word(id)) {
      bad("word does not match id " + std::to_string(id));
    }
    L.axpy(out, field_from_json(L.field(), t.at("c")), L.basis(id));
  }
  return out;
}

Json series_to_json(const Algebra& L, const LieSeries& f) {
  Json terms = Json::array();
  for (const auto& [m, x] : f.terms) terms.push_back({{"m", m}, {"x", lie_to_json(L, x)}});
  return {{"policy", policy_name(f.policy)}, {"terms", terms}};
}

LieSeries series_from_json(const Algebra& L, const Json& j) {
  LieSeries f;
  f.policy = parse_policy(j.at("policy").get<std::string>());
  for (const Json& t : j.at("terms")) {
    LieElem x = lie_from_json(L, t.at("x"));
    if (!x.is_zero()) f.terms[t.at("m").get<int>()] = std::move(x);
  }
  return f;
}

Json letter_map_to_json(const Algebra& L, const LetterMap& m) {
  Json on_a = Json::object();
  for (const auto& [a, x] : m.on_a) on_a[std::to_string(a)] = lie_to_json(L, x);
  return {{"on_a", on_a}, {"on_d0", lie_to_json(L, m.on_d0)}};
}

LetterMap letter_map_from_json(const Algebra& L, const Json& j) {
  LetterMap m;
  for (const auto& [key, x] : j.at("on_a").items()) m.on_a[std::stoi(key)] = lie_from_json(L, x);
  m.on_d0 = lie_from_json(L, j.at("on_d0"));
  return m;
}

Json herbrand_to_json(const HerbrandFn& f) {
  Json vs = Json::array();
  for (const auto& [x, y] : f.vertices()) vs.push_back({rational_to_json(x), rational_to_json(y)});
  return {{"vertices", vs}, {"final_slope", rational_to_json(f.final_slope())}};
}

HerbrandFn herbrand_from_json(const Json& j) {
  std::vector<std::pair<Rational, Rational>> vs;
  for (const Json& v : j.at("vertices")) {
    if (!v.is_array() || v.size() != 2) bad("Herbrand vertex");
    vs.emplace_back(rational_from_json(v[0]), rational_from_json(v[1]));
  }
  return HerbrandFn(vs, rational_from_json(j.at("final_slope")));
}

Json ideal_to_json(const IdealBasis& I) {
  Json rows = Json::array();
  for (const auto& r : I.rows()) {
    Json row = Json::array();
    for (const auto& [c, v] : r) row.push_back({c, v});
    rows.push_back(row);
  }
  return {{"dim", I.dim()}, {"rows", rows}};
}

IdealBasis ideal_from_json(const Algebra& L, const Json& j) {
  IdealBasis I(L);
  const std::uint32_t cols = static_cast<std::uint32_t>(L.dim()) * static_cast<std::uint32_t>(L.n0());
  for (const Json& row : j.at("rows")) {
    IdealBasis::Row r;
    for (const Json& e : row) {
      const auto c = e.at(0).get<std::uint32_t>();
      const int v = e.at(1).get<int>();
      if (c >= cols || v <= 0 || v >= L.p()) bad("ideal row entry");
      r.emplace_back(c, static_cast<std::uint8_t>(v));
    }
    I.insert(std::move(r));
  }
  if (I.dim() != j.at("dim").get<int>()) bad("ideal rows are dependent");
  return I;
}

Json ram_ideal_to_json(const RamIdeal& r) {
  Json gens = Json::array();
  for (const Rational& g : r.generators_used) gens.push_back(rational_to_json(g));
  return {{"v", rational_to_json(r.v)},
          {"N", r.N},
          {"ideal_dim", r.ideal.dim()},
          {"generators_used", gens},
          {"ideal", ideal_to_json(r.ideal)}};
}

RamIdeal ram_ideal_from_json(const Algebra& L, const Json& j) {
  RamIdeal r{ideal_from_json(L, j.at("ideal")), {}, rational_from_json(j.at("v")), j.at("N").get<int>()};
  for (const Json& g : j.at("generators_used")) r.generators_used.push_back(rational_from_json(g));
  if (r.ideal.dim() != j.at("ideal_dim").get<int>()) bad("ideal_dim");
  return r;
}

Json lift_to_json(const Algebra& L, const LiftSolution& s) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < s.B.size(); ++i) {
    Json a = Json::object();
    for (const auto& [key, x] : s.A_step[i]) a[std::to_string(key)] = lie_to_json(L, x);
    steps.push_back({{"s", i + 1},
                     {"B", series_to_json(L, s.B[i])},
                     {"X", series_to_json(L, s.X[i])},
                     {"A", a},
                     {"replay", series_to_json(L, s.replay[i])}});
  }
  return {{"A", letter_map_to_json(L, s.A)},
          {"V", letter_map_to_json(L, s.V)},
          {"c", series_to_json(L, s.c)},
          {"steps", steps},
          {"replay_ok", s.replay_ok},
          {"relation_ok", s.relation_ok}};
}

LiftSolution lift_from_json(const Algebra& L, const Json& j) {
  LiftSolution s;
  s.A = letter_map_from_json(L, j.at("A"));
  s.V = letter_map_from_json(L, j.at("V"));
  s.c = series_from_json(L, j.at("c"));
  for (const Json& st : j.at("steps")) {
    s.B.push_back(series_from_json(L, st.at("B")));
    s.X.push_back(series_from_json(L, st.at("X")));
    std::map<int, LieElem> a;
    for (const auto& [key, x] : st.at("A").items()) a[std::stoi(key)] = lie_from_json(L, x);
    s.A_step.push_back(std::move(a));
    s.replay.push_back(series_from_json(L, st.at("replay")));
  }
  s.replay_ok = j.at("replay_ok").get<bool>();
  s.relation_ok = j.at("relation_ok").get<bool>();
  return s;
}

Json mixed_char_to_json(const MixedCharReport& r) {
  Json v = Json::object(), vh = Json::object();
  for (std::size_t s = 0; s < r.v.size(); ++s) {
    v[std::to_string(s + 1)] = rational_to_json(r.v[s]);
    vh[std::to_string(s + 1)] = rational_to_json(r.v_via_herbrand[s]);
  }
  return {{"p", r.p}, {"e_k", r.e_k}, {"n0", r.n0}, {"c0", r.c0},
          {"generators", r.generators}, {"v", v}, {"v_via_herbrand", vh}};
}

MixedCharReport mixed_char_from_json(const Json& j) {
  MixedCharReport r{j.at("p").get<int>(), j.at("e_k").get<int>(), j.at("n0").get<int>(),
                    j.at("c0").get<int>(), j.at("generators").get<int>(), {}, {}};
  for (int s = 1; s < r.p; ++s) {
    const std::string key = std::to_string(s);
    r.v.push_back(rational_from_json(j.at("v").at(key)));
    r.v_via_herbrand.push_back(rational_from_json(j.at("v_via_herbrand").at(key)));
  }
  return r;
}

Json params_to_json(const ParamChoice& c) {
  return {{"gamma_below", rational_to_json(c.gamma_below)},
          {"delta", rational_to_json(c.delta)},
          {"r_star", rational_to_json(c.r_star)},
          {"n_star", c.n_star},
          {"q", c.q},
          {"b_star", c.b_star},
          {"a_star", c.a_star},
          {"phi_surrogate", rational_to_json(c.phi_surrogate)}};
}

ParamChoice params_from_json(const Json& j) {
  ParamChoice c;
  c.gamma_below = rational_from_json(j.at("gamma_below"));
  c.delta = rational_from_json(j.at("delta"));
  c.r_star = rational_from_json(j.at("r_star"));
  c.n_star = j.at("n_star").get<int>();
  c.q = j.at("q").get<long long>();
  c.b_star = j.at("b_star").get<long long>();
  c.a_star = j.at("a_star").get<long long>();
  c.phi_surrogate = rational_from_json(j.at("phi_surrogate"));
  return c;
}

// ---------------------------------------------------------------------------

void RunConfig::finalize() {
  if (p < 3 || !is_prime(p)) throw UsageError("p must be an odd prime (got " + std::to_string(p) + ")");
  if (n0 < 1) throw UsageError("N0 must be positive");
  long long q = 1;
  for (int i = 0; i < n0; ++i) {
    q *= p;
    if (q > Field::kMaxOrder) throw UsageError("p^N0 exceeds the field table limit");
  }
  if (c0 == 0) c0 = p;
  if (c0 < 0 || c0 % p != 0) throw UsageError("c0 must lie in pN (got " + std::to_string(c0) + ")");
  if (a_max == 0) a_max = (p - 1) * c0;
  if (a_max < 1 || a_max > p * c0) throw UsageError("a_max must satisfy 1 <= a_max <= p c0");
  if (max_deg == 0) max_deg = p - 1;
  if (max_deg < 1 || max_deg > p - 1) throw UsageError("class bound must lie in [1, p-1]");
  if (cap == 0) cap = p - 1;
  if (cap < 1) throw UsageError("weight cap must be positive");
  if (depth < 0) throw UsageError("depth N must be >= 0");
  if (format != "json" && format != "text") throw UsageError("format must be json or text");
  for (const auto& a : alphas) {
    if (static_cast<int>(a.size()) != n0) {
      throw UsageError("each alpha needs N0 = " + std::to_string(n0) + " F_p coordinates");
    }
    for (int x : a) {
      if (x < 0 || x >= p) throw UsageError("alpha coordinates must lie in [0, p)");
    }
  }
  if (identity) {
    alphas.clear();
  } else {
    if (alphas.empty()) alphas.push_back([&] {
        std::vector<int> one(n0, 0);
        one[0] = 1;
        return one;
      }());
    bool nonzero = false;
    for (int x : alphas[0]) nonzero = nonzero || x != 0;
    if (!nonzero) throw UsageError("alpha_0 must be nonzero unless identity mode is set");
  }
}

std::vector<FieldElem> RunConfig::alpha_elems(const Field& k) const {
  std::vector<FieldElem> out;
  for (const auto& a : alphas) out.push_back(k.from_coeffs(a));
  return out;
}

std::string RunConfig::algebra_key() const {
  std::ostringstream os;
  os << "p=" << p << ";n0=" << n0 << ";c0=" << c0 << ";a_max=" << a_max << ";deg=" << max_deg
     << ";cap=" << cap;
  return os.str();
}

std::vector<std::vector<int>> parse_alphas(const std::string& s) {
  std::vector<std::vector<int>> out;
  std::stringstream elems(s);
  std::string e;
  while (std::getline(elems, e, ',')) {
    std::vector<int> coords;
    std::stringstream cs(trim(e));
    std::string c;
    while (std::getline(cs, c, ':')) coords.push_back(to_int("alpha", trim(c)));
    if (coords.empty()) throw UsageError("alpha: empty entry in '" + s + "'");
    out.push_back(std::move(coords));
  }
  return out;
}

std::string format_alphas(const std::vector<std::vector<int>>& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ",";
    for (std::size_t j = 0; j < a[i].size(); ++j) out += (j ? ":" : "") + std::to_string(a[i][j]);
  }
  return out;
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (key == "p") cfg.p = to_int(key, v);
    else if (key == "n0") cfg.n0 = to_int(key, v);
    else if (key == "c0") cfg.c0 = to_int(key, v);
    else if (key == "amax") cfg.a_max = to_int(key, v);
    else if (key == "deg") cfg.max_deg = to_int(key, v);
    else if (key == "cap") cfg.cap = to_int(key, v);
    else if (key == "alpha") cfg.alphas = parse_alphas(v);
    else if (key == "identity") cfg.identity = v == "1" || v == "true";
    else if (key == "depth") cfg.depth = to_int(key, v);
    else if (key == "policy") {
      try {
        cfg.policy = parse_policy(v);
      } catch (const std::exception& e) {
        throw UsageError(std::string("policy: ") + e.what());
      }
    }
    else if (key == "cache-dir") cfg.cache_dir = v;
    else if (key == "format") cfg.format = v;
    else if (key == "out") cfg.out = v;
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, v));
    else if (key == "ek") cfg.e_k = to_int(key, v);
    else throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string F0Cache::path(const RunConfig& cfg, int N) const {
  const std::string key = cfg.algebra_key() + ";N=" + std::to_string(N);
  return (std::filesystem::path(dir) / ("f0-" + hex64(fnv1a(key)) + ".json")).string();
}

std::optional<std::vector<std::pair<Rational, LieElem>>> F0Cache::load(const RunConfig& cfg,
                                                                       const Algebra& L, int N,
                                                                       bool* corrupt) const {
  if (corrupt) *corrupt = false;
  std::ifstream in(path(cfg, N));
  if (!in) return std::nullopt;
  try {
    const Json j = Json::parse(in);
    if (j.at("key").get<std::string>() != cfg.algebra_key() || j.at("N").get<int>() != N) {
      throw DomainError("key mismatch");
    }
    const Json& body = j.at("entries");
    if (j.at("checksum").get<std::string>() != hex64(fnv1a(body.dump()))) {
      throw DomainError("checksum mismatch");
    }
    std::vector<std::pair<Rational, LieElem>> out;
    for (const Json& e : body) out.emplace_back(rational_from_json(e.at("gamma")), lie_from_json(L, e.at("f0")));
    return out;
  } catch (const std::exception&) {
    if (corrupt) *corrupt = true;
    return std::nullopt;
  }
}

void F0Cache::store(const RunConfig& cfg, const Algebra& L, int N, const F0Table& t) const {
  std::filesystem::create_directories(dir);
  Json entries = Json::array();
  for (const Rational& g : t.gammas()) {
    entries.push_back({{"gamma", rational_to_json(g)}, {"f0", lie_to_json(L, t.get(g))}});
  }
  const Json j = {{"key", cfg.algebra_key()}, {"N", N}, {"entries", entries},
                  {"checksum", hex64(fnv1a(entries.dump()))}};
  const std::string final_path = path(cfg, N), tmp = final_path + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, final_path);
}

}  // namespace nilp
