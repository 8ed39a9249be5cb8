// nilp: command-line front end for the nilpotent Artin-Schreier toolkit.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "suites.hpp"

using namespace nilp;

namespace {

struct Flags {
  int p = 0, n0 = 0, c0 = 0, amax = 0, deg = 0, cap = 0, depth = 0, ek = 0;
  std::string alpha, policy, out, cache_dir, format, config;
  std::uint64_t seed = 0;
  bool identity = false;
};

Json config_json(const RunConfig& c) {
  return {{"p", c.p},          {"n0", c.n0},     {"c0", c.c0},
          {"a_max", c.a_max},  {"deg", c.max_deg}, {"cap", c.cap},
          {"alpha", format_alphas(c.alphas)}, {"identity", c.identity},
          {"depth", c.depth},  {"policy", policy_name(c.policy)}, {"seed", c.seed}};
}

std::string render(const Json& j, const std::string& format) {
  if (format == "json") return j.dump(2) + "\n";
  std::ostringstream os;
  for (const auto& [key, v] : j.items()) {
    os << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  return os.str();
}

void emit(const RunConfig& cfg, const Json& j) {
  const std::string text = render(j, cfg.format);
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw UsageError("cannot write --out file " + cfg.out);
  f << text;
}

Json cmd_basis(const RunConfig& cfg) {
  Field k(cfg.p, cfg.n0);
  Algebra L(k, cfg.spec());
  Json gens = Json::array(), words = Json::array();
  std::map<int, int> by_deg, by_wt;
  for (int i = 0; i < L.num_gens(); ++i) gens.push_back(L.describe_word(L.letter(i).terms.at(0).id));
  for (std::uint32_t id = 0; id < L.dim(); ++id) {
    const HallWord& w = L.word(id);
    ++by_deg[w.degree];
    ++by_wt[w.weight];
    words.push_back({{"id", id}, {"word", L.describe_word(id)}, {"degree", w.degree}, {"weight", w.weight}});
  }
  Json deg = Json::object(), wt = Json::object();
  for (auto [d, n] : by_deg) deg[std::to_string(d)] = n;
  for (auto [s, n] : by_wt) wt[std::to_string(s)] = n;
  return {{"config", config_json(cfg)}, {"dim", L.dim()}, {"generators", gens},
          {"dims_by_degree", deg}, {"dims_by_weight", wt}, {"words", words}};
}

// Looks gamma up in the cache when one is configured, filling it on a miss.
LieElem f0_value(const RunConfig& cfg, const Algebra& L, const Rational& gamma, Json& info) {
  if (cfg.cache_dir.empty()) {
    info["cache"] = "off";
    return F0Table(L, cfg.depth).get(gamma);
  }
  F0Cache cache{cfg.cache_dir};
  bool corrupt = false;
  if (auto hit = cache.load(cfg, L, cfg.depth, &corrupt)) {
    info["cache"] = "hit";
    for (const auto& [g, x] : *hit)
      if (g == gamma) return x;
    return {};
  }
  if (corrupt) std::cerr << "warning: corrupt cache file " << cache.path(cfg, cfg.depth) << ", rebuilding\n";
  info["cache"] = corrupt ? "rebuilt" : "miss";
  F0Table t(L, cfg.depth);
  cache.store(cfg, L, cfg.depth, t);
  return t.get(gamma);
}

Json cmd_f0(const RunConfig& cfg, const std::string& gamma_text) {
  const Rational gamma = parse_rational(gamma_text);
  Field k(cfg.p, cfg.n0);
  Algebra L(k, cfg.spec());
  Json info = Json::object();
  const LieElem x = f0_value(cfg, L, gamma, info);
  // cache state goes to stderr so that output does not depend on it
  std::cerr << "cache: " << info["cache"].get<std::string>() << "\n";
  return {{"config", config_json(cfg)}, {"gamma", to_string(gamma)}, {"N", cfg.depth},
          {"f0", lie_to_json(L, x)}, {"text", L.describe(x)}};
}

Json cmd_ideal(const RunConfig& cfg, const std::string& v_text) {
  const Rational v = parse_rational(v_text);
  Field k(cfg.p, cfg.n0);
  Algebra L(k, cfg.spec());
  F0Table t(L, cfg.depth);
  const RamIdeal r = ramification_ideal(t, v, cfg.depth);
  Json out = ram_ideal_to_json(r);
  out["config"] = config_json(cfg);
  out["contains_D0"] = member(L.d0(), r.ideal);
  return out;
}

Json cmd_lift(const RunConfig& cfg) {
  Field k(cfg.p, cfg.n0);
  Algebra L(k, cfg.spec());
  const AutSpec h = AutSpec::make(k, cfg.c0, cfg.alpha_elems(k));
  SeriesSpace S(L);
  UniversalBCH ch(cfg.p);
  const LiftSolution lift = solve_lift(S, ch, h);
  const LinearSolution lin = solve_linearized(S, h);
  const AgreementReport ag = compare_lifts(S, ch, h, lift, lin);
  Json A = Json::array();
  for (FieldElem a : h.A) A.push_back(field_to_json(k, a));
  return {{"config", config_json(cfg)},
          {"A_coeffs", A},
          {"lift", lift_to_json(L, lift)},
          {"linear", {{"c1", series_to_json(L, lin.c1)},
                      {"V", letter_map_to_json(L, lin.V)},
                      {"replay_ok", lin.replay_ok}}},
          {"agreement", {{"nonlinear_satisfies_linear", ag.nonlinear_satisfies_linear},
                         {"same_V", ag.same_V},
                         {"same_c1", ag.same_c1},
                         {"same_c1_plus", ag.same_c1_plus}}}};
}

Json cmd_params(const RunConfig& cfg, const std::string& v0_text) {
  const Rational v0 = v0_text.empty() ? Rational(cfg.c0) : parse_rational(v0_text);
  const ParamChoice c = choose_parameters(cfg.p, v0, cfg.depth);
  std::string why;
  Json out = params_to_json(c);
  out["valid"] = params_valid(cfg.p, v0, c, cfg.depth, &why);
  out["v0"] = to_string(v0);
  out["n_tilde"] = cfg.depth;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nilp: lifts, ramification ideals and checks for nilpotent Artin-Schreier theory"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--p", f.p, "odd prime p");
  app.add_option("--n0", f.n0, "degree N0 of k over F_p");
  app.add_option("--c0", f.c0, "c0, a positive multiple of p");
  app.add_option("--amax", f.amax, "generators D_{a,n} with a < amax");
  app.add_option("--deg", f.deg, "class bound (default p - 1)");
  app.add_option("--cap", f.cap, "weight cap (default p - 1)");
  app.add_option("--alpha", f.alpha, "alpha_i as csv; F_p coordinates joined by ':'");
  app.add_flag("--identity", f.identity, "use the identity automorphism");
  app.add_option("--depth", f.depth, "depth N");
  app.add_option("--policy", f.policy, "series policy: modM or exact");
  app.add_option("--out", f.out, "write the report to a file");
  app.add_option("--format", f.format, "json or text");
  app.add_option("--seed", f.seed, "seed for randomized suites");
  app.add_option("--cache-dir", f.cache_dir, "directory for F0 caches");
  app.add_option("--ek", f.ek, "ramification index e_K");
  app.add_option("--config", f.config, "key = value configuration file (flags win)");

  std::string gamma, v, v0, suite;
  auto* basis = app.add_subcommand("basis", "Hall basis summary");
  auto* f0 = app.add_subcommand("f0", "the element F0(gamma, -N)");
  f0->add_option("--gamma", gamma, "gamma as a rational")->required();
  auto* ideal = app.add_subcommand("ideal", "ramification ideal L^(v) at depth N");
  ideal->add_option("--v", v, "v as a rational")->required();
  auto* lift = app.add_subcommand("lift", "lift of h and the linearized solution");
  auto* mixed = app.add_subcommand("mixedchar", "ramification numbers in mixed characteristic");
  auto* params = app.add_subcommand("params", "parameters delta, r*, N*");
  params->add_option("--v0", v0, "v0 (default c0)");
  auto* verify = app.add_subcommand("verify", "run a named check suite");
  verify->add_option("suite", suite, "suite name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  RunConfig cfg;
  try {
    if (!f.config.empty()) {
      std::ifstream in(f.config);
      if (!in) throw UsageError("cannot read config file " + f.config);
      std::stringstream ss;
      ss << in.rdbuf();
      apply_config_text(cfg, ss.str());
    }
    if (app.count("--p")) cfg.p = f.p;
    if (app.count("--n0")) cfg.n0 = f.n0;
    if (app.count("--c0")) cfg.c0 = f.c0;
    if (app.count("--amax")) cfg.a_max = f.amax;
    if (app.count("--deg")) cfg.max_deg = f.deg;
    if (app.count("--cap")) cfg.cap = f.cap;
    if (app.count("--alpha")) cfg.alphas = parse_alphas(f.alpha);
    if (app.count("--identity")) cfg.identity = f.identity;
    if (app.count("--depth")) cfg.depth = f.depth;
    if (app.count("--policy")) {
      try {
        cfg.policy = parse_policy(f.policy);
      } catch (const std::exception& e) {
        throw UsageError(std::string("--policy: ") + e.what());
      }
    }
    if (app.count("--out")) cfg.out = f.out;
    if (app.count("--format")) cfg.format = f.format;
    if (app.count("--seed")) cfg.seed = f.seed;
    if (app.count("--cache-dir")) cfg.cache_dir = f.cache_dir;
    if (app.count("--ek")) cfg.e_k = f.ek;
    cfg.finalize();

    if (*basis) emit(cfg, cmd_basis(cfg));
    if (*f0) emit(cfg, cmd_f0(cfg, gamma));
    if (*ideal) emit(cfg, cmd_ideal(cfg, v));
    if (*lift) emit(cfg, cmd_lift(cfg));
    if (*params) emit(cfg, cmd_params(cfg, v0));
    if (*mixed) {
      if (cfg.e_k <= 0) throw UsageError("mixedchar needs --ek");
      emit(cfg, mixed_char_to_json(mixed_char_summary(cfg.p, cfg.e_k, cfg.n0)));
    }
    if (*verify) {
      const SuiteResult r = run_suite(suite, cfg);
      emit(cfg, r.to_json());
      return r.pass ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
