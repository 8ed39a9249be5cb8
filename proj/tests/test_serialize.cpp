#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "nilp/serialize.hpp"

using namespace nilp;

TEST_CASE("JSON round trips") {
  Field k(3, 2);
  Algebra L(k, {3, 6, 2, 2});
  SeriesSpace S(L);
  AutSpec h = AutSpec::make(k, 3, {1, 4});
  UniversalBCH ch(3);
  LiftSolution lift = solve_lift(S, ch, h);

  const LieElem x = L.add(L.d(1, 1), L.scale(L.bracket(L.d(2, 0), L.d0()), 5));
  CHECK(lie_from_json(L, Json::parse(lie_to_json(L, x).dump())) == x);
  CHECK(series_from_json(L, series_to_json(L, lift.c)) == lift.c);

  const LetterMap V = letter_map_from_json(L, letter_map_to_json(L, lift.V));
  CHECK(V.on_d0 == lift.V.on_d0);
  CHECK(V.on_a == lift.V.on_a);

  const LiftSolution back = lift_from_json(L, Json::parse(lift_to_json(L, lift).dump()));
  CHECK(lift_to_json(L, back) == lift_to_json(L, lift));
  CHECK(back.relation_ok);

  const HerbrandFn phi({{Rational(3), Rational(3)}, {Rational(7, 2), Rational(10, 3)}}, Rational(1, 9));
  CHECK(herbrand_from_json(herbrand_to_json(phi)) == phi);
  CHECK(herbrand_to_json(phi)["final_slope"] == "1/9");

  F0Table t(L, 2);
  RamIdeal r = ramification_ideal(t, Rational(2), 2);
  RamIdeal r2 = ram_ideal_from_json(L, Json::parse(ram_ideal_to_json(r).dump()));
  CHECK(r2.ideal.same_space(r.ideal));
  CHECK(r2.ideal.rows() == r.ideal.rows());
  CHECK(r2.generators_used == r.generators_used);
  CHECK(r2.v == r.v);

  MixedCharReport m = mixed_char_summary(3, 2, 1);
  const Json mj = mixed_char_to_json(m);
  CHECK(mj["c0"] == 3);
  CHECK(mj["generators"] == 4);
  CHECK(mj["v"]["1"] == "3");
  CHECK(mj["v"]["2"] == "11/3");
  CHECK(mixed_char_to_json(mixed_char_from_json(mj)) == mj);

  ParamChoice c = choose_parameters(3, Rational(3), 0);
  CHECK(params_to_json(params_from_json(params_to_json(c))) == params_to_json(c));
}

TEST_CASE("malformed JSON is rejected") {
  Field k(3, 1);
  Algebra L(k, {3, 6, 2, 2});
  CHECK_THROWS_AS(lie_from_json(L, Json::parse(R"([{"id": 9999, "c": [1]}])")), DomainError);
  CHECK_THROWS_AS(lie_from_json(L, Json::parse(R"([{"id": 0, "word": "D7_0", "c": [1]}])")),
                  DomainError);
  CHECK_THROWS_AS(lie_from_json(L, Json::parse(R"([{"id": 0, "c": [3]}])")), DomainError);
  CHECK_THROWS_AS(rational_from_json(Json(0.5)), DomainError);
}

TEST_CASE("run configuration") {
  RunConfig cfg;
  apply_config_text(cfg, "# comment\np = 5\nn0 = 2\nalpha = 1:0, 0:1\ndepth=3\npolicy = exact\n");
  cfg.finalize();
  CHECK(cfg.c0 == 5);
  CHECK(cfg.a_max == 20);
  CHECK(cfg.max_deg == 4);
  CHECK(cfg.alphas == std::vector<std::vector<int>>{{1, 0}, {0, 1}});
  CHECK(cfg.policy == Policy::Exact);
  CHECK(format_alphas(cfg.alphas) == "1:0,0:1");

  auto fails = [](const std::string& text) {
    RunConfig c;
    apply_config_text(c, text);
    c.finalize();
  };
  CHECK_THROWS_AS(fails("p = 4"), UsageError);
  CHECK_THROWS_AS(fails("p = 3\nc0 = 4"), UsageError);
  CHECK_THROWS_AS(fails("p = 3\namax = 10"), UsageError);
  CHECK_THROWS_AS(fails("alpha = 0"), UsageError);
  CHECK_THROWS_AS(fails("colour = red"), UsageError);
  CHECK_THROWS_AS(fails("depth = x"), UsageError);
  CHECK_NOTHROW(fails("alpha = 0\nidentity = true"));

  RunConfig a, b;
  a.finalize();
  b.finalize();
  CHECK(fnv1a(a.algebra_key()) == fnv1a(b.algebra_key()));
  b.cap = 1;
  CHECK(fnv1a(a.algebra_key()) != fnv1a(b.algebra_key()));
}

TEST_CASE("F0 cache") {
  const auto dir = std::filesystem::temp_directory_path() / "nilp_cache_test";
  std::filesystem::remove_all(dir);
  RunConfig cfg;
  cfg.finalize();
  Field k(cfg.p, cfg.n0);
  Algebra L(k, cfg.spec());
  F0Table t(L, 2);
  F0Cache cache{dir.string()};
  bool corrupt = true;
  CHECK(!cache.load(cfg, L, 2, &corrupt).has_value());
  CHECK(!corrupt);
  cache.store(cfg, L, 2, t);
  auto got = cache.load(cfg, L, 2, &corrupt);
  REQUIRE(got.has_value());
  CHECK(got->size() == t.gammas().size());
  for (const auto& [g, x] : *got) CHECK(t.get(g) == x);

  // flip one byte of the payload
  const std::string file = cache.path(cfg, 2);
  std::string body;
  {
    std::ifstream in(file);
    body.assign(std::istreambuf_iterator<char>(in), {});
  }
  const auto pos = body.find("\"c\":[1]");
  REQUIRE(pos != std::string::npos);
  body[pos + 5] = '2';
  {
    std::ofstream out(file);
    out << body;
  }
  CHECK(!cache.load(cfg, L, 2, &corrupt).has_value());
  CHECK(corrupt);
  std::filesystem::remove_all(dir);
}
