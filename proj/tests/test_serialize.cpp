#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "hermbound/serialize.hpp"

using namespace hermbound;

TEST_CASE("breakdown serialization round-trips byte-identically", "[serialize]") {
  bound::BoundBreakdown b;
  b.K = 500;
  b.n = 250;
  b.N = 31.654379641698605;
  b.T = 3.0;
  b.term_tail_t = 5.105783295e-4;
  b.term_tail_omega = 8.759919742e-4;
  b.term_fN = 6.159610e-4;
  b.term_sansone = 1.91414499e-2;
  b.total = b.term_tail_t + b.term_tail_omega + b.term_fN + b.term_sansone;

  const std::string once = to_json(b);
  const auto parsed = breakdown_from_json(once);
  const std::string twice = to_json(parsed);
  CHECK(once == twice);
  CHECK(parsed.K == 500);
  CHECK(parsed.N == Catch::Approx(b.N).epsilon(1e-8));
}

TEST_CASE("ledger serialization is valid JSON with stable fields", "[serialize]") {
  bound::MomentLedger m;
  m.n = 5;
  m.T = 2.0;
  m.N = 4.5;
  m.abs_moment = {1, 2, 3, 4, 5, 6, 7, 8};
  m.tail_t = 1.25e-3;
  const auto j = nlohmann::json::parse(to_json(m));
  CHECK(j.at("n") == 5);
  CHECK(j.at("abs_moment").size() == 8);
  CHECK(j.at("abs_moment")[2] == 3.0);
  CHECK(j.at("tail_t").get<double>() == Catch::Approx(1.25e-3));
}

TEST_CASE("mixture literals parse and re-emit", "[serialize]") {
  auto m = mixture_from_json("[[0.5,1,0],[3,10,0.8],[2,10,1.2]]");
  REQUIRE(m.components().size() == 3);
  CHECK(m.components()[1].scale == 10.0);
  CHECK(to_json(m) == "[[0.5,1,0],[3,10,0.8],[2,10,1.2]]");

  CHECK_THROWS_AS(mixture_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(mixture_from_json("[]"), std::invalid_argument);
  CHECK_THROWS_AS(mixture_from_json("[[1,2]]"), std::invalid_argument);
  CHECK_THROWS_AS(mixture_from_json("[[1,0,0]]"), std::invalid_argument);
}

TEST_CASE("fixed-width float formatting", "[serialize]") {
  CHECK(format_g9(0.5) == "0.5");
  CHECK(format_g9(31.654379641698605) == "31.6543796");
  CHECK(format_g9(1.0e-13) == "1e-13");
  // formatting is idempotent through a parse cycle
  const double v = 0.0191414499;
  CHECK(format_g9(std::stod(format_g9(v))) == format_g9(v));
}
