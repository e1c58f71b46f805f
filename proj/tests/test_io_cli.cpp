#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "ghost/model_spec.hpp"
#include "ghost/slope_io.hpp"

using namespace ghost;

TEST_SUITE_BEGIN("io");

TEST_CASE("rational strings round-trip") {
  for (const char* s : {"0", "5", "-7/3", "1295", "8/5"}) {
    Rational v = rational_from_string(s);
    CHECK(rational_to_string(v) == s);
  }
  CHECK(rational_from_string("4/8") == rational_from_string("1/2"));
  CHECK_THROWS(rational_from_string(""));
  CHECK_THROWS(rational_from_string("1.5"));
  CHECK_THROWS(rational_from_string("x"));
  CHECK_THROWS(rational_from_string("1/0"));
}

TEST_CASE("slope files round-trip") {
  SlopeFile f;
  f.p = 5;
  f.model = "gamma0:5,1,0";
  f.weight = "int:12";
  f.count = 5;
  for (const char* s : {"1", "5", "5", "5", "10"}) f.slopes.push_back(rational_from_string(s));
  SlopeFile g = parse_slope_file_text(emit_slope_file(f));
  CHECK(g.p == f.p);
  CHECK(g.model == f.model);
  CHECK(g.weight == f.weight);
  CHECK(g.count == f.count);
  CHECK(g.slopes == f.slopes);

  CHECK_THROWS(parse_slope_file_text("{\"slopes\": [1, 2]}"));  // numbers, not strings
  CHECK_THROWS(parse_slope_file_text("{}"));
  CHECK_THROWS(parse_slope_file_text("not json"));
}

TEST_CASE("model descriptors load from every form") {
  auto inline_model = load_model("gamma0:5,1,0");
  CHECK(inline_model.description() == "gamma0:5,1,0");
  CHECK(inline_model.d(3) == 1);

  auto json_model = model_from_json_text(R"({"type":"gamma0","p":5,"N":1,"k0":0})");
  CHECK(json_model.d(3) == inline_model.d(3));

  auto ql = model_from_json_text(R"({
    "type": "quasilinear", "p": 5, "k_base": 0,
    "d":    {"base": [0, 0, 0], "period": 3, "defect": 1},
    "dnew": {"base": [-1, 1, 3], "period": 3, "defect": 4}
  })");
  for (long long n = -10; n <= 10; ++n) {
    CHECK(ql.d(n) == inline_model.d(n));
    CHECK(ql.dnew(n) == inline_model.dnew(n));
  }

  auto rb = load_model("rhobar:13,12,0,1,0,0,0");
  CHECK(rb.pq_d().defect == 2);

  CHECK_THROWS(load_model(""));
  CHECK_THROWS(load_model("gamma0:5,1"));
  CHECK_THROWS(load_model("mystery:1,2"));
  CHECK_THROWS(model_from_json_text(R"({"type":"nope"})"));
}

TEST_CASE("model json files load by path") {
  std::string path = "test_model_tmp.json";
  {
    std::ofstream out(path);
    out << R"({"type":"gamma0","p":7,"N":1,"k0":2})";
  }
  auto m = load_model(path);
  CHECK(m.params().p == 7);
  CHECK(m.params().component == 2);
  std::remove(path.c_str());
}

TEST_SUITE_END();
