#include <random>

#include "doctest.h"
#include "qell/json_io.hpp"
#include "qell/suite.hpp"

using namespace qell;

TEST_CASE("fractions") {
  CHECK(is_reduced_fraction("1/2", true));
  CHECK(is_reduced_fraction("0/1", true));
  CHECK_FALSE(is_reduced_fraction("2/4", true));
  CHECK_FALSE(is_reduced_fraction("0/3", true));
  CHECK_FALSE(is_reduced_fraction("3/2", true));
  CHECK(is_reduced_fraction("-3/2", false));
  CHECK_FALSE(is_reduced_fraction("1/0", false));
  CHECK_FALSE(is_reduced_fraction("1/-2", false));
}

TEST_CASE("group documents") {
  CHECK(schema_validate(Json::parse(R"({"kind": "builtin", "name": "S3"})"), "group").ok);
  CHECK(schema_validate(Json::parse(R"({"kind": "table", "table": [[0,1],[1,0]]})"), "group").ok);
  CHECK(schema_validate(Json::parse(R"({"kind": "perms", "degree": 3, "gens": [[1,0,2]]})"), "group").ok);
  CHECK_FALSE(schema_validate(Json::parse(R"({"kind": "builtin", "name": "S3", "extra": 1})"), "group").ok);
  CHECK_FALSE(schema_validate(Json::parse(R"({"kind": "builtin", "name": "W7"})"), "group").ok);
  const auto bad = schema_validate(Json::parse(R"({"kind": "table", "table": [[0,1],[1,2]]})"), "group");
  CHECK_FALSE(bad.ok);
  REQUIRE_FALSE(bad.errors.empty());
  CHECK(bad.errors[0].find("/table/1/1") != std::string::npos);
  CHECK_THROWS_AS(build_group(Json::parse(R"({"kind": "table", "table": [[0,1,2],[1,0,0],[2,2,0]]})")), InputError);
  CHECK(build_group(group_spec_from_arg("builtin:Z2xZ3")).cyclic_factors == std::vector<int>{2, 3});
}

TEST_CASE("G-set documents") {
  const auto g = build_group(group_spec_from_arg("builtin:Z2"));
  CHECK(schema_validate(Json::parse(R"({"size": 2, "action": [[0,1],[1,0]]})"), "gset").ok);
  const auto out = schema_validate(Json::parse(R"({"size": 2, "action": [[0,1],[1,5]]})"), "gset");
  CHECK_FALSE(out.ok);
  REQUIRE_FALSE(out.errors.empty());
  CHECK(out.errors[0].find("/action/1/1") != std::string::npos);
  CHECK(build_gset(space_spec_from_arg("regular"), g.group).size == 2);
  CHECK(build_gset(space_spec_from_arg("trivial:3"), g.group).size == 3);
  CHECK_THROWS_AS(build_gset(Json::parse(R"({"size": 2, "action": [[0,1]]})"), g.group), InputError);
}

TEST_CASE("cocycle documents") {
  const auto z2 = build_group(group_spec_from_arg("builtin:Z2"));
  CHECK(schema_validate(cocycle_spec_from_arg("cyclic:2:1"), "cocycle").ok);
  CHECK(schema_validate(cocycle_spec_from_arg("explicit:1,1,1=1/2"), "cocycle").ok);
  CHECK_FALSE(schema_validate(Json::parse(R"({"kind": "explicit", "entries": [[[1,1,1], "2/4"]]})"), "cocycle").ok);
  CHECK_FALSE(schema_validate(Json::parse(R"({"kind": "explicit", "entries": [[[1,1,1], "3/2"]]})"), "cocycle").ok);
  CHECK(build_cocycle(cocycle_spec_from_arg("cyclic:2:1"), z2).values == cyclic_cocycle(2, 1).values);
  CHECK(build_cocycle(cocycle_spec_from_arg("explicit:1,1,1=1/2"), z2).values == cyclic_cocycle(2, 1).values);
  CHECK_THROWS_AS(build_cocycle(cocycle_spec_from_arg("explicit:1,1,2=1/2"), z2), InputError);

  // cyclic twists on non-cyclic groups are pulled back along a surjection
  const auto s3 = build_group(group_spec_from_arg("builtin:S3"));
  const Cochain3 pulled = build_cocycle(cocycle_spec_from_arg("cyclic:2:1"), s3);
  CHECK(check_cocycle3(pulled).ok);
  CHECK(value_order(pulled) == 2);
  CHECK_THROWS_AS(build_cocycle(cocycle_spec_from_arg("cyclic:3:1"), s3), InputError);
  CHECK_THROWS_AS(build_cocycle(cocycle_spec_from_arg("triple:0:1:1"), s3), InputError);

  std::mt19937_64 rng(2);
  const Json shifted = random_shift_spec(cocycle_spec_from_arg("cyclic:2:1"), s3.group, 4, rng);
  CHECK(schema_validate(shifted, "cocycle").ok);
  CHECK(check_cocycle3(build_cocycle(shifted, s3)).ok);
}

TEST_CASE("request documents") {
  Json req = {{"command", "qell"},    {"group", group_spec_from_arg("builtin:Z2")},
              {"cocycle", nullptr},   {"space", space_spec_from_arg("pt")},
              {"class", nullptr},     {"element", nullptr}, {"seed", 1}};
  CHECK(schema_validate(req, "request").ok);
  req["command"] = "plot";
  CHECK_FALSE(schema_validate(req, "request").ok);
  req["command"] = "verify";
  req["target"] = "sl2";
  CHECK(schema_validate(req, "request").ok);
  req["target"] = nullptr;
  CHECK_FALSE(schema_validate(req, "request").ok);
  req.erase("target");
  req["command"] = "qell";
  req["colour"] = "blue";
  CHECK_FALSE(schema_validate(req, "request").ok);
  for (const auto& name : schema_names()) CHECK(schema_document(name).is_object());
}

TEST_CASE("serialization round trips") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const EllFunction f = random_ell_function(rng);
    CHECK(ell_function_from_json(to_json(f)) == f);
    for (const auto& [key, c] : f.terms) CHECK(cyclotomic_from_json(to_json(c)) == c);
  }
  CHECK(to_json(QZ(3, 4)) == "3/4");
  CHECK(to_json(Cyclotomic(-1)).dump() == R"({"coeffs":{"0":"-1/1"},"m":1})");
  CHECK(pair_key({1, 2}) == "(1,2)");
}

TEST_CASE("class documents") {
  const auto g = build_group(group_spec_from_arg("builtin:Z2"));
  const auto s = qell_basis(g.group, GSet::point(g.group), std::nullopt);
  const Json doc = Json::parse(R"([{"sigma": 1, "orbit": 0, "irrep": 1, "q_shift": 0, "coeff": 2}])");
  CHECK(schema_validate(doc, "class").ok);
  const QEllClass c = build_class(doc, s);
  REQUIRE(c.terms.size() == 1);
  CHECK(c.terms.begin()->second == 2);
  CHECK_THROWS_AS(build_class(Json::parse(R"([{"sigma": 1, "orbit": 0, "irrep": 5, "q_shift": 0, "coeff": 1}])"), s),
                  InputError);
}
