#include <catch2/catch_amalgamated.hpp>

#include "rootcone/instance.hpp"
#include "rootcone/report.hpp"

using namespace rootcone;

namespace {

const char* kSector = R"({
  "rank": 2,
  "roots": [
    {"E": [1, 0], "ell": [-2, 1], "label": "a1"},
    {"E": [0, 1], "ell": [1, -2]}
  ],
  "cones": {
    "quadrant": {"facets": [[1, 0], [0, 1]]},
    "axis": {"rays": [[1, 0]]}
  },
  "actions": {
    "swap": {"generators": [[[0, 1], [1, 0]]], "cone": "quadrant"},
    "free": {"generators": [[[1, 1], [0, 1]]]}
  }
})";

}  // namespace

TEST_CASE("instance round trip") {
  Instance inst = parse_instance(kSector);
  CHECK(inst.system.rank == 2);
  CHECK(inst.system.kind == "file");
  REQUIRE(inst.system.size() == 2);
  CHECK(inst.system.roots[0].label == "a1");
  CHECK(inst.system.roots[1].label == "r2");  // default label
  CHECK(inst.system.roots[1].ell == make_covec({1, -2}));
  CHECK(validate(inst.system).valid);

  REQUIRE(inst.cones.count("quadrant") == 1);
  const Cone& q = inst.cones.at("quadrant");
  CHECK(q.dimension() == 2);
  CHECK(q.rays() == std::vector<Vec>{make_vec({0, 1}), make_vec({1, 0})});
  CHECK(inst.cones.at("axis").dimension() == 1);

  ConeAction swap = resolve_action(inst, "swap");
  CHECK(swap.domain == q);
  CHECK(preserves_domain(swap).preserved);
  ConeAction free = resolve_action(inst, "free");
  CHECK(free.domain == Cone::full_space(2));
  CHECK(free.alphabet.size() == 2);  // shear needs its inverse as a letter
  CHECK_THROWS_AS(resolve_action(inst, "nope"), InvalidInstanceError);
}

TEST_CASE("large coordinates arrive as strings") {
  Instance inst = parse_instance(R"({
    "rank": 1,
    "roots": [{"E": ["123456789012345678901234"], "ell": ["-2"]}]
  })");
  CHECK(rat_to_string(inst.system.roots[0].E[0]) == "123456789012345678901234");
  Rat p = pair(inst.system.roots[0].ell, inst.system.roots[0].E);
  CHECK(rat_to_string(p) == "-246913578024691357802468");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_instance("{"), ParseError);
  CHECK_THROWS_AS(parse_instance("[1, 2]"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"roots": []})"), ParseError);  // no rank
  CHECK_THROWS_AS(parse_instance(R"({"rank": 1})"), ParseError);    // no roots
  CHECK_THROWS_AS(parse_instance(R"({"rank": 1, "roots": [], "extra": 0})"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_instance(R"({"rank": 1, "roots": [{"E": [1.5], "ell": [-2]}]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_instance(R"({"rank": 1, "roots": [{"E": ["12a"], "ell": [-2]}]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_instance(R"({"rank": 1, "roots": [{"E": ["-"], "ell": [-2]}]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_instance(R"({"rank": 1, "roots": [{"E": [1], "ell": [-2], "label": 7}]})"),
      ParseError);
  // A generator with the wrong shape is a schema violation.
  const char* badmat = R"({
    "rank": 2, "roots": [{"E": [1, 0], "ell": [-2, 0]}],
    "actions": {"a": {"generators": [[[1, 0]]]}}
  })";
  CHECK_THROWS_AS(parse_instance(badmat), ParseError);
  CHECK_THROWS_AS(load_instance("/nonexistent/path.json"), ParseError);
}

TEST_CASE("invalid instances") {
  CHECK_THROWS_AS(parse_instance(R"({"rank": 0, "roots": []})"),
                  InvalidInstanceError);
  CHECK_THROWS_AS(parse_instance(R"({"rank": 2, "roots": []})"),
                  InvalidInstanceError);
  // Wrong coordinate count is a schema violation, not a semantic one.
  CHECK_THROWS_AS(
      parse_instance(R"({"rank": 2, "roots": [{"E": [1], "ell": [-2, 0]}]})"),
      ParseError);
  // Cone representation must be exactly one of rays/facets.
  const char* both = R"({
    "rank": 1, "roots": [{"E": [1], "ell": [-2]}],
    "cones": {"c": {"rays": [[1]], "facets": [[1]]}}
  })";
  CHECK_THROWS_AS(parse_instance(both), InvalidInstanceError);
  const char* neither = R"({
    "rank": 1, "roots": [{"E": [1], "ell": [-2]}], "cones": {"c": {}}
  })";
  CHECK_THROWS_AS(parse_instance(neither), InvalidInstanceError);
  // Zero generators are rejected by the cone layer and surfaced here.
  const char* zero = R"({
    "rank": 2, "roots": [{"E": [1, 0], "ell": [-2, 0]}],
    "cones": {"c": {"rays": [[0, 0]]}}
  })";
  CHECK_THROWS_AS(parse_instance(zero), InvalidInstanceError);
  const char* dangling = R"({
    "rank": 1, "roots": [{"E": [1], "ell": [-2]}],
    "actions": {"a": {"generators": [], "cone": "missing"}}
  })";
  CHECK_THROWS_AS(parse_instance(dangling), InvalidInstanceError);
}

TEST_CASE("digest is canonical") {
  Instance a = parse_instance(kSector);
  Instance b = parse_instance(kSector);
  std::string d = instance_digest(a);
  CHECK(d.size() == 16);
  CHECK(d == instance_digest(b));

  // Same quadrant, presented by rays instead of facets: same digest.
  std::string by_rays(kSector);
  auto pos = by_rays.find("{\"facets\": [[1, 0], [0, 1]]}");
  REQUIRE(pos != std::string::npos);
  by_rays.replace(pos, std::string("{\"facets\": [[1, 0], [0, 1]]}").size(),
                  "{\"rays\": [[1, 0], [0, 1]]}");
  CHECK(instance_digest(parse_instance(by_rays)) == d);

  // A changed coordinate moves the digest.
  std::string tweaked(kSector);
  pos = tweaked.find("[-2, 1]");
  tweaked.replace(pos, 7, "[-2, 3]");
  CHECK(instance_digest(parse_instance(tweaked)) != d);

  CHECK(instance_digest(builtin_instance("co2222")) ==
        instance_digest(builtin_instance("co2222")));
  CHECK(builtin_instance("co2222").system.kind == "co2222");
}

TEST_CASE("serialization reaches a fixed point") {
  Instance first = parse_instance(kSector);
  auto s1 = serialize_instance(first);
  Instance second = parse_instance(s1.dump());
  auto s2 = serialize_instance(second);
  CHECK(s1 == s2);
  CHECK(instance_digest(first) == instance_digest(second));
  // The normalized form presents every cone by rays.
  CHECK(s1["cones"]["quadrant"].contains("rays"));
  CHECK(s1["roots"][1]["label"] == "r2");
}

TEST_CASE("json serializers") {
  CHECK(json_of(Rat(-3)) == "-3");
  CHECK(json_of(make_vec({1, -2})) == Json::parse(R"(["1", "-2"])"));
  CHECK(json_word({0, 2, 1}) == Json::parse("[1, 3, 2]"));
  CHECK(json_display({-1, 2}) == Json::parse("[-1, 2]"));

  Cone q = Cone::from_facets(2, {make_covec({1, 0}), make_covec({0, 1})});
  Json jq = json_of(q);
  CHECK(jq["dimension"] == 2);
  CHECK(jq["lineality_dim"] == 0);
  CHECK(jq["rays"] == Json::parse(R"([["0", "1"], ["1", "0"]])"));
  CHECK(jq["facets"].size() == 2);

  RootSystem bad;
  bad.rank = 1;
  bad.roots = {{make_vec({1}), make_covec({-1}), "x"}};
  Json jv = json_of(validate(bad));
  CHECK(jv["valid"] == false);
  CHECK(jv["axiom"] == "self-pairing");
  CHECK(jv["roots"] == Json::parse("[1]"));

  Json jc = json_of(coxeter_matrix(builtin_system("dynkin:B2")));
  CHECK(jc == Json::parse(R"([[1, 4], [4, 1]])"));
  Json jinf = json_of(coxeter_matrix(builtin_system("co2222")));
  CHECK(jinf[0][1] == "inf");
  CHECK(jinf[0][0] == 1);
}

TEST_CASE("report envelope") {
  Instance inst = builtin_instance("dynkin:A2");
  Json params;
  params["seed"] = 7;
  Json rep = report_envelope("orbit", inst, params);
  CHECK(rep["command"] == "orbit");
  CHECK(rep["instance"]["kind"] == "dynkin:A2");
  CHECK(rep["instance"]["rank"] == 4);
  CHECK(rep["instance"]["digest"].get<std::string>().size() == 16);
  CHECK(rep["params"]["seed"] == 7);
  CHECK(rep["result"].is_null());
  auto it = rep.begin();
  CHECK(it.key() == "command");  // insertion order is preserved
  std::string text = render_report(rep);
  CHECK(text.back() == '\n');
}
