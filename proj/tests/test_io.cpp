#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pact/fixtures.hpp"
#include "pact/io.hpp"

using namespace pact;
namespace fx = pact::fixtures;
namespace fs = std::filesystem;
using pact::io::json;

namespace {

fs::path fixture(const std::string& name) { return fs::path(PACT_TEST_FIXTURES) / name; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "pact-io-test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("fixture files match the built-in fixtures") {
  CHECK(*io::load(fixture("z2.json")).groupoid == *fx::z2());
  CHECK(*io::load(fixture("pair2.json")).groupoid == *fx::pair2());
  CHECK(*io::load(fixture("remark-g.json")).groupoid == *fx::remark_groupoid());
  CHECK(*io::load(fixture("fix-b.json")).action == *fx::fix_b());
  CHECK(*io::load(fixture("fix-c.json")).action == *fx::fix_c());
  CHECK(*io::load(fixture("z2-fixed.json")).action == *fx::z2_fixed_point());
  CHECK(*io::load(fixture("z2-swap.json")).action == *fx::z2_swap());
  CHECK(*io::load(fixture("z4-two.json")).action == *fx::z4_two_points());

  auto s = io::load(fixture("sierp-act.json"));
  auto ref = fx::sierp_act();
  CHECK(*s.action == *ref.action);
  REQUIRE(s.topology.has_value());
  CHECK(*s.topology == ref.T_X);
}

TEST_CASE("saving a loaded fixture reproduces it byte for byte") {
  for (const auto& entry : fs::directory_iterator(PACT_TEST_FIXTURES)) {
    if (entry.path().extension() != ".json" || entry.path().filename() == "remark-x.json") continue;
    CAPTURE(entry.path().filename().string());
    auto inst = io::load(entry.path());
    CHECK(io::dump(io::to_json(inst)) == read_file(entry.path()));
  }
}

TEST_CASE("REMARK-X fails validation on (i) at x2") {
  try {
    io::load(fixture("remark-x.json"));
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const auto* v = e.report().first("(i)");
    REQUIRE(v != nullptr);
    CHECK(std::find(v->witness.begin(), v->witness.end(), "x2") != v->witness.end());
  }
  auto inst = io::load(fixture("remark-x.json"), {.bypass_validation = true});
  CHECK(inst.tainted());
  CHECK(io::to_json(inst)["tainted"] == true);
}

TEST_CASE("unknown keys and bad shapes are rejected") {
  auto doc = io::parse_text(read_file(fixture("fix-b.json")));
  auto extra = doc;
  extra["payload"]["colour"] = "red";
  CHECK_THROWS_AS(io::from_json(extra, PACT_TEST_FIXTURES), StructuralError);
  auto bad = doc;
  bad["payload"]["carrier"] = "a";
  CHECK_THROWS_AS(io::from_json(bad, PACT_TEST_FIXTURES), StructuralError);
  auto kind = doc;
  kind["kind"] = "monoid";
  CHECK_THROWS_AS(io::from_json(kind, PACT_TEST_FIXTURES), StructuralError);
}

TEST_CASE("parse errors carry a position") {
  try {
    io::parse_text("{\n  \"kind\": \"action\",\n  \"meta\": {,\n}");
    FAIL("expected a parse error");
  } catch (const io::ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 0);
  }
}

TEST_CASE("groupoid references resolve through the fixture directory") {
  auto doc = io::parse_text(read_file(fixture("fix-b.json")));
  auto path = scratch("fix-b-elsewhere.json");
  {
    std::ofstream out(path);
    out << io::dump(doc);
  }
  // not beside the file, so found through fixtures_dir()
  ::setenv("PACT_FIXTURES", PACT_TEST_FIXTURES, 1);
  CHECK(*io::load(path).action == *fx::fix_b());
  ::setenv("PACT_FIXTURES", scratch("").c_str(), 1);
  CHECK_THROWS(io::load(path));
  ::unsetenv("PACT_FIXTURES");
  CHECK(io::fixtures_dir() == fs::path(PACT_TEST_FIXTURES));
}

TEST_CASE("inline groupoids") {
  auto doc = io::parse_text(read_file(fixture("fix-b.json")));
  doc["payload"]["groupoid"] = io::groupoid_to_json(*fx::z2());
  auto inst = io::from_json(doc, scratch(""));
  CHECK(*inst.action == *fx::fix_b());
  CHECK(io::parse_text(io::dump(io::to_json(inst))) == io::to_json(inst));
}

TEST_CASE("envelope documents round trip") {
  auto src = io::load(fixture("fix-b.json"));
  auto E = globalize(src.action);
  auto env = io::envelope_instance(E, src, std::nullopt);
  auto doc = io::to_json(env);
  CHECK(doc["payload"]["carrier"] == json{"[e,a]", "[e,b]", "[s,b]"});
  CHECK(doc["embedding"] == json::parse(R"([["a", "[e,a]"], ["b", "[e,b]"]])"));
  CHECK(doc["classes"][0] == json::parse(R"(["[e,a]", [["e", "a"], ["s", "a"]]])"));

  auto path = scratch("fix-b-envelope.json");
  io::save(path, env);
  auto back = io::load(path);
  CHECK(*back.action == *E.action);
  CHECK(io::dump(io::to_json(back)) == read_file(path));
}

TEST_CASE("canonical printing") {
  json doc = {{"b", 1}, {"a", json::array({1, 2})}};
  CHECK(io::dump(doc) == "{\n  \"a\": [1, 2],\n  \"b\": 1\n}\n");
}
