#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "pmcover/io.hpp"
#include "support/corpus.hpp"

using namespace pmc;
using namespace pmc::test;
using nlohmann::json;

namespace {

const std::string kData = PMCOVER_DATA_DIR;

bool same_instance(const Instance& a, const Instance& b) {
  if (a.q != b.q || a.elements.size() != b.elements.size() || a.sets.size() != b.sets.size())
    return false;
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    if (a.elements[i].id != b.elements[i].id) return false;
    if (a.elements[i].requirement != b.elements[i].requirement) return false;
    if (a.elements[i].profit != b.elements[i].profit) return false;
  }
  for (std::size_t i = 0; i < a.sets.size(); ++i) {
    if (a.sets[i].id != b.sets[i].id) return false;
    if (a.sets[i].members != b.sets[i].members) return false;
  }
  if (a.cost.kind != b.cost.kind) return false;
  if (a.cost.weights != b.cost.weights) return false;
  if (a.cost.table != b.cost.table) return false;
  if (a.cost.kind == CostKind::ConcaveCardinality &&
      (a.cost.scale != b.cost.scale || a.cost.exponent != b.cost.exponent))
    return false;
  return true;
}

}  // namespace

TEST_CASE("bundled fixtures load to the expected instances") {
  Instance ex1 = load_instance(kData + "/example1.json");
  CHECK(same_instance(ex1, make_example1(1000)));

  Instance ex2 = load_instance(kData + "/example2.json");
  CHECK(same_instance(ex2, make_example2()));
  CHECK(ex2.q == Rational(2, 3));  // "2/3" string parsed exactly

  Instance remark = load_instance(kData + "/remark2.json");
  CHECK(same_instance(remark, make_remark2()));

  Instance ex3 = load_instance(kData + "/example3.json");
  CHECK(ex3.cost.kind == CostKind::ExplicitTable);
  CHECK(ex3.cost.table_monotone);
}

TEST_CASE("load-dump-load is the identity on every fixture and random instances") {
  for (const char* name : {"example1.json", "example2.json", "example3.json", "remark2.json"}) {
    Instance first = load_instance(kData + "/" + name);
    Instance second = parse_instance(dump_instance(first));
    validate(second);
    CHECK(same_instance(first, second));
  }
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Instance first = random_instance(seed);
    Instance second = parse_instance(dump_instance(first));
    validate(second);
    CHECK(same_instance(first, second));
  }
}

TEST_CASE("rational values accept numbers, fractions and decimal strings") {
  CHECK(*parse_rational("2/3") == Rational(2, 3));
  CHECK(*parse_rational("-5") == Rational(-5));
  CHECK(*parse_rational("0.1") == Rational(1, 10));
  CHECK(*parse_rational("1.25e2") == Rational(125));
  CHECK(*parse_rational("2.5e-1") == Rational(1, 4));
  CHECK(!parse_rational("").has_value());
  CHECK(!parse_rational("1/0").has_value());
  CHECK(!parse_rational("abc").has_value());
  CHECK(rational_to_string(Rational(2, 3)) == "2/3");
  CHECK(rational_to_string(Rational(4)) == "4");
  CHECK(*parse_rational(rational_to_string(Rational(-7, 12))) == Rational(-7, 12));

  json doc = json::parse(R"({"elements":[{"id":"e1","requirement":1,"profit":"1/3"}],
    "sets":[{"id":"S1","members":["e1"]}],"q":0.25,
    "cost":{"kind":"linear","weights":{"S1":"7/2"}}})");
  Instance inst = parse_instance(doc);
  CHECK(inst.elements[0].profit == Rational(1, 3));
  CHECK(inst.q == Rational(1, 4));
  CHECK(inst.cost.weights[0] == Rational(7, 2));
}

TEST_CASE("unknown keys are rejected with the offending name") {
  json doc = json::parse(R"({"elements":[],"sets":[],"q":0.5,
    "cost":{"kind":"linear","weights":{}},"surprise":1})");
  try {
    (void)parse_instance(doc);
    FAIL("expected a parse error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::Parse);
    CHECK(std::string(err.what()).find("surprise") != std::string::npos);
  }

  json nested = json::parse(R"({"elements":[{"id":"e1","requirement":1,"profit":1,"bonus":2}],
    "sets":[{"id":"S1","members":["e1"]}],"q":0.5,
    "cost":{"kind":"linear","weights":{"S1":1}}})");
  CHECK_THROWS_AS((void)parse_instance(nested), Error);
}

TEST_CASE("schema violations carry parse-kind errors") {
  CHECK_THROWS_AS((void)load_instance(kData + "/nonexistent.json"), Error);

  json doc = json::parse(R"({"elements":[{"id":"e1","requirement":1.5,"profit":1}],
    "sets":[{"id":"S1","members":["e1"]}],"q":0.5,
    "cost":{"kind":"linear","weights":{"S1":1}}})");
  CHECK_THROWS_AS((void)parse_instance(doc), Error);  // non-integer requirement

  json badkind = json::parse(R"({"elements":[{"id":"e1","requirement":1,"profit":1}],
    "sets":[{"id":"S1","members":["e1"]}],"q":0.5,"cost":{"kind":"mystery"}})");
  CHECK_THROWS_AS((void)parse_instance(badkind), Error);

  // Linear weights must name every set.
  json missing = json::parse(R"({"elements":[{"id":"e1","requirement":1,"profit":1}],
    "sets":[{"id":"S1","members":["e1"]},{"id":"S2","members":["e1"]}],
    "q":0.5,"cost":{"kind":"linear","weights":{"S1":1}}})");
  CHECK_THROWS_AS((void)parse_instance(missing), Error);
}

TEST_CASE("explicit tables must be complete and duplicate-free") {
  json base = json::parse(R"({"elements":[{"id":"e1","requirement":1,"profit":1}],
    "sets":[{"id":"S1","members":["e1"]}],"q":0.5,
    "cost":{"kind":"explicit-table","monotone":true,"entries":[
      {"subset":[],"value":0},{"subset":["S1"],"value":1}]}})");
  CHECK_NOTHROW((void)parse_instance(base));

  json dup = base;
  dup["cost"]["entries"].push_back({{"subset", json::array()}, {"value", 0}});
  CHECK_THROWS_AS((void)parse_instance(dup), Error);

  json incomplete = base;
  incomplete["cost"]["entries"].erase(1);
  CHECK_THROWS_AS((void)parse_instance(incomplete), Error);
}

TEST_CASE("loading an invalid instance reports the violations") {
  json doc = json::parse(R"({"elements":[{"id":"e1","requirement":1,"profit":1}],
    "sets":[],"q":0.5,"cost":{"kind":"linear","weights":{}}})");
  const std::string path =
      (std::filesystem::temp_directory_path() / "pmcover_invalid_fixture.json").string();
  {
    std::ofstream out(path);
    out << doc.dump();
  }
  try {
    (void)load_instance(path);
    FAIL("expected a validation error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::InvalidInstance);
    CHECK(std::string(err.what()).find("does not appear in any set") != std::string::npos);
  }
  std::remove(path.c_str());
}
