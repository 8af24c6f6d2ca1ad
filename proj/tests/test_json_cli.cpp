#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "bbk/suites.hpp"

using namespace bbk;

namespace {

int runCli(const std::string& args) {
  std::string cmd = std::string(BBK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string cliOutput(const std::string& args) {
  std::string cmd = std::string(BBK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  pclose(pipe);
  return out;
}

Json stripTiming(Json j) {
  for (auto& c : j["checks"]) c.erase("wallMs");
  return j;
}

}  // namespace

TEST_CASE("descriptor round-trip for every system-backed example") {
  for (const auto& name : exampleNames()) {
    auto j = exampleDescriptor(name);
    if (!j) continue;
    CHECK(!validateSystemJson(*j).has_value());
    auto parsed = systemFromJson(*j);
    REQUIRE(std::holds_alternative<BulkBoundarySystem>(parsed));
    Json again = toJson(std::get<BulkBoundarySystem>(parsed));
    CHECK(again == *j);
  }
}

TEST_CASE("schema validation rejects malformed descriptors with locations") {
  auto base = *exampleDescriptor("toplmech");
  SUBCASE("malformed rational") {
    Json bad = base;
    bad["boundary"]["pairing"]["entries"][0]["coeff"] = "1/0";
    auto err = validateSystemJson(bad);
    REQUIRE(err.has_value());
    CHECK(err->location.find("pairing.entries[0].coeff") != std::string::npos);
  }
  SUBCASE("bracket entry with mismatched arity") {
    Json bad = *exampleDescriptor("bf1d-sl2");
    bad["boundary"]["brackets"][0]["entries"][0]["inputs"] = Json::array({0});
    auto err = validateSystemJson(bad);
    REQUIRE(err.has_value());
    CHECK(err->message.find("arity") != std::string::npos);
  }
  SUBCASE("missing mesh") {
    Json bad = base;
    bad.erase("mesh");
    CHECK(validateSystemJson(bad).has_value());
  }
  SUBCASE("index out of range") {
    Json bad = base;
    bad["boundary"]["pairing"]["entries"][0]["i"] = 99;
    CHECK(validateSystemJson(bad).has_value());
  }
}

TEST_CASE("schema document lists the descriptor surface") {
  Json schema = systemSchema();
  CHECK(schema["properties"].contains("boundary"));
  CHECK(schema["properties"].contains("mesh"));
  CHECK(schema["properties"].contains("condition"));
  CHECK(schema["required"].size() == 4);
}

TEST_CASE("cli: verify exits 0 on a valid passing descriptor") {
  auto j = *exampleDescriptor("toplmech");
  std::ofstream("/tmp/bbk_toplmech.json") << j.dump();
  CHECK(runCli("verify --input /tmp/bbk_toplmech.json --suite bv") == 0);
  CHECK(runCli("verify --input /tmp/bbk_toplmech.json --suite lagrangian") == 0);
}

TEST_CASE("cli: exit 2 on malformed input, unknown suite, unknown example") {
  std::ofstream("/tmp/bbk_bad.json") << "{\"name\": 3}";
  CHECK(runCli("verify --input /tmp/bbk_bad.json") == 2);
  std::ofstream("/tmp/bbk_bad2.json") << "not json";
  CHECK(runCli("verify --input /tmp/bbk_bad2.json") == 2);
  CHECK(runCli("verify --input /tmp/bbk_toplmech.json --suite nonsense") == 2);
  CHECK(runCli("verify --input /tmp/missing.json") == 2);
  CHECK(runCli("examples run nonsense") == 2);
}

TEST_CASE("cli: exit 1 when a check fails") {
  // A boundary pairing that is not invariant under the brackets.
  auto j = *exampleDescriptor("bf1d-sl2");
  j.erase("condition");
  j["boundary"]["pairing"]["entries"] = Json::array();
  for (int i = 0; i < 6; ++i)
    j["boundary"]["pairing"]["entries"].push_back(Json{{"i", i}, {"j", i}, {"coeff", "1"}});
  std::ofstream("/tmp/bbk_fail.json") << j.dump();
  CHECK(runCli("verify --input /tmp/bbk_fail.json --suite bv") == 1);
}

TEST_CASE("cli: reports are deterministic modulo timing") {
  std::string a = cliOutput("verify --input /tmp/bbk_toplmech.json --suite bv");
  std::string b = cliOutput("verify --input /tmp/bbk_toplmech.json --suite bv");
  Json ja = stripTiming(Json::parse(a));
  Json jb = stripTiming(Json::parse(b));
  CHECK(ja == jb);
}

TEST_CASE("cli: emit-schema and examples list") {
  std::string schema = cliOutput("emit-schema");
  CHECK(Json::parse(schema).contains("properties"));
  std::string list = cliOutput("examples list");
  for (const auto& name : exampleNames()) CHECK(list.find(name) != std::string::npos);
}

TEST_CASE("cli: half-plane example reports the weight-1 dimension") {
  std::string out = cliOutput("examples run bf2d-sl2-weight1");
  Json j = Json::parse(out);
  bool found = false;
  for (const auto& c : j["checks"]) {
    if (c["check"] == "halfplane.weight1-dimension") {
      CHECK(c["status"] == "pass");
      CHECK(c["witness"].get<std::string>().find("3") != std::string::npos);
      found = true;
    }
  }
  CHECK(found);
}
