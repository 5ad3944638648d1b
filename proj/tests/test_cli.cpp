#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <string>

using json = nlohmann::json;

namespace {

struct RunResult {
  int status;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(FFCOUNT_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), (int)buf.size(), pipe)) out += buf.data();
  int rc = pclose(pipe);
  return {WEXITSTATUS(rc), out};
}

// strip the timing field, the one value that may differ between runs
std::string normalized(const std::string& lines) {
  std::string out;
  size_t start = 0;
  while (start < lines.size()) {
    size_t end = lines.find('\n', start);
    if (end == std::string::npos) end = lines.size();
    std::string line = lines.substr(start, end - start);
    if (!line.empty()) {
      json j = json::parse(line);
      j.erase("ms");
      out += j.dump();
      out += '\n';
    }
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("count subcommand and the documented schema") {
  auto r = run_cli("count --p 5 --curve short:1,1 --alg naive");
  CHECK(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["q"] == "5");
  CHECK(j["curve"] == "short:1,1");
  CHECK(j["method"] == "naive");
  CHECK(j["n_points"] == "9");
  CHECK(j["trace"] == "-3");
  CHECK(j["ms"].is_string());
}

TEST_CASE("published count through the CLI") {
  auto r = run_cli("count --p 1048609 --curve short:0,-1 --alg naive");
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["n_points"] == "1049412");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("count --p 2 --curve general:1,0,0,0,1 --alg schoof").status == 2);
  CHECK(run_cli("count --p 5 --curve short:1,1 --alg agm").status == 2);
  CHECK(run_cli("count --p 5").status == 2);             // missing --curve
  CHECK(run_cli("nonsense").status == 2);
}

TEST_CASE("engine errors exit 1") {
  // singular curve
  auto r = run_cli("count --p 5 --curve short:0,0");
  CHECK(r.status == 1);
  CHECK(json::parse(r.out).contains("error"));
  // naive guard exceeded
  auto r2 = run_cli("count --p 1048609 --curve short:0,-1 --alg naive --guard 100");
  CHECK(r2.status == 1);
}

TEST_CASE("auto policy") {
  // small field: naive
  auto r = run_cli("count --p 101 --curve short:1,1");
  CHECK(json::parse(r.out)["method"] == "naive");
  // large prime: schoof
  auto r2 = run_cli("count --p 1048609 --curve short:0,-1");
  CHECK(json::parse(r2.out)["method"] == "schoof");
  CHECK(json::parse(r2.out)["n_points"] == "1049412");
  // char-2 AGM-shaped curve over a big field: agm
  auto r3 = run_cli("count --p 2 --d 20 --curve \"general:1;0;0;0;1\" --seed 5");
  CHECK(json::parse(r3.out)["method"] == "agm");
}

TEST_CASE("seeded runs are byte-identical modulo the ms field") {
  std::string args =
      "count --p 10007 --curve short:3,7 --alg bsgs --seed 42";
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(a.status == 0);
  CHECK(normalized(a.out) == normalized(b.out));

  auto c = run_cli("sqrtmod --p 1000003 --a 4 --seed 1");
  auto d = run_cli("sqrtmod --p 1000003 --a 4 --seed 1");
  CHECK(c.out == d.out);
}

TEST_CASE("zeta subcommand") {
  auto r = run_cli("zeta --p 5 --curve short:1,1 --alg naive");
  json j = json::parse(r.out);
  CHECK(j["zeta"]["num"] == json::array({"1", "3", "5"}));
  CHECK(j["zeta"]["den"] == json::array({"1", "-6", "5"}));

  auto r2 = run_cli("zeta --counts 5,25,125,625,3125 --degree-bound 2");
  json j2 = json::parse(r2.out);
  CHECK(j2["zeta"]["num"] == json::array({"1"}));
  CHECK(j2["zeta"]["den"] == json::array({"1", "-5"}));
}

TEST_CASE("sqrtmod subcommand") {
  auto r = run_cli("sqrtmod --p 7 --a 2");
  CHECK(json::parse(r.out)["sqrt"] == "3");
  auto r2 = run_cli("sqrtmod --p 5 --a 3");
  CHECK(r2.status == 1);  // non-residue
}

TEST_CASE("cornacchia subcommand") {
  auto r = run_cli("cornacchia --disc 3 --q 7");
  json j = json::parse(r.out);
  CHECK(j["solutions"] ==
        json::array({json::array({"1", "3"}), json::array({"4", "2"}),
                     json::array({"5", "1"})}));
}

TEST_CASE("bruteforce subcommand") {
  auto r = run_cli("bruteforce --variety \"3,1 ; 2 ; 1:2,0+1:0,2\" --k 1");
  CHECK(json::parse(r.out)["count"] == "1");

  auto r2 = run_cli(
      "bruteforce --variety \"5,1 ; 1 ; 1:1\" --degree-bound 1 --k 1");
  json j2 = json::parse(r2.out);
  // single point at the origin over every extension: Z = 1/(1-t)
  CHECK(j2["zeta"]["den"] == json::array({"1", "-1"}));
}

TEST_CASE("bench subcommand") {
  auto r = run_cli(
      "bench --p 10007 --alg naive,naive-serial,bsgs,schoof --trials 2 --seed 3");
  CHECK(r.status == 0);
  int lines = 0;
  size_t pos = 0;
  while ((pos = r.out.find('\n', pos)) != std::string::npos) {
    ++lines;
    ++pos;
  }
  CHECK(lines == 4);
  // all engines agree on the count
  json first;
  size_t start = 0;
  std::string expect;
  while (start < r.out.size()) {
    size_t end = r.out.find('\n', start);
    if (end == std::string::npos) break;
    json j = json::parse(r.out.substr(start, end - start));
    if (expect.empty()) expect = j["n_points"];
    CHECK(j["n_points"] == expect);
    CHECK(j["trials"] == 2);
    start = end + 1;
  }
}
