#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fkn/cli.hpp"
#include "fkn/diagonal.hpp"
#include "fkn/json_io.hpp"
#include "support.hpp"

using namespace fkn;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  args.insert(args.end(), {"--format", "json"});
  const auto o = run(args);
  REQUIRE(o.code == 0);
  return Json::parse(o.out);
}

} // namespace

TEST_CASE("groupoid check reports") {
  const auto six = run_json({"groupoid", "check", "6"});
  CHECK(six["schemaVersion"] == 1);
  CHECK(six["status"] == "failsAt");
  std::vector<std::uint32_t> witness;
  for (const auto &v : six["witness"])
    witness.push_back(v.get<std::uint32_t>() - 1);
  CHECK(replays_to_failure(cyclic_braiding(6), witness, six["failingVertex"].get<std::uint32_t>() - 1));

  const auto four = run_json({"groupoid", "check", "4"});
  CHECK(four["status"] == "exists");
  CHECK(four["objects"] == 6);
}

TEST_CASE("hilbert reports") {
  const auto h = run_json({"nichols", "hilbert", "--group", "2", "1", "2", "--max-degree", "4"});
  CHECK(h["perDegree"] == Json::array({1, 4, 8, 12, 14}));
  const auto cmp = run_json({"hilbert", "compare", "--group", "2", "1", "2", "--max-degree", "5"});
  CHECK(cmp["divergence"] == 4);
  const auto fk = run_json({"fk", "hilbert", "--group", "5", "5", "2", "--max-degree", "3"});
  CHECK(fk["perDegree"] == Json::array({1, 5, 16, 45}));
}

TEST_CASE("other subcommands produce reports") {
  CHECK(run_json({"group", "info", "4", "2", "3"})["reflections"] == 15);
  CHECK(run_json({"yd", "decompose", "2", "2", "2"})["summandCount"] == 2);
  CHECK(run_json({"pbw", "dim", "4"})["dimension"] == 256);
  const auto subs = run_json({"subsystems", "6", "--max-rank", "2"});
  CHECK(subs["records"].size() == 3);
  const auto sweep = run_json({"groupoid", "sweep", "--max", "12"});
  CHECK(sweep["entries"].size() == 11);
}

TEST_CASE("JSON reports round-trip byte for byte") {
  for (const auto &args : std::vector<std::vector<std::string>>{
           {"groupoid", "check", "6"},
           {"groupoid", "sweep", "--max", "20"},
           {"subsystems", "10", "--max-rank", "2"},
           {"group", "info", "3", "3", "2"},
           {"yd", "decompose", "4", "2", "2"},
           {"nichols", "hilbert", "--cyclic", "4", "--max-degree", "3"},
           {"pbw", "dim", "8", "--subset", "1", "4"}}) {
    auto a = args;
    a.insert(a.end(), {"--format", "json"});
    const auto o = run(a);
    REQUIRE(o.code == 0);
    auto text = o.out;
    if (!text.empty() && text.back() == '\n')
      text.pop_back();
    CHECK(Json::parse(text).dump(2) == text);
  }
}

TEST_CASE("parallel and sequential runs agree") {
  for (const auto &args : std::vector<std::vector<std::string>>{
           {"groupoid", "sweep", "--max", "40"},
           {"subsystems", "12", "--max-rank", "3"},
           {"nichols", "hilbert", "--group", "2", "1", "2", "--max-degree", "5"}}) {
    auto seq = args, par = args;
    seq.insert(seq.end(), {"--jobs", "1"});
    par.insert(par.end(), {"--jobs", "3"});
    const auto a = run(seq), b = run(par);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("table and csv formats") {
  const auto table = run({"groupoid", "sweep", "--max", "8", "--format", "table"});
  CHECK(table.code == 0);
  CHECK(table.out.find("exists") != std::string::npos);
  const auto csv = run({"groupoid", "sweep", "--max", "8", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.find(',') != std::string::npos);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / ("fkn_cli_" + std::to_string(test::seed()) + ".json");
  const auto o = run({"pbw", "dim", "3", "--format", "json", "--output", path.string()});
  CHECK(o.code == 0);
  std::ifstream in(path);
  const auto j = Json::parse(in);
  CHECK(j["dimension"] == 9);
  std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
  CHECK(run({"pbw", "dim", "4"}).code == cli::kExitOk);
  CHECK(run({"group", "info", "4", "3", "2"}).code == cli::kExitDomain);
  CHECK(run({"pbw", "dim", "5", "--subset", "1", "1"}).code == cli::kExitDomain);
  CHECK(run({"nichols", "hilbert", "--group", "2", "1", "2", "--max-degree", "12"}).code == cli::kExitResource);
  const auto bad = run({"bogus"});
  CHECK(bad.code == cli::kExitUsage);
  CHECK_FALSE(bad.err.empty());
  CHECK(run({"pbw", "dim", "4", "--no-such-flag"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);
}
