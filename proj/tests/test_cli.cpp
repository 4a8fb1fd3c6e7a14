#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

using coulombium::cli::run_cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "coulombium_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::vector<std::string> kSmall = {"--L", "20", "--N", "2001"};

std::vector<std::string> with_small(std::vector<std::string> a) {
  a.insert(a.end(), kSmall.begin(), kSmall.end());
  return a;
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"solve", "--z", "abc"}).code == 1);
  CHECK(run({"solve", "--method", "newton"}).code == 1);
  CHECK(run(with_small({"solve", "--N", "2000"})).code == 1);
  CHECK(run({"scan", "--z-list", ""}).code == 1);
  CHECK(run({"verify", "nope"}).code == 1);
  CHECK(run({"solve", "--config", "/nonexistent.ini"}).code == 1);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("solve") != std::string::npos);
}

TEST_CASE("solve writes a JSON document") {
  const Run r = run(with_small({"solve", "--z", "2", "--method", "both"}));
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["charge_ratio"] == 2.0);
  CHECK(doc["config"]["grid"]["N"] == 2001);
  REQUIRE(doc["results"].size() == 2);
  for (const auto& res : doc["results"]) {
    CHECK(res["status"] == "ok");
    CHECK(res["converged"] == true);
    CHECK(res["table"]["x"].size() == 2001);
  }
  CHECK(doc["energy_difference"].get<double>() < 1e-8);
}

TEST_CASE("subcritical charge") {
  const Run refused = run(with_small({"solve", "--z", "0.5"}));
  CHECK(refused.code == 1);
  CHECK(refused.err.find("subcritical") != std::string::npos);
  const Run forced = run(with_small({"solve", "--z", "0.5", "--allow-subcritical"}));
  CHECK(forced.code == 3);
}

TEST_CASE("iteration cap exits with 2") {
  CHECK(run(with_small({"solve", "--z", "2", "--max-iter", "2"})).code == 2);
}

TEST_CASE("output is deterministic") {
  const auto args = with_small({"solve", "--z", "1.5", "--method", "gd", "--initial-guess", "random",
                                "--seed", "7", "--format", "csv"});
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("# schema", 0) == 0);
  CHECK(a.out.find("method,x,u,density,potential") != std::string::npos);
}

TEST_CASE("csv trace file next to the output") {
  const fs::path out = scratch("solve.csv");
  fs::remove(fs::path(out.string() + ".trace.csv"));
  const Run r = run(with_small({"solve", "--z", "2", "--format", "csv", "--out", out.string()}));
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(read_file(out).find("scf,0,") != std::string::npos);
  CHECK(fs::exists(out.string() + ".trace.csv"));
}

TEST_CASE("scan rows") {
  const Run r = run(with_small({"scan", "--z-list", "2,1.5,2"}));
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  }
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "z,E,epsilon,kinetic,coulomb,moment1,iterations,status");
  CHECK(rows[1] == rows[3]);
  CHECK(rows[1] != rows[2]);
}

TEST_CASE("config file with flag overrides") {
  const fs::path ini = scratch("run.ini");
  write_file(ini,
             "[background]\nz = 1.5\n[grid]\nL = 20\nN = 2001\n[solver]\nmethod = gd\n"
             "[output]\nformat = json\n");
  const Run from_file = run({"solve", "--config", ini.string()});
  REQUIRE(from_file.code == 0);
  auto doc = nlohmann::json::parse(from_file.out);
  CHECK(doc["charge_ratio"] == 1.5);
  CHECK(doc["results"][0]["method"] == "gd");

  const Run overridden = run({"solve", "--config", ini.string(), "--z", "3"});
  REQUIRE(overridden.code == 0);
  doc = nlohmann::json::parse(overridden.out);
  CHECK(doc["charge_ratio"] == 3.0);

  write_file(ini, "[solver]\nbogus = 1\n");
  CHECK(run({"solve", "--config", ini.string()}).code == 1);
  write_file(ini, "[nowhere]\nz = 1\n");
  CHECK(run({"solve", "--config", ini.string()}).code == 1);
}

TEST_CASE("verify output") {
  const Run j = run({"verify", "innerprod", "--seed", "5"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["report"]["passed"] == true);
  const Run c = run({"verify", "delta", "--format", "csv"});
  CHECK(c.code == 0);
  CHECK(c.out.find("check,measured,threshold,passed,detail") != std::string::npos);
}

TEST_CASE("installed binary maps exit codes") {
  const std::string bin = COULOMBIUM_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status("solve --z 2 --L 20 --N 2001") == 0);
  CHECK(status("solve --z 0.5 --L 20 --N 2001") == 1);
  CHECK(status("solve --z 0.5 --L 20 --N 2001 --allow-subcritical") == 3);
  CHECK(status("--version") == 0);
}
