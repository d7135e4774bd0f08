#include "helpers.hpp"
#include "synchpack/io.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace synchpack;
using namespace testutil;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(SYNCHPACK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("synchpack_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
  std::string at(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

const char* kInstanceA = R"({"machines":[1],"jobs":[{"weight":1,"tasks":[{"size":1,"proc":{"0":2}}]},
  {"weight":1,"tasks":[{"size":1,"proc":{"0":1}}]}]})";

}  // namespace

TEST_CASE("solve writes stats and a schedule that validates") {
  TempDir dir;
  std::string inst = dir.file("a.json", kInstanceA);
  Run r = run("solve " + inst + " --algo sp3 --out - --schedule " + dir.at("s.json"));
  REQUIRE(r.code == 0);
  Json stats = Json::parse(r.out);
  CHECK(stats["algorithm"] == "sp3");
  CHECK(stats["ratio"].get<double>() <= 4.0);
  CHECK(stats["objective"] == "4");
  CHECK(run("validate " + inst + " " + dir.at("s.json")).code == 0);

  for (const char* algo : {"sp1", "sp2", "psrs", "tetris-p", "tetris-np", "jsqmw"}) {
    CAPTURE(algo);
    std::string sched = dir.at(std::string(algo) + ".json");
    REQUIRE(run("solve " + inst + " --algo " + algo + " --out " + dir.at("stats.json") + " --schedule " + sched).code == 0);
    CHECK(Json::parse(slurp(dir.at("stats.json")))["algorithm"] == algo);
    CHECK(run("validate " + inst + " " + sched).code == 0);
  }
}

TEST_CASE("precondition failures exit with 2") {
  TempDir dir;
  std::string inst = dir.file("m.json", R"({"machines":[1,1],"jobs":[{"tasks":[{"size":1,"proc":{"0":1,"1":1}}]}]})");
  CHECK(run("solve " + inst + " --algo sp3").code == 2);
  CHECK(run("solve " + inst + " --algo psrs").code == 2);
  std::string bad = dir.file("bad.json", R"({"machines":[1],"jobs":[{"weight":0,"tasks":[{"size":1,"proc":{"0":1}}]}]})");
  CHECK(run("solve " + bad + " --algo sp1").code == 2);
}

TEST_CASE("validate reports violations and missing files") {
  TempDir dir;
  std::string inst = dir.file("a.json", kInstanceA);
  std::string clash = dir.file("clash.json", R"({"mode":"non-preemptive","jobs":[
    [[{"machine":0,"start":0,"end":2}]], [[{"machine":0,"start":1,"end":2}]]]})");
  Run r = run("validate " + inst + " " + clash);
  CHECK(r.code == 3);
  Json report = Json::parse(r.out);
  CHECK(report["ok"] == false);
  bool packing = false;
  for (const auto& v : report["violations"]) packing |= v["kind"] == "PackingViolation";
  CHECK(packing);
  CHECK(run("validate " + dir.at("nope.json") + " " + clash).code == 1);
  CHECK(run("validate " + inst + " " + dir.at("nope.json")).code == 1);
}

TEST_CASE("lower bounds") {
  TempDir dir;
  std::string inst = dir.file("a.json", kInstanceA);
  Run lp3 = run("lb " + inst + " --relaxation lp3");
  REQUIRE(lp3.code == 0);
  CHECK(parse_rational(lp3.out.substr(0, lp3.out.find('\n'))) == 4);

  std::string empty = dir.file("e.json", R"({"machines":[1],"jobs":[]})");
  Run e = run("lb " + empty + " --relaxation lp1");
  REQUIRE(e.code == 0);
  CHECK(e.out == "0\n");

  std::string two = dir.file("two.json", R"({"machines":[1,2],"jobs":[
    {"weight":2,"tasks":[{"size":1,"proc":{"0":2,"1":3}},{"size":1.5,"proc":{"1":1}}]},
    {"tasks":[{"size":0.5,"proc":{"0":1}}]}, {"weight":3,"tasks":[{"size":2,"proc":{"1":2}}]}]})");
  Run lp1 = run("lb " + two + " --relaxation lp1 --epsilon 1");
  Run lp2 = run("lb " + two + " --relaxation lp2 --export-lp " + dir.at("lp2.lp"));
  REQUIRE(lp1.code == 0);
  REQUIRE(lp2.code == 0);
  CHECK(parse_rational(lp2.out.substr(0, lp2.out.find('\n'))) >= parse_rational(lp1.out.substr(0, lp1.out.find('\n'))));
  CHECK(slurp(dir.at("lp2.lp")).find("Subject To") != std::string::npos);
}

TEST_CASE("bench") {
  TempDir dir;
  SUBCASE("no instances gives a header-only csv") {
    Run r = run("bench --algos sp3 --instances " + dir.at("*.json") + " --out -");
    REQUIRE(r.code == 0);
    CHECK(r.out == "instance,algo,n_jobs,n_tasks,lp_obj,obj,ratio,lambda,wall_ms\n");
  }
  SUBCASE("a seeded suite of twenty instances stays within the bound and is deterministic") {
    std::string args = "bench --algos sp3,psrs --synth 20 --seed 5 --jobs 6 --machines 3 --max-tasks 3 "
                       "--distinct-machines --weights random --out ";
    REQUIRE(run(args + dir.at("a.csv")).code == 0);
    REQUIRE(run(args + dir.at("b.csv")).code == 0);
    auto a = csv_rows(slurp(dir.at("a.csv"))), b = csv_rows(slurp(dir.at("b.csv")));
    REQUIRE(a.size() == 41);
    REQUIRE(b.size() == 41);
    for (std::size_t i = 1; i < a.size(); ++i) {
      for (std::size_t c = 0; c + 1 < a[i].size(); ++c) CHECK(a[i][c] == b[i][c]);
      if (a[i][1] == "sp3" && !a[i][6].empty()) CHECK(std::stod(a[i][6]) <= 4.0);
    }
  }
  SUBCASE("instance files are picked up by pattern") {
    dir.file("x1.json", kInstanceA);
    dir.file("x2.json", kInstanceA);
    Run r = run("bench --algos sp2,tetris-np --instances " + dir.at("x*.json") + " --out -");
    REQUIRE(r.code == 0);
    CHECK(csv_rows(r.out).size() == 5);
  }
  SUBCASE("online suite reports the weighted average delay") {
    Run r = run("bench --suite online --algos sp3 --synth 1 --jobs 10 --machines 3 --max-tasks 3 --distinct-machines "
                "--arrival-span 20 --tau0 4 --out -");
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][4].empty());
    CHECK(std::stod(rows[1][5]) > 0);
  }
}

TEST_CASE("gen writes loadable instances") {
  TempDir dir;
  REQUIRE(run("gen --jobs 5 --machines 4 --placement 2 --seed 3 --out " + dir.at("g.json")).code == 0);
  Instance g = instance_from_json(read_json_file(dir.at("g.json")));
  CHECK(g.job_count() == 5);
  std::string trace = dir.file("t.csv", "job_id,task_id,arrival_time,size,duration,priority\nj,0,1,0.5,2.5,4\n");
  REQUIRE(run("gen --trace " + trace + " --capacities 1 1 1 --local 1 --remote 1 --alpha 2 --out " + dir.at("t.json")).code == 0);
  Instance t = instance_from_json(read_json_file(dir.at("t.json")));
  CHECK(t.task({0, 0}).placement().size() == 2);
  REQUIRE(run("gen --trace " + trace + " --capacities 1,2 --out " + dir.at("c.json")).code == 0);
  CHECK(instance_from_json(read_json_file(dir.at("c.json"))).machines() == std::vector<Rational>{1, 2});
  CHECK(run("gen --trace " + dir.at("missing.csv")).code == 1);
}
