#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RADPOLY_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fixture(const char* name) { return std::string(RADPOLY_FIXTURES) + "/" + name; }

nlohmann::ordered_json parse(const Run& r) { return nlohmann::ordered_json::parse(r.out); }

std::filesystem::path scratch(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / "radpoly_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("basis") {
  const auto line = run("basis --input " + fixture("line3.json"));
  CHECK(line.status == 0);
  CHECK(parse(line)["kappas"] == nlohmann::ordered_json::parse("[0,1,2]"));
  const auto grid = run("basis --input " + fixture("grid4.json"));
  CHECK(parse(grid)["kappas"] == nlohmann::ordered_json::parse("[0,1,1,2]"));
  CHECK(run("basis --input " + fixture("duplicate.json")).status == 2);
}

TEST_CASE("interp") {
  const auto grid = parse(run("interp --method both --input " + fixture("grid4.json")));
  CHECK(grid["difference_text"] == "0");
  CHECK(grid["schaback"]["interpolant_text"] == "x1*x2");
  const auto skew = parse(run("interp --method both --input " + fixture("skew4.json")));
  CHECK(skew["difference_text"] == "0");
  CHECK(skew["least"]["interpolant_text"] == "x1");
  const auto sep = parse(run("interp --method both --input " + fixture("skew4_separating.json")));
  CHECK(sep["difference_text"] != "0");
  for (const char* m : {"schaback", "least"})
    CHECK(parse(run(std::string("interp --method ") + m + " --input " + fixture("two_points.json")))["interpolant_text"] == "x1");
  const auto der = parse(run("interp --input " + fixture("derivatives.json")));
  CHECK(der["interpolant_text"] == "1 + x1^2");
}

TEST_CASE("interp then eval reproduces the data") {
  const auto report = scratch("collinear_report.json");
  REQUIRE(run("interp --method both --input " + fixture("collinear3.json") + " --output " + report.string()).status == 0);
  for (const char* m : {"schaback", "least"}) {
    const auto vals = parse(run("eval --input " + report.string() + " --method " + m + " --at 0,0 --at 1,1 --at 2,2"));
    CHECK(vals["values"][0]["value"] == "1");
    CHECK(vals["values"][1]["value"] == "1/2");
    CHECK(vals["values"][2]["value"] == "-3");
  }
  const auto grid = scratch("grid_report.json");
  REQUIRE(run("interp --input " + fixture("grid4.json") + " --output " + grid.string()).status == 0);
  const auto vals = parse(run("eval --input " + grid.string() + " --points " + fixture("query.json") + " --precision 3"));
  CHECK(vals["values"][0]["value"] == "1/4");
  CHECK(vals["values"][0]["decimal"] == "0.250");
  CHECK(vals["values"][3]["value"] == "-6");
}

TEST_CASE("eval of a bare polynomial") {
  const auto f = scratch("poly.json");
  std::ofstream(f) << R"({"d":1,"terms":[{"alpha":[0],"coeff":"7"},{"alpha":[1],"coeff":"-12"},{"alpha":[2],"coeff":"6"}]})";
  CHECK(parse(run("eval --input " + f.string() + " --at 1"))["values"][0]["value"] == "1");
  CHECK(run("eval --input " + f.string()).status == 1);
  CHECK(run("eval --input " + f.string() + " --at 1,2").status == 1);
}

TEST_CASE("expand") {
  const auto e = parse(run("expand --k 1 --d 1"));
  CHECK(e["term_count"] == 3);
  CHECK(e["text"] == "x1^2 - 2*x1*y1 + y1^2");
  CHECK(e["oracle_match"] == true);
  CHECK(parse(run("expand --k 2 --d 1"))["oracle_match"] == true);
  const auto e22 = parse(run("expand --k 2 --d 2"));
  CHECK(e22["term_count"] == 10);
  CHECK(e22["oracle_match"] == true);
  CHECK(run("expand --k 9 --d 1").status == 1);
}

TEST_CASE("verify") {
  const auto m = run("verify --suite micchelli --seed 1 --trials 100");
  CHECK(m.status == 0);
  CHECK(parse(m)["reports"][0]["failure_count"] == 0);
  const auto p = run("verify --suite projector --seed 1 --trials 50");
  CHECK(p.status == 0);
  CHECK(run("verify --suite all --seed 3 --trials 20").status == 0);
  const auto bad = run("verify --suite all --seed 1 --trials 10 --inject-fault");
  CHECK(bad.status == 3);
  for (const auto& r : parse(bad)["reports"]) CHECK(r["failure_count"].get<int>() > 0);
  CHECK(run("verify --suite micchelli --seed 9 --trials 15").out == run("verify --suite micchelli --seed 9 --trials 15").out);
}

TEST_CASE("compare") {
  const auto skew = parse(run("compare --input " + fixture("skew4.json")));
  CHECK(skew["ranges_equal"] == false);
  CHECK(skew["norm_moments"][0] == "2");
  const auto grid = parse(run("compare --input " + fixture("grid4.json")));
  CHECK(grid["interpolants_equal"] == true);
  CHECK(grid["norm_moments"][0] == "0");
  CHECK(run("compare --input " + fixture("derivatives.json")).status == 1);
}

TEST_CASE("exit status contract") {
  CHECK(run("").status == 1);
  CHECK(run("frobnicate").status == 1);
  CHECK(run("basis").status == 1);
  CHECK(run("basis --input /nonexistent/file.json").status == 1);
  CHECK(run("basis --input " + fixture("malformed.json")).status == 1);
  CHECK(run("interp --method cubic --input " + fixture("line3.json")).status == 1);
  CHECK(run("basis --input " + fixture("duplicate.json")).status == 2);
  CHECK(run("basis --input " + fixture("line3.json") + " --help").status == 0);
}

TEST_CASE("degree cap from the environment") {
  const std::string cmd = "basis --input " + fixture("collinear3.json");
  CHECK(run(cmd).status == 0);
  const int raw = system((std::string("RADPOLY_MAX_DEGREE=1 ") + RADPOLY_CLI + " " + cmd + " >/dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(raw) == 2);
  const int garbage = system((std::string("RADPOLY_MAX_DEGREE=abc ") + RADPOLY_CLI + " " + cmd + " >/dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(garbage) == 1);
}
