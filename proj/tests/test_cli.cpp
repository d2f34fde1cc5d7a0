#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
  const char* env = std::getenv("SOBIM_CLI");
  REQUIRE_MESSAGE(env != nullptr, "SOBIM_CLI must point at the sobim binary");
  return env;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("sobim_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const fs::path& cwd, const std::string& args) {
  const std::string cmd = "cd '" + cwd.string() + "' && '" + cli_path() + "' " + args +
                          " >cli_stdout.log 2>cli_stderr.log";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE_MESSAGE(in.good(), "missing file: " << p.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

// CSV body with the trailing timing columns removed from every row.
std::string strip_timing(const std::string& csv, int timing_cols = 3) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    for (int c = 0; c < timing_cols; ++c) {
      const auto pos = line.rfind(',');
      REQUIRE(pos != std::string::npos);
      line.resize(pos);
    }
    out << line << "\n";
  }
  return out.str();
}

const std::string kPath5 = "0 1\n1 2\n2 3\n3 4\n";

}  // namespace

TEST_CASE("gen is deterministic per seed") {
  auto dir = fresh_dir("gen");
  CHECK(run_cli(dir, "gen er --n 50 --avg-deg 6 --w-lo 0.2 --w-hi 0.8 --seed 9 --out a.txt") == 0);
  CHECK(run_cli(dir, "gen er --n 50 --avg-deg 6 --w-lo 0.2 --w-hi 0.8 --seed 9 --out b.txt") == 0);
  CHECK(run_cli(dir, "gen er --n 50 --avg-deg 6 --w-lo 0.2 --w-hi 0.8 --seed 10 --out c.txt") == 0);
  CHECK(slurp(dir / "a.txt") == slurp(dir / "b.txt"));
  CHECK(slurp(dir / "a.txt") != slurp(dir / "c.txt"));
  CHECK(run_cli(dir, "gen ws --n 30 --ring-deg 4 --rewire 0.2 --seed 3 --out w.txt") == 0);
  CHECK(slurp(dir / "w.txt").find("0.") != std::string::npos);
}

TEST_CASE("select writes the expected seed file") {
  auto dir = fresh_dir("select");
  write_file(dir / "path.txt", kPath5);
  CHECK(run_cli(dir, "select --graph path.txt --heuristic deg --k 2 --out seeds.txt") == 0);
  CHECK(slurp(dir / "seeds.txt") == "1 3\n");
}

TEST_CASE("select with k > n exits with a data error") {
  auto dir = fresh_dir("select_big_k");
  write_file(dir / "path.txt", kPath5);
  CHECK(run_cli(dir, "select --graph path.txt --heuristic deg --k 9") == 2);
}

TEST_CASE("usage errors exit with code 1") {
  auto dir = fresh_dir("usage");
  CHECK(run_cli(dir, "select --no-such-flag") == 1);
  CHECK(run_cli(dir, "") == 1);
  CHECK(run_cli(dir, "--help") == 0);
}

TEST_CASE("missing graph file exits with a data error") {
  auto dir = fresh_dir("missing");
  CHECK(run_cli(dir, "select --graph nope.txt --heuristic deg --k 1") == 2);
}

TEST_CASE("decompose on an injected AND table reproduces the closed-form values") {
  auto dir = fresh_dir("decompose_and");
  write_file(dir / "and.csv",
             "mask,mean,std,rounds\n00,0,0,0\n10,0,0,1\n01,0,0,1\n11,1,0,1\n");
  CHECK(run_cli(dir, "decompose --table-file and.csv --max-order 2 --out-dir out") == 0);
  json report = load_json(dir / "out/report.json");
  CHECK(report["first_order"][0]["index"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-9));
  CHECK(report["first_order"][1]["index"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-9));
  CHECK(report["total"][0]["index"].get<double>() == doctest::Approx(2.0 / 3).epsilon(1e-9));
  REQUIRE(report["higher_order"].size() == 1);
  CHECK(report["higher_order"][0]["index"].get<double>() ==
        doctest::Approx(1.0 / 3).epsilon(1e-9));
  CHECK(report["higher_order"][0]["mask"] == "11");
  CHECK(std::abs(report["closure_residual"].get<double>()) < 1e-9);
  // The table round-trips through the output directory.
  CHECK(run_cli(dir, "decompose --table-file out/table.csv --max-order 2 --out-dir out2") == 0);
  json again = load_json(dir / "out2/report.json");
  CHECK(again["var_y"].get<double>() == report["var_y"].get<double>());
}

TEST_CASE("decompose on a constant table reports numerical degeneracy") {
  auto dir = fresh_dir("decompose_flat");
  write_file(dir / "flat.csv", "mask,mean,std,rounds\n00,0,0,0\n10,0,0,1\n01,0,0,1\n11,0,0,1\n");
  CHECK(run_cli(dir, "decompose --table-file flat.csv --out-dir out") == 3);
}

TEST_CASE("decompose simulates when given a graph and seeds") {
  auto dir = fresh_dir("decompose_sim");
  write_file(dir / "star.txt", "0 1 0.5\n0 2 0.5\n0 3 0.5\n0 4 0.5\n");
  CHECK(run_cli(dir,
                "decompose --graph star.txt --seeds 0 --rounds 300 --seed 2 --out-dir out") == 0);
  json report = load_json(dir / "out/report.json");
  CHECK(report["first_order"][0]["index"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(report["total"][0]["index"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sim on a zero-weight graph flags the fallback and still selects") {
  auto dir = fresh_dir("sim_flat");
  write_file(dir / "flat.txt", "0 1 0\n1 2 0\n2 3 0\n3 4 0\n4 5 0\n5 6 0\n6 7 0\n");
  CHECK(run_cli(dir, "sim --graph flat.txt --k 2 --a 2 --rounds 20 --seed 5 --out-dir out") == 0);
  json trace = load_json(dir / "out/trace.json");
  REQUIRE(trace["iterations"].size() == 2);
  for (const auto& iter : trace["iterations"]) CHECK(iter["degenerate_fallback"] == true);
  CHECK(trace["selected"].size() == 2);
  CHECK(slurp(dir / "out/seeds.txt").size() > 1);
}

TEST_CASE("bench outputs are byte-stable modulo timing columns") {
  auto dir = fresh_dir("bench_det");
  const std::string common =
      "bench --gen er --gen-n 60 --gen-avg-deg 6 --gen-w-lo 0.1 --gen-w-hi 0.3 "
      "--heuristics deg,dd --k 2 --a 2 --r-select 40 --r-eval 100 --seed 11 --dump-raw";
  CHECK(run_cli(dir, common + " --out-dir run1") == 0);
  CHECK(run_cli(dir, common + " --out-dir run2") == 0);
  const std::string a = slurp(dir / "run1/bench.csv");
  const std::string b = slurp(dir / "run2/bench.csv");
  CHECK(strip_timing(a) == strip_timing(b));
  CHECK(slurp(dir / "run1/raw.csv") == slurp(dir / "run2/raw.csv"));

  // Every emitted mean is recomputable from the raw per-round sizes.
  json report = load_json(dir / "run1/report.json");
  std::istringstream raw(slurp(dir / "run1/raw.csv"));
  std::string line;
  std::getline(raw, line);  // header
  double sum = 0.0;
  int count = 0;
  while (std::getline(raw, line)) {
    if (line.rfind("deg,wo,", 0) == 0) {
      sum += std::stod(line.substr(line.rfind(',') + 1));
      ++count;
    }
  }
  REQUIRE(count == 100);
  for (const auto& row : report["rows"]) {
    if (row["heuristic"] == "deg" && row["variant"] == "wo")
      CHECK(row["mean"].get<double>() == doctest::Approx(sum / count).epsilon(1e-9));
  }
}

TEST_CASE("bench on a zero-weight graph gives exact means") {
  auto dir = fresh_dir("bench_flat");
  write_file(dir / "flat.txt", "0 1 0\n1 2 0\n2 3 0\n3 4 0\n4 5 0\n5 6 0\n6 7 0\n");
  CHECK(run_cli(dir, "bench --graph flat.txt --heuristics deg,sigma --k 2 --a 2 "
                     "--r-select 10 --r-eval 50 --seed 1 --out-dir out") == 0);
  std::istringstream csv(slurp(dir / "out/bench.csv"));
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::istringstream ls(line);
    std::string field;
    for (int c = 0; c < 5; ++c) std::getline(ls, field, ',');
    CHECK(std::stod(field) == 2.0);  // mean column
  }
  CHECK(rows == 4);
}

TEST_CASE("case study reports interactions with distances") {
  auto dir = fresh_dir("case_study");
  // Two disjoint triangles: the cross pair is unreachable and non-interacting.
  write_file(dir / "two.txt", "0 1 0.5\n1 2 0.5\n0 2 0.5\n3 4 0.5\n4 5 0.5\n3 5 0.5\n");
  CHECK(run_cli(dir, "case-study --graph two.txt --seeds 0 3 --rounds 2000 --r-eval 500 "
                     "--seed 7 --out-dir out") == 0);
  json report = load_json(dir / "out/report.json");
  REQUIRE(report["pairs"].size() == 1);
  CHECK(report["pairs"][0]["distance"].is_null());
  CHECK(std::abs(report["pairs"][0]["interaction"].get<double>()) < 0.05);
  CHECK(report["seeds"].size() == 2);
  CHECK(report.contains("rank_correlation"));
  CHECK(fs::exists(dir / "out/table.csv"));
}

TEST_CASE("config file values apply and flags override them") {
  auto dir = fresh_dir("config");
  write_file(dir / "path.txt", kPath5);
  write_file(dir / "cfg.ini",
             "[select]\ngraph = path.txt\nheuristic = deg\nk = 2\nout = from_config.txt\n");
  CHECK(run_cli(dir, "--config cfg.ini select") == 0);
  CHECK(slurp(dir / "from_config.txt") == "1 3\n");
  CHECK(run_cli(dir, "--config cfg.ini select --k 1 --out override.txt") == 0);
  CHECK(slurp(dir / "override.txt") == "1\n");
}
