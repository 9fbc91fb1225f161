#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fsp/cli.hpp"
#include "fsp/csv.hpp"
#include "fsp/efa.hpp"
#include "fsp/model.hpp"

using namespace fsp;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fsp_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t line_count(const std::string& text) {
  std::size_t lines = 0;
  for (const char c : text) {
    if (c == '\n') ++lines;
  }
  return lines;
}

}  // namespace

TEST_CASE("verify writes a four-row report and exits clean") {
  const auto dir = fresh_dir("verify");
  CHECK(cli::run({"verify", "--out", dir.string()}) == 0);
  const std::string report = read_file(dir / "verify_report.csv");
  CHECK(line_count(report) == 5);  // header + one row per check
  CHECK(report.find("exact_pairs_m2") != std::string::npos);
  CHECK(report.find("crossover_m3") != std::string::npos);
  CHECK(report.find("small_loading_limit") != std::string::npos);
  CHECK(report.find("residual_counts") != std::string::npos);
  CHECK(report.find("h_bracket=[0.759;0.76]") != std::string::npos);
  CHECK(report.find("\r") == std::string::npos);  // LF endings only
}

TEST_CASE("verify fails when the tolerance is forced below the noise") {
  const auto dir = fresh_dir("verify_fail");
  CHECK(cli::run({"verify", "--out", dir.string(), "--tolerance-override",
                  "1e-20"}) == 1);
  const std::string report = read_file(dir / "verify_report.csv");
  CHECK(report.find(",0,") != std::string::npos);  // some check marked failed
}

TEST_CASE("population sweep output is byte-stable") {
  const auto dir1 = fresh_dir("pop1");
  const auto dir2 = fresh_dir("pop2");
  const std::vector<std::string> base = {
      "population-sweep", "--sets", "1",     "--q-min", "1",   "--q-max",
      "2",                "--pf-min", "2",   "--pf-max", "3",  "--l-min",
      "0.3",              "--l-max",  "0.5", "--l-step", "0.1"};
  auto with_out = [&](const fs::path& d) {
    auto args = base;
    args.push_back("--out");
    args.push_back(d.string());
    return args;
  };
  CHECK(cli::run(with_out(dir1)) == 0);
  CHECK(cli::run(with_out(dir2)) == 0);
  const std::string a = read_file(dir1 / "population_sweep.csv");
  const std::string b = read_file(dir2 / "population_sweep.csv");
  CHECK(a == b);
  CHECK(line_count(a) == 13);  // header + 2 q x 2 per_factor x 3 loadings
  CHECK(a.find("set,q,per_factor,l,delta_r,delta_b,gap") == 0);
}

TEST_CASE("population sweep can draw the gap heatmaps") {
  const auto dir = fresh_dir("pop_svg");
  CHECK(cli::run({"population-sweep", "--out", dir.string(), "--sets", "1",
                  "--q-min", "1", "--q-max", "1", "--pf-min", "2", "--pf-max",
                  "4", "--l-min", "0.3", "--l-max", "0.7", "--l-step", "0.1",
                  "--svg"}) == 0);
  const std::string svg = read_file(dir / "population_gap_set1.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("mean salient loading") != std::string::npos);
  CHECK(svg.find("salients per factor") != std::string::npos);
}

TEST_CASE("sample sweep output does not depend on the worker count") {
  const std::vector<std::string> base = {
      "sample-sweep", "--cells", "q1-orth", "--pf-min", "3", "--pf-max", "3",
      "--l",          "0.4",     "--modes", "constant", "--n", "60",
      "--reps",       "4",       "--seed",  "99",       "--quiet"};
  const auto dir1 = fresh_dir("samp1");
  const auto dir2 = fresh_dir("samp2");
  auto with = [&](const fs::path& d, const std::string& workers) {
    auto args = base;
    args.insert(args.end(), {"--out", d.string(), "--workers", workers});
    return args;
  };
  CHECK(cli::run(with(dir1, "1")) == 0);
  CHECK(cli::run(with(dir2, "2")) == 0);
  const std::string a = read_file(dir1 / "sample_sweep.csv");
  const std::string b = read_file(dir2 / "sample_sweep.csv");
  CHECK(a == b);
  CHECK(line_count(a) == 2);
  CHECK(a.find("cell,q,oblique,per_factor,l,loading_mode,n,reps,") == 0);
  CHECK(a.find("q1-orth") != std::string::npos);
}

TEST_CASE("sample sweep rejects a single replication") {
  const auto dir = fresh_dir("samp_bad");
  CHECK(cli::run({"sample-sweep", "--out", dir.string(), "--cells", "q1-orth",
                  "--pf-min", "3", "--pf-max", "3", "--l", "0.4", "--modes",
                  "constant", "--n", "60", "--reps", "1", "--quiet"}) == 2);
  CHECK(cli::run({"sample-sweep", "--out", dir.string(), "--cells", "q0-weird",
                  "--quiet"}) == 2);
}

TEST_CASE("analyze runs the pipeline on a data file") {
  const auto dir = fresh_dir("analyze");
  const auto model =
      build_simple_structure(ModelSetSpec<double>{ModelSet::Set1, 2, 4, 0.7});
  const auto data = sample_data(model, 400, SeedTrace{4242, 0, 0});

  const fs::path csv = dir / "data.csv";
  std::vector<std::string> header;
  for (Index j = 0; j < data.p(); ++j) {
    header.push_back("v" + std::to_string(j + 1));
  }
  std::vector<std::vector<std::string>> rows;
  for (Index i = 0; i < data.n(); ++i) {
    std::vector<std::string> row;
    for (Index j = 0; j < data.p(); ++j) {
      row.push_back(format_double(data.values(i, j)));
    }
    rows.push_back(std::move(row));
  }
  write_csv(csv.string(), header, rows);

  CHECK(cli::run({"analyze", csv.string(), "--q", "2", "--out",
                  dir.string()}) == 0);
  const std::string report = read_file(dir / "analyze_report.csv");
  CHECK(line_count(report) == 2);
  CHECK(report.find("n,p,q,rotation,converged,iterations,heywood_clamped,"
                    "delta_r,delta_b,gap,chosen,recommendation") == 0);
  CHECK(report.find("varimax") != std::string::npos);
  const bool labeled = report.find("conventional") != std::string::npos ||
                       report.find("single-variable") != std::string::npos;
  CHECK(labeled);

  CHECK(cli::run({"analyze", csv.string(), "--q", "0", "--out",
                  dir.string()}) == 2);
  CHECK(cli::run({"analyze", (dir / "missing.csv").string(), "--q", "2",
                  "--out", dir.string()}) == 2);
  CHECK(cli::run({"analyze", csv.string(), "--q", "2", "--rotation", "bogus",
                  "--out", dir.string()}) == 2);
}

TEST_CASE("threshold command reports the crossover per block size") {
  const auto dir = fresh_dir("threshold");
  CHECK(cli::run({"threshold", "--out", dir.string(), "--sets", "1",
                  "--pf-min", "2", "--pf-max", "3"}) == 0);
  const std::string csv = read_file(dir / "thresholds.csv");
  CHECK(line_count(csv) == 3);
  CHECK(csv.find("set,per_factor,threshold,censored") == 0);
  CHECK(csv.find("set1,2,0.95,1") != std::string::npos);  // censored at the top
  CHECK(csv.find("set1,3,0.75,0") != std::string::npos);
}

TEST_CASE("bad invocations return a parse failure") {
  CHECK(cli::run({"no-such-command"}) != 0);
  CHECK(cli::run(std::vector<std::string>{}) != 0);  // a subcommand is required
  CHECK(cli::run({"population-sweep", "--sets", "7"}) == 2);
}

TEST_CASE("config file supplies defaults the command line can override") {
  const auto dir_ini = fresh_dir("config_ini");
  const auto dir_cli = fresh_dir("config_cli");
  const fs::path ini = dir_ini / "fsp.ini";
  {
    std::ofstream out(ini);
    out << "[threshold]\n";
    out << "out=\"" << dir_ini.string() << "\"\n";
    out << "sets=1\n";
    out << "pf-min=2\n";
    out << "pf-max=2\n";
  }
  // --out on the command line wins; pf range and sets come from the file.
  CHECK(cli::run({"--config", ini.string(), "threshold", "--out",
                  dir_cli.string()}) == 0);
  CHECK_FALSE(fs::exists(dir_ini / "thresholds.csv"));
  const std::string csv = read_file(dir_cli / "thresholds.csv");
  CHECK(line_count(csv) == 2);
  CHECK(csv.find("set1,2,0.95,1") != std::string::npos);
}
