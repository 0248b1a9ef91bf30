#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "linksched/cli.hpp"
#include "linksched/errors.hpp"
#include "linksched/report.hpp"
#include "linksched/topogen.hpp"

using namespace linksched;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "linksched");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "linksched_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("csv header is fixed") {
  CHECK(csv_header() == "mode,instance,policy,lambda,seed,slots,warmup,avg_total_queue,evac_time,delta0,min_dep_ratio");
  CsvRow r;
  r.mode = "evacuation";
  r.instance = "x";
  r.policy = "nsb";
  r.evac_time = 4;
  r.delta0 = 4;
  CHECK(format_csv_row(r) == "evacuation,x,nsb,,,,,,4,4,");
}

TEST_CASE("lambda and seed lists") {
  CHECK(parse_lambda_list("0.05,0.1") == std::vector<double>{0.05, 0.1});
  const auto range = parse_lambda_list("0.05:0.24:0.01");
  CHECK(range.size() == 20);
  CHECK(range.front() == 0.05);
  CHECK(range.back() == doctest::Approx(0.24));
  CHECK_THROWS_AS(parse_lambda_list("0"), UsageError);
  CHECK_THROWS_AS(parse_lambda_list("0.2,0.1"), UsageError);
  CHECK_THROWS_AS(parse_lambda_list("abc"), UsageError);
  CHECK(parse_seed_list("1-3,7") == std::vector<std::uint64_t>{1, 2, 3, 7});
  CHECK_THROWS_AS(parse_seed_list("x"), UsageError);
  CHECK_THROWS_AS(parse_seed_list("3-1"), UsageError);
}

TEST_CASE("config documents") {
  ExperimentConfig cfg;
  apply_config_json(cfg, R"({"instance": {"generator": "grid", "rows": 4, "cols": 4},
                              "policies": ["nsb", "mwm"],
                              "traffic": {"kind": "file", "p": 0.2, "lambdas": [0.1, 0.2]},
                              "slots": 1000, "warmup": 100, "seeds": [4, 5], "threads": 2})");
  REQUIRE(cfg.instance.has_value());
  CHECK(cfg.instance->label() == "grid4x4");
  CHECK(cfg.policies == std::vector<Policy>{Policy::nsb, Policy::mwm});
  CHECK(cfg.traffic == TrafficKind::file);
  CHECK(cfg.file_probability == 0.2);
  CHECK(cfg.lambdas == std::vector<double>{0.1, 0.2});
  CHECK(cfg.slots == 1000);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{4, 5});
  CHECK_THROWS_AS(apply_config_json(cfg, R"({"slot": 3})"), UsageError);
  CHECK_THROWS_AS(apply_config_json(cfg, R"({"policies": []})"), UsageError);
  CHECK_THROWS_AS(apply_config_json(cfg, "{"), ParseError);
}

TEST_CASE("evacuate prints a table row") {
  const Result r = cli({"evacuate", "--fig9", "100", "--policies", "nsb,mwm"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("fig9-100") != std::string::npos);
  CHECK(r.out.find("evacuation,fig9-100,nsb,,,,,,101,101,") != std::string::npos);
  CHECK(r.out.find("evacuation,fig9-100,mwm,,,,,,199,101,") != std::string::npos);
}

TEST_CASE("evacuate reads instance and DIMACS files") {
  const auto inst = scratch("tri.txt");
  std::ofstream(inst) << "3 3\n0 1 1\n1 2 1\n0 2 1\n";
  const Result a = cli({"evacuate", "--instance", inst.string(), "--policies", "nsb"});
  CHECK(a.code == kExitOk);
  CHECK(a.out.find("evacuation,tri,nsb,,,,,,3,2,") != std::string::npos);

  const auto col = scratch("small.col");
  std::ofstream(col) << "c tiny\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n";
  const Result b = cli({"evacuate", "--dimacs", col.string(), "--policies", "nsb,mm"});
  CHECK(b.code == kExitOk);
  CHECK(b.out.find("evacuation,small,mm,,,,,,2,2,") != std::string::npos);

  const auto bad = scratch("bad.col");
  std::ofstream(bad) << "p edge 2 1\ne 1 9\n";
  const Result c = cli({"evacuate", "--dimacs", bad.string()});
  CHECK(c.code == kExitUsage);
  CHECK(c.err.find("line 2") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({"evacuate", "--fig9", "3", "--policies", ""}).code == kExitUsage);
  CHECK(cli({"evacuate", "--fig9", "3", "--policies", "nsb,xyz"}).code == kExitUsage);
  CHECK(cli({"evacuate"}).code == kExitUsage);
  CHECK(cli({"evacuate", "--fig9", "3", "--grid", "4x4"}).code == kExitUsage);
  CHECK(cli({"evacuate", "--grid", "4x4"}).code == kExitUsage);  // needs --max-y
  CHECK(cli({"evacuate", "--instance", "/nonexistent/file"}).code == kExitUsage);
  CHECK(cli({"throughput", "--grid", "4x4", "--lambdas", "0"}).code == kExitUsage);
  CHECK(cli({"throughput", "--grid", "4x4", "--lambdas", "0.1", "--slots", "10", "--warmup", "10"}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
  CHECK(cli({"validate", "--suite", "nope"}).code == kExitUsage);
}

TEST_CASE("throughput sweep row count and determinism") {
  const auto out1 = scratch("sweep1.csv");
  const auto out2 = scratch("sweep2.csv");
  const std::vector<std::string> args = {"throughput", "--grid", "4x4", "--lambdas", "0.05:0.24:0.01", "--seeds", "1-10",
                                         "--slots", "60", "--warmup", "20"};
  auto a1 = args;
  a1.insert(a1.end(), {"--out", out1.string(), "--threads", "3"});
  auto a2 = args;
  a2.insert(a2.end(), {"--out", out2.string(), "--threads", "1"});
  REQUIRE(cli(a1).code == kExitOk);
  REQUIRE(cli(a2).code == kExitOk);
  const std::string csv = slurp(out1);
  CHECK(csv == slurp(out2));
  // 6 policies x 20 rates x 10 seeds, plus one summary per (policy, rate), plus the header
  CHECK(count_lines(csv) == 1 + 6 * 20 * 10 + 6 * 20);
  CHECK(csv.find("throughput,grid4x4,nsb,0.05,mean,60,20,") != std::string::npos);
}

TEST_CASE("output directory from the environment") {
  const auto dir = scratch("outdir");
  std::filesystem::remove_all(dir);
  ::setenv("LINKSCHED_OUT_DIR", dir.string().c_str(), 1);
  const Result r = cli({"evacuate", "--fig9", "3", "--policies", "nsb"});
  ::unsetenv("LINKSCHED_OUT_DIR");
  CHECK(r.code == kExitOk);
  CHECK(std::filesystem::exists(dir / "evacuation_fig9-3.csv"));
}

TEST_CASE("config file drives a throughput run; flags override") {
  const auto cfg = scratch("cfg.json");
  std::ofstream(cfg) << R"({"instance": {"generator": "grid", "rows": 3, "cols": 3},
                            "policies": ["nsb"], "traffic": {"kind": "zipf", "lambdas": [0.1]},
                            "slots": 200, "warmup": 100, "seeds": [1]})";
  const Result r = cli({"throughput", "--config", cfg.string(), "--policies", "mm,gmm"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("throughput,grid3x3,mm,0.1,1,200,100,") != std::string::npos);
  CHECK(r.out.find(",nsb,") == std::string::npos);
}

TEST_CASE("validate routes suites and detects a faulty NSB") {
  const Result one = cli({"validate", "--suite", "prop1", "--count", "100"});
  CHECK(one.code == kExitOk);
  CHECK(one.out.find("prop1") != std::string::npos);
  CHECK(one.out.find("oracle") == std::string::npos);
  CHECK(one.out.find("PASS") != std::string::npos);

  const auto replay = scratch("replay");
  std::filesystem::remove_all(replay);
  const Result bad = cli({"validate", "--suite", "prop1", "--count", "100", "--inject-faulty-nsb", "--replay-dir",
                          replay.string()});
  CHECK(bad.code == kExitValidation);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  // the replay file is a loadable instance
  const std::string text = slurp(replay / "prop1_0.txt");
  CHECK_NOTHROW(parse_instance(text));
}
