#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "polybox/cli.hpp"

using namespace polybox::cli;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Compares against tests/golden/<name>; POLYBOX_UPDATE_GOLDEN=1 rewrites the file instead.
void expect_golden(const std::string& name, const std::string& actual) {
  const std::filesystem::path path = std::filesystem::path(POLYBOX_GOLDEN_DIR) / name;
  if (std::getenv("POLYBOX_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  ASSERT_TRUE(std::filesystem::exists(path)) << path;
  EXPECT_EQ(read_file(path), actual) << name;
}

std::string stripped_json(const std::string& text) { return strip_timestamp(json::parse(text)).dump(2) + "\n"; }

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("polybox_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// One invocation per leaf command.
const std::vector<std::vector<std::string>>& sample_invocations() {
  static const std::vector<std::vector<std::string>> v = {
      {"count-box", "--q", "3", "--curve", "Y^2-X^3-(T)*X-(1)", "--n", "2"},
      {"exponent-scan", "--q", "2", "--curve", "Y-X^2", "--n-range", "1..10"},
      {"residue-stats", "--q", "2", "--curve", "Y-X^2", "--n", "5", "--f", "T^2+T+1"},
      {"detlab", "ord", "--q", "2", "--omega", "3", "--points", "0,0;T,0;0,1", "--f", "T"},
      {"detlab", "mean-identity", "--q", "3", "--omega", "3", "--points", "0,0;T,0;0,1;1,T", "--f", "T"},
      {"detlab", "interpolate", "--q", "3", "--d", "2", "--curve", "Y-X^2", "--n", "2"},
      {"detlab", "wcurve-max", "--q", "2", "--d", "1", "--M", "1", "--curve", "Y-X^2", "--n", "2"},
      {"ec", "nlambda", "--q", "2", "--lambda", "1", "--f-deg", "9", "--n", "1", "--seed", "3"},
      {"ec", "census", "--q", "3", "--f", "T^2+1", "--n", "1"},
      {"ec", "scan19", "--q", "2", "--n", "1", "--f-deg", "18", "--seed", "7"},
      {"ec", "pigeonhole", "--q", "2", "--f", "T^2+T+1", "--xs", "T;T", "--taus", "2,1"},
      {"ec", "extremal", "--q", "2", "--n", "6"},
  };
  return v;
}

std::vector<std::string> with(std::vector<std::string> args, std::initializer_list<std::string> extra) {
  args.insert(args.end(), extra);
  return args;
}

}  // namespace

TEST(CliGolden, ExponentScanCsv) {
  const CliRun r = run({"exponent-scan", "--q", "2", "--curve", "Y-X^2", "--n-range", "1..10", "--out", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\n4,32,8,0.6\n"), std::string::npos);
  expect_golden("exponent_scan.csv", r.out);
}

TEST(CliGolden, DetlabOrdJson) {
  const CliRun r = run({"detlab", "ord", "--q", "2", "--omega", "3", "--points", "0,0;T,0;0,1", "--f", "T", "--out", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["result"]["pass"].get<bool>());
  expect_golden("detlab_ord.json", stripped_json(r.out));
}

TEST(CliGolden, Scan19Csv) {
  const CliRun r = run({"ec", "scan19", "--q", "2", "--n", "1", "--f-deg", "18", "--seed", "7", "--out", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  expect_golden("ec_scan19.csv", r.out);
}

TEST(CliGolden, PigeonholeJson) {
  const CliRun r = run({"ec", "pigeonhole", "--q", "2", "--f", "T^2+T+1", "--xs", "T;T", "--taus", "2,1", "--out", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["result"]["t"], "T+1");
  expect_golden("ec_pigeonhole.json", stripped_json(r.out));
}

TEST(Cli, EveryCommandReplaysByteIdentically) {
  for (const auto& args : sample_invocations()) {
    for (const char* mode : {"json", "csv"}) {
      const CliRun first = run(with(args, {"--out", mode}));
      ASSERT_EQ(first.code, 0) << args[0] << " " << first.err;
      const CliRun again = run(with(args, {"--out", mode, "--jobs", "3"}));
      ASSERT_EQ(again.code, 0);
      if (std::string(mode) == "csv") {
        EXPECT_EQ(first.out, again.out);
        EXPECT_EQ(first.out.substr(0, first.out.find('\n')).find(','), first.out.find(',')) << "header row";
      } else {
        EXPECT_EQ(stripped_json(first.out), stripped_json(again.out));
        const Report replayed = replay(json::parse(first.out));
        EXPECT_EQ(strip_timestamp(replayed.json).dump(2) + "\n", stripped_json(first.out));
      }
    }
  }
}

TEST(Cli, ReplaySubcommandFromFile) {
  const auto dir = fresh_dir("replay");
  const CliRun first = run({"ec", "census", "--q", "3", "--f", "T^2+1", "--n", "1", "--out-dir", dir.string()});
  ASSERT_EQ(first.code, 0) << first.err;
  std::istringstream paths(first.out);
  std::string csv_path, json_path;
  std::getline(paths, csv_path);
  std::getline(paths, json_path);
  const CliRun rcsv = run({"replay", json_path, "--out", "csv"});
  ASSERT_EQ(rcsv.code, 0) << rcsv.err;
  EXPECT_EQ(rcsv.out, read_file(csv_path));
  const CliRun rjson = run({"replay", json_path, "--out", "json"});
  EXPECT_EQ(stripped_json(rjson.out), stripped_json(read_file(json_path)));
}

TEST(Cli, WritesBothFilesNamedByManifestHash) {
  const auto dir = fresh_dir("files");
  const CliRun r = run({"ec", "extremal", "--q", "2", "--n", "6", "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(dir)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  ASSERT_EQ(names.size(), 2u);
  const json report = json::parse(read_file(dir / names[1]));
  const std::string stem = "ec-extremal-" + manifest_hash(report["manifest"]);
  EXPECT_EQ(names[0], stem + ".csv");
  EXPECT_EQ(names[1], stem + ".json");
  EXPECT_EQ(read_file(dir / names[0]), "n,size_I,count,closed_form\n6,128,8,8\n");
}

TEST(Cli, ExitCodes) {
  const CliRun unknown = run({"count-box", "--q", "2", "--bogus", "1"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"ec"}).code, 2);

  const CliRun parse = run({"count-box", "--q", "2", "--curve", "X^2+*Y", "--n", "1"});
  EXPECT_EQ(parse.code, 2);
  const json e = json::parse(parse.err.substr(0, parse.err.find('\n')));
  EXPECT_EQ(e["error"]["kind"], "parse");
  EXPECT_EQ(e["error"]["offset"], 4);

  const CliRun domain = run({"residue-stats", "--q", "2", "--curve", "Y-X^2", "--n", "2", "--f", "T^2+1"});
  EXPECT_EQ(domain.code, 2);

  const CliRun budget = run({"detlab", "ord", "--q", "2", "--omega", "3", "--points", "0,0;T,0;0,1", "--f", "T",
                          "--budget", "10", "--out", "json"});
  EXPECT_EQ(budget.code, 3);
  const json b = json::parse(budget.err);
  EXPECT_EQ(b["error"]["required"], 27);

  // Outside the theorem range the ratio bound need not hold.
  const CliRun viol = run({"ec", "scan19", "--q", "3", "--n", "2", "--f", "T", "--force", "--out", "json"});
  EXPECT_EQ(viol.code, 1);
  EXPECT_FALSE(json::parse(viol.out)["result"]["pass"].get<bool>());
  EXPECT_EQ(run({"ec", "scan19", "--q", "3", "--n", "2", "--f", "T", "--out", "json"}).code, 2);

  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, MissingAndConflictingFlags) {
  EXPECT_EQ(run({"count-box", "--curve", "Y", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"count-box", "--q", "6", "--curve", "Y", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"ec", "census", "--q", "3", "--f", "T", "--f-deg", "2", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"exponent-scan", "--q", "2", "--curve", "Y", "--n-range", "5..1"}).code, 2);
  EXPECT_THROW(execute("count-box", {{"q", "2"}, {"curve", "Y"}, {"n", "1"}, {"lambda", "1"}}), std::exception);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("POLYBOX_SEED", "42", 1);
  const CliRun r = run({"ec", "census", "--q", "2", "--f-deg", "5", "--n", "1", "--out", "json"});
  ::unsetenv("POLYBOX_SEED");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["manifest"]["params"]["seed"], "42");
  const CliRun explicit_seed = run({"ec", "census", "--q", "2", "--f-deg", "5", "--n", "1", "--seed", "42", "--out", "json"});
  EXPECT_EQ(stripped_json(r.out), stripped_json(explicit_seed.out));
}

TEST(Cli, ExtensionFields) {
  const CliRun r = run({"count-box", "--q", "2", "--ext-k", "2", "--curve", "Y-X^2", "--n", "1", "--out", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["manifest"]["field"]["q"], 4);
  EXPECT_EQ(j["manifest"]["field"]["modulus"].size(), 3u);
  EXPECT_EQ(j["result"]["count"], 4);  // q^{floor(n/2)+1}

  const auto dir = fresh_dir("modulus");
  const auto cfg = dir / "f9.json";
  std::ofstream(cfg) << R"({"modulus": [1, 0, 1]})";
  const CliRun m = run({"count-box", "--q", "3", "--modulus", cfg.string(), "--curve", "Y-X^2", "--n", "1", "--out", "json"});
  ASSERT_EQ(m.code, 0) << m.err;
  const json jm = json::parse(m.out);
  EXPECT_EQ(jm["manifest"]["field"]["modulus"], json::array({1, 0, 1}));
  EXPECT_EQ(jm["result"]["count"], 9);
  EXPECT_EQ(run({"count-box", "--q", "4", "--ext-k", "2", "--curve", "Y", "--n", "1"}).code, 2);
}

TEST(Cli, SmallCoefficientModel) {
  const CliRun r = run({"ec", "pigeonhole", "--q", "2", "--f", "T^5+T^2+1", "--lambda", "1", "--n", "0", "--out", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out)["result"];
  EXPECT_EQ(j["t"], "1");
  EXPECT_TRUE(j["model"]["bounds_hold"].get<bool>());
  // Taus that sum to (s-1)m fail the precondition.
  EXPECT_EQ(run({"ec", "pigeonhole", "--q", "2", "--f", "T^2+T+1", "--xs", "T;T", "--taus", "1,1"}).code, 2);
}
