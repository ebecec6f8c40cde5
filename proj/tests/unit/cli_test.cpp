#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"

using namespace poisonlab;
using namespace poisonlab::cli;

namespace {

int run(std::vector<std::string> args, std::string& out, std::string& err) {
  args.insert(args.begin(), "poisonlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str();
  err = e.str();
  return code;
}

std::vector<ResultRow> sample_rows() {
  ResultRow a;
  a.command = "sweep";
  a.estimate = from_standard_error(0.0125, 0.001, 300, 7,
                                   {{"learner", "exp"}, {"adversary", "greedy"}, {"d", "2"}, {"eta", "1/16"},
                                    {"n", "64"}, {"bias", "0.25"}});
  a.loss = 0.2625;
  a.bayes = 0.25;
  a.bound_name = "upper";
  a.bound_value = 28.5;
  a.config_hash = "00000000deadbeef";
  ResultRow b = a;
  b.pass = false;
  b.loss.reset();
  b.bound_value.reset();
  b.bound_name.clear();
  b.error = "subset size k = 3, \"too large\"";
  return {a, b};
}

}  // namespace

TEST(ParseConfig, RunFlags) {
  const auto cfg = parse_config({"run", "--eta", "1/32", "--d", "2", "--n", "100", "--trials", "50", "--seed", "3",
                                 "--learner", "vc", "--adversary", "identity", "--threads", "2"});
  EXPECT_EQ(cfg.command, Command::Run);
  EXPECT_EQ(cfg.etas, std::vector<Fraction>{Fraction(1, 32)});
  EXPECT_EQ(cfg.dims, std::vector<std::size_t>{2});
  EXPECT_EQ(cfg.sizes, std::vector<std::size_t>{100});
  EXPECT_EQ(cfg.trials, 50u);
  EXPECT_EQ(cfg.seed, 3u);
  EXPECT_EQ(cfg.learners, std::vector<std::string>{"vc"});
  EXPECT_EQ(cfg.adversaries, std::vector<std::string>{"identity"});
  EXPECT_EQ(cfg.threads, 2u);
  EXPECT_FALSE(cfg.inject_fault);
}

TEST(ParseConfig, ListsAndDefaults) {
  const auto cfg = parse_config({"sweep", "--eta", "1/16,0.03125", "--d", "1,2", "--learner", "exp,vc"});
  EXPECT_EQ(cfg.command, Command::Sweep);
  EXPECT_EQ(cfg.etas, (std::vector<Fraction>{Fraction(1, 16), Fraction(1, 32)}));
  EXPECT_EQ(cfg.dims, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(cfg.trials, kDefaultTrials);
  EXPECT_EQ(cfg.seed, kDefaultSeed);
  EXPECT_TRUE(cfg.sizes.empty());
}

TEST(ParseConfig, RejectsOutOfRangeEta) {
  try {
    parse_config({"run", "--eta", "1.5"});
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "eta");
    EXPECT_STREQ(e.what(), "invalid value for 'eta': 1.5 is outside (0, 1)");
  }
  EXPECT_THROW(parse_config({"run", "--eta", "abc"}), ConfigError);
  EXPECT_THROW(parse_config({"run", "--d", "0"}), ConfigError);
  EXPECT_THROW(parse_config({"run", "--learner", "nope"}), ConfigError);
}

TEST(ParseConfig, FlagsOverrideFile) {
  const auto path = std::filesystem::temp_directory_path() / "poisonlab_cli_test.cfg";
  {
    std::ofstream f(path);
    f << "# comment line\neta = 1/128\nseed = 5   # trailing\ntrials = 77\n";
  }
  const auto cfg = parse_config({"run", "--config", path.string(), "--seed", "9"});
  std::filesystem::remove(path);
  EXPECT_EQ(cfg.etas, std::vector<Fraction>{Fraction(1, 128)});
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.trials, 77u);
}

TEST(ConfigText, UnknownKeyAndMalformedLine) {
  EXPECT_THROW(parse_config_text("colour = red\n"), ConfigError);
  EXPECT_THROW(parse_config_text("eta 1/16\n"), ConfigError);
  EXPECT_THROW(config_from_pairs({{"colour", "red"}}), ConfigError);
}

TEST(ConfigText, SerializeRoundTrip) {
  RunConfig cfg;
  cfg.command = Command::AttackEval;
  cfg.etas = {Fraction(1, 16), Fraction(3, 100)};
  cfg.dims = {1, 3};
  cfg.sizes = {64, 128};
  cfg.trials = 123;
  cfg.seed = 99;
  cfg.learners = {"exp", "public-majority"};
  cfg.adversaries = {"identity", "brute-force"};
  cfg.biases = {0.1, -0.3};
  cfg.out = "x.json";
  cfg.format = "json";
  cfg.threads = 4;
  cfg.inject_fault = true;
  EXPECT_EQ(config_from_pairs(parse_config_text(serialize_config(cfg))), cfg);
  EXPECT_EQ(config_from_pairs(parse_config_text(serialize_config(RunConfig{}))), RunConfig{});
}

TEST(ConfigHash, IgnoresOutputOnlyKeys) {
  RunConfig a;
  RunConfig b = a;
  b.out = "elsewhere.csv";
  b.format = "json";
  b.threads = 8;
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  b.seed = a.seed + 1;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Csv, RoundTripWithQuoting) {
  const auto rows = sample_rows();
  std::stringstream buf;
  write_csv(rows, buf);
  const auto back = read_csv(buf);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const auto fields = row_fields(rows[j]);
    for (std::size_t c = 0; c < result_columns().size(); ++c)
      EXPECT_EQ(back[j].at(result_columns()[c]), fields[c]) << result_columns()[c];
  }
  EXPECT_EQ(back[1].at("error"), "subset size k = 3, \"too large\"");
  EXPECT_EQ(back[1].at("loss"), "");
}

TEST(Json, SameContentAsCsv) {
  const auto rows = sample_rows();
  std::stringstream csv, js;
  write_csv(rows, csv);
  write_json(rows, js);
  const auto table = read_csv(csv);
  const auto doc = nlohmann::json::parse(js.str());
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), table.size());
  for (std::size_t j = 0; j < table.size(); ++j) {
    for (const auto& col : result_columns()) {
      const auto& v = doc[j].at(col);
      const std::string& text = table[j].at(col);
      if (v.is_null())
        EXPECT_EQ(text, "") << col;
      else if (v.is_boolean())
        EXPECT_EQ(text, v.get<bool>() ? "true" : "false") << col;
      else if (v.is_number_unsigned())
        EXPECT_EQ(std::stoull(text), v.get<std::uint64_t>()) << col;
      else if (v.is_number())
        EXPECT_EQ(std::stod(text), v.get<double>()) << col;
      else
        EXPECT_EQ(text, v.get<std::string>()) << col;
    }
  }
}

TEST(RunCli, BadEtaExitsWithUsageError) {
  std::string out, err;
  EXPECT_EQ(run({"run", "--eta", "1.5"}, out, err), 2);
  EXPECT_NE(err.find("invalid value for 'eta': 1.5 is outside (0, 1)"), std::string::npos);
  EXPECT_EQ(run({"frobnicate"}, out, err), 2);
}

TEST(RunCli, RunWritesOneCsvRow) {
  const auto path = std::filesystem::temp_directory_path() / "poisonlab_cli_run.csv";
  std::string out, err;
  ASSERT_EQ(run({"run", "--eta", "1/16", "--d", "1", "--trials", "200", "--learner", "majority", "--adversary",
                 "greedy", "--out", path.string()},
                out, err),
            0)
      << err;
  std::ifstream f(path);
  const auto rows = read_csv(f);
  std::filesystem::remove(path);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].at("command"), "run");
  EXPECT_EQ(rows[0].at("learner"), "majority");
  EXPECT_EQ(rows[0].at("n"), "64");
  EXPECT_EQ(rows[0].at("trials"), "200");
  EXPECT_EQ(rows[0].at("artifact_version"), kArtifactVersion);
  EXPECT_EQ(rows[0].at("error"), "");
}

TEST(RunCli, SameSeedSameBytes) {
  std::string a, b, err;
  const std::vector<std::string> args = {"sweep", "--eta", "1/16", "--d", "1,2", "--learner", "exp,vc", "--trials",
                                         "100", "--seed", "4"};
  ASSERT_EQ(run(args, a, err), 0) << err;
  ASSERT_EQ(run(args, b, err), 0) << err;
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.empty());
}

TEST(RunCli, VerifyDetectsInjectedFault) {
  std::string out, err;
  EXPECT_EQ(run({"verify"}, out, err), 0) << out;
  EXPECT_EQ(run({"verify", "--inject-fault"}, out, err), 1);
  EXPECT_NE(out.find("FAIL"), std::string::npos);
}
