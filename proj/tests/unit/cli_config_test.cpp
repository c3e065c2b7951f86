#include <gtest/gtest.h>

#include <sstream>

#include "config.hpp"
#include "csv.hpp"
#include "scenarios.hpp"

namespace sllm::cli {
namespace {

RawConfig parse(const std::string& text) {
  std::istringstream in(text);
  return RawConfig::parse(in);
}

const std::vector<KeySpec> kKeys = {{"x", KeyType::number, "1.5"},
                                    {"n", KeyType::integer, "3"},
                                    {"name", KeyType::text, "abc"},
                                    {"grid", KeyType::number_list, ""},
                                    {"ks", KeyType::integer_list, "0,1"}};

TEST(CliConfig, ParsesCommentsAndWhitespace) {
  const auto raw = parse("# header\n\n x = 2.5   # trailing\nname=hello world\n");
  ASSERT_EQ(raw.entries.size(), 2u);
  EXPECT_EQ(raw.entries.at("x").value, "2.5");
  EXPECT_EQ(raw.entries.at("x").line, 3);
  EXPECT_EQ(raw.entries.at("name").value, "hello world");
}

TEST(CliConfig, ResolvesDefaultsAndTypes) {
  const auto s = Settings::resolve(parse("n = 7\ngrid = 0.5:0.25:1.5, 3\n"), kKeys);
  EXPECT_DOUBLE_EQ(s.number("x"), 1.5);
  EXPECT_EQ(s.integer("n"), 7);
  EXPECT_EQ(s.text("name"), "abc");
  const auto grid = s.numbers("grid");
  ASSERT_EQ(grid.size(), 6u);
  EXPECT_DOUBLE_EQ(grid[4], 1.5);
  EXPECT_DOUBLE_EQ(grid[5], 3.0);
  EXPECT_EQ(s.integers("ks"), (std::vector<long long>{0, 1}));
}

TEST(CliConfig, ErrorsCarryLineAndKey) {
  try {
    (void)Settings::resolve(parse("x = 1\n\nbogus = 2\n"), kKeys);
    FAIL() << "unknown key accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.key(), "bogus");
  }
  try {
    (void)Settings::resolve(parse("n = 2.5\n"), kKeys);
    FAIL() << "fractional integer accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.key(), "n");
  }
  try {
    (void)parse("x = 1\nx = 2\n");
    FAIL() << "duplicate key accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.key(), "x");
  }
  EXPECT_THROW((void)parse("no equals sign\n"), ConfigError);
  EXPECT_THROW((void)parse(" = 3\n"), ConfigError);
}

TEST(CliConfig, RejectsMalformedNumbers) {
  for (const char* bad : {"x = 1.5abc", "x = nan", "x = inf", "x =", "grid = 1,,2",
                          "grid = 2:0.1:1", "grid = 1:0:2", "grid = 1:2"}) {
    EXPECT_THROW((void)Settings::resolve(parse(bad), kKeys), ConfigError) << bad;
  }
}

TEST(CliConfig, OverrideRespectsTypes) {
  auto s = Settings::resolve(parse(""), kKeys);
  s.override_value("x", "4");
  EXPECT_DOUBLE_EQ(s.number("x"), 4.0);
  EXPECT_THROW(s.override_value("n", "four"), ConfigError);
  EXPECT_THROW(s.override_value("missing", "1"), ConfigError);
}

TEST(CliConfig, ScenarioTablesAreComplete) {
  const std::vector<std::string> names = {"spectrum-sweep", "collapse-sweep", "steady-sweep",
                                          "hysteresis",     "trajectory",     "wigner",
                                          "pfunction",      "oracle-check"};
  ASSERT_EQ(scenarios().size(), names.size());
  for (const auto& n : names) {
    const auto& sc = find_scenario(n);
    // Defaults of every key must parse.
    EXPECT_NO_THROW((void)Settings::resolve(RawConfig{}, key_table(sc))) << n;
  }
  EXPECT_THROW((void)find_scenario("nope"), ConfigError);
}

TEST(CliConfig, SweepValidationRejectsEmptyGridBeforeRunning) {
  const auto& sc = find_scenario("spectrum-sweep");
  RunContext ctx;
  ctx.settings = Settings::resolve(RawConfig{}, key_table(sc));
  EXPECT_THROW(sc.validate(ctx), ConfigError);
  ctx.settings.override_value("A_grid", "0.75, 1.25");
  EXPECT_NO_THROW(sc.validate(ctx));
  ctx.settings.override_value("N_list", "0");
  EXPECT_THROW(sc.validate(ctx), ConfigError);
}

TEST(CliConfig, OracleCheckScenarioPasses) {
  const auto& sc = find_scenario("oracle-check");
  RunContext ctx;
  ctx.settings = Settings::resolve(parse("n_max = 6\neta = 0.2\nomega = 0.5\n"), key_table(sc));
  sc.validate(ctx);
  const auto res = sc.run(ctx);
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_TRUE(res.summary.at("pass").get<bool>());
  EXPECT_EQ(res.summary.at("full_count").get<int>(), 49);
}

TEST(CliConfig, SpectrumSweepOutputIsDeterministic) {
  const auto& sc = find_scenario("spectrum-sweep");
  RunContext ctx;
  ctx.settings = Settings::resolve(parse("A_grid = 0.75, 1.25\nN_list = 1, 10\n"), key_table(sc));
  const auto a = sc.run(ctx);
  ctx.threads = 2;
  const auto b = sc.run(ctx);
  ASSERT_EQ(a.files.size(), b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) EXPECT_EQ(a.files[i].body, b.files[i].body);
  EXPECT_EQ(a.files[0].body.substr(0, 50), "N,A_over_gamma,k,j,re_lambda,im_lambda,spurious\n1,");
}

TEST(CliCsv, SeventeenDigitsAndNoNegativeZero) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(-0.0), "0");
  CsvWriter w({"a", "b", "c", "d"});
  w.row(1.5, 2, true, "up");
  EXPECT_EQ(w.str(), "a,b,c,d\n1.5,2,1,up\n");
}

}  // namespace
}  // namespace sllm::cli
