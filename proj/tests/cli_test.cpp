#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "besselcert/cli.hpp"
#include "besselcert/kernels.hpp"

namespace besselcert {
namespace {

struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "besselcert");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST(CliTest, ZeroJson) {
  const Outcome r = invoke({"zero", "--nu", "1.5", "--n", "1", "--format", "json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["command"], "zero");
  EXPECT_TRUE(doc.contains("config"));
  EXPECT_TRUE(doc["violations"].empty());
  EXPECT_NEAR(doc["results"][0]["value"].get<double>(), 4.493409457, 1e-8);
}

TEST(CliTest, ScanGlobalLogConcavity) {
  const Outcome r = invoke({"scan", "--target", "I-prime", "--nu", "-0.75", "--lo", "0.01", "--hi", "30", "--points",
                            "64", "--format", "json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["violations"].empty());
  EXPECT_EQ(doc["results"].size(), 64u);
}

TEST(CliTest, CorputBatch) {
  const Outcome r =
      invoke({"corput", "--family", "K", "--nu", "1.5", "--pairs", "100", "--seed", "7", "--format", "json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["results"].size(), 100u);
  for (const auto& row : doc["results"]) EXPECT_EQ(row["holds"], true);
  EXPECT_EQ(doc["config"]["seed"], 7);
}

TEST(CliTest, ViolationExitsTwo) {
  // Past x_nu the I-kernel derivative is log-convex, so expecting concavity must fail.
  const Outcome r = invoke({"scan", "--target", "I-prime", "--nu", "1", "--lo", "0.01", "--hi", "40", "--format", "json"});
  EXPECT_EQ(r.status, kExitViolation);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["violations"].empty());
  const Outcome convex = invoke({"scan", "--target", "I-prime", "--nu", "1", "--lo", "5", "--hi", "40", "--expect",
                                 "positive"});
  EXPECT_EQ(convex.status, kExitOk) << convex.err;
}

TEST(CliTest, UsageAndDomainErrorsExitOne) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"bogus"}, {"zero", "--nu", "abc"}, {"zero", "--nu", "-1.5"},
        {"scan", "--target", "nope", "--nu", "1"}, {"eval", "--family", "K", "--nu", "-1", "--x", "1"},
        {"scan", "--target", "I", "--nu", "0", "--points", "8"}, {"eval", "--family", "I", "--nu", "0", "--x", "41"},
        {"zero", "--nu", "0.5", "--format", "xml"}}) {
    const Outcome r = invoke(args);
    EXPECT_EQ(r.status, kExitUsage) << args[0] << " " << (args.size() > 1 ? args[1] : "");
    EXPECT_FALSE(r.err.empty());
    EXPECT_TRUE(r.out.empty()) << r.out;
  }
}

TEST(CliTest, HelpExitsZero) {
  const Outcome r = invoke({"--help"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out.find("corput"), std::string::npos);
}

TEST(CliTest, CsvHeaders) {
  const Outcome scan = invoke({"scan", "--target", "I", "--nu", "0", "--lo", "0.01", "--hi", "2", "--points", "16",
                               "--format", "csv"});
  ASSERT_EQ(scan.status, kExitOk) << scan.err;
  EXPECT_EQ(scan.out.substr(0, scan.out.find('\n')), "x,d2,certified,sign_change_after");
  EXPECT_EQ(count_lines(scan.out), 17u);

  const Outcome corput = invoke({"corput", "--family", "trig", "--pairs", "5", "--format", "csv"});
  ASSERT_EQ(corput.status, kExitOk) << corput.err;
  EXPECT_EQ(corput.out.substr(0, corput.out.find('\n')), "family,nu_or_alpha,a,b,lhs,rhs,margin,holds,domain_ok");
  EXPECT_EQ(count_lines(corput.out), 6u);
}

TEST(CliTest, CsvRoundTripsValues) {
  const Outcome r = invoke({"eval", "--family", "I", "--nu", "0.5", "--x", "1", "--format", "csv"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  const std::string value = row.substr(row.find(',') + 1, row.find(',', row.find(',') + 1) - row.find(',') - 1);
  EXPECT_EQ(std::stod(value), eval_normalized(Family::I, 0.5, 1.0, 0).value);
}

TEST(CliTest, DeterministicOutput) {
  for (const char* format : {"json", "csv"}) {
    const std::vector<std::string> args{"corput", "--family", "J", "--pairs", "50", "--seed", "99", "--format",
                                        format};
    const Outcome first = invoke(args);
    const Outcome second = invoke(args);
    ASSERT_EQ(first.status, kExitOk) << first.err;
    EXPECT_EQ(first.out, second.out) << format;
    const Outcome other = invoke({"corput", "--family", "J", "--pairs", "50", "--seed", "100", "--format", format});
    EXPECT_NE(first.out, other.out) << format;
  }
}

TEST(CliTest, OutputFile) {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "besselcert_cli_test.json";
  std::filesystem::remove(path);
  const Outcome r = invoke({"zero", "--nu", "0.5", "--count", "3", "--format", "json", "--output", path.string()});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc["results"].size(), 3u);
  std::filesystem::remove(path);
}

TEST(CliTest, RunDrivesConfigDirectly) {
  RunConfig config;
  config.command = Command::Critical;
  config.kind = CriticalKind::ZNu;
  config.nu = -0.6;
  config.format = OutputFormat::Json;
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(run(config, out, err), kExitOk) << err.str();
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_NEAR(doc["results"][0]["value"].get<double>(), 2.417083, 1e-6);
}

TEST(CliTest, EvalGridAndRatio) {
  const Outcome e = invoke({"eval", "--family", "J", "--nu", "-0.5", "--lo", "0.1", "--hi", "1.5", "--points", "16",
                            "--format", "json"});
  ASSERT_EQ(e.status, kExitOk) << e.err;
  const auto doc = nlohmann::json::parse(e.out);
  for (const auto& row : doc["results"]) {
    EXPECT_NEAR(row["value"].get<double>(), std::cos(row["x"].get<double>()), 1e-13);
  }
  const Outcome r = invoke({"ratio", "--nu", "0.5", "--x", "1", "--format", "json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["results"][0]["Q"].get<double>(), 1.0 / std::tanh(1.0), 1e-12);
}

}  // namespace
}  // namespace besselcert
