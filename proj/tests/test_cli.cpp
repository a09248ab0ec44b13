#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "iep/cli.hpp"
#include "iep/poly.hpp"

namespace {

using iep::cli::run;
namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Proc {
  int status = -1;
  std::string out;
};

// Runs the installed binary through the shell; stderr is discarded.
Proc run_binary(const std::string& args) {
  Proc p;
  const std::string cmd = std::string(IEP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return p;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), pipe)) > 0;) p.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  p.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return p;
}

TEST(Cli, HeightJson) {
  const auto out = run({"height", "5", "7", "3", "--json"});
  EXPECT_EQ(out.exit_code, 0);
  const auto j = nlohmann::json::parse(out.rendered);
  EXPECT_EQ(j["height"], 2);
  // Canonical order for display.
  EXPECT_EQ(j["p"], 3);
  EXPECT_EQ(j["r"], 7);
}

TEST(Cli, HeightText) {
  const auto out = run({"height", "11", "13", "4"});
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_NE(out.rendered.find("A{4,11,13} = 3"), std::string::npos) << out.rendered;
}

TEST(Cli, CoprimalityViolationIsUsageError) {
  const auto out = run({"coeffs", "3", "5", "6"});
  EXPECT_EQ(out.exit_code, 2);
  EXPECT_NE(out.diagnostics.find("coprime"), std::string::npos);
}

TEST(Cli, ParseErrors) {
  EXPECT_EQ(run({}).exit_code, 2);
  EXPECT_EQ(run({"height", "5", "7"}).exit_code, 2);
  EXPECT_EQ(run({"height", "5", "7", "x"}).exit_code, 2);
  EXPECT_EQ(run({"frobnicate"}).exit_code, 2);
  EXPECT_EQ(run({"coeffs", "3", "5", "7", "--engine", "fft"}).exit_code, 2);
  EXPECT_EQ(run({"search", "eq13", "--s", "1", "--max", "5", "--out", "a", "--resume", "b"}).exit_code, 2);
  const auto help = run({"--help"});
  EXPECT_EQ(help.exit_code, 0);
  EXPECT_NE(help.rendered.find("repro-paper"), std::string::npos);
  EXPECT_EQ(run({"--version"}).rendered, "0.1.0\n");
}

TEST(Cli, NegativeNumbersReachValidation) {
  const auto out = run({"height", "-3", "5", "7"});
  EXPECT_EQ(out.exit_code, 2);
  EXPECT_NE(out.diagnostics.find("below 1"), std::string::npos) << out.diagnostics;
}

TEST(Cli, CoeffsFormats) {
  const auto text = run({"coeffs", "7", "3", "5"});
  EXPECT_EQ(text.exit_code, 0);
  EXPECT_EQ(text.rendered.substr(0, 30), "Q{3,5,7}  degree 48  engine se");
  const auto json = run({"coeffs", "3", "5", "7", "--format", "json", "--engine", "chi"});
  const auto j = nlohmann::json::parse(json.rendered);
  EXPECT_EQ(j["engine"], "chi");
  EXPECT_EQ(j["coeffs"].size(), 49u);
  const auto bin = run({"coeffs", "3", "5", "7", "--format", "bin", "--half"});
  std::stringstream ss(bin.rendered);
  EXPECT_EQ(iep::read_coefficients_binary(ss).coeffs, iep::coeffs_series({3, 5, 7}).coeffs);
}

TEST(Cli, CoeffsToFile) {
  const auto path = fs::temp_directory_path() / "iep_cli_coeffs.csv";
  const auto out = run({"coeffs", "3", "5", "8", "--format", "csv", "--out", path.string()});
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_TRUE(out.rendered.empty());
  std::ifstream in(path);
  EXPECT_EQ(iep::read_coefficients_csv(in).degree, 56);
  fs::remove(path);
}

TEST(Cli, BothEnginesAgree) {
  const auto out = run({"coeffs", "7", "11", "13", "--engine", "both"});
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_NE(out.diagnostics.find("agree"), std::string::npos);
  EXPECT_EQ(run({"coeffs", "3", "5", "1", "--engine", "both"}).exit_code, 2);  // chi needs ternary
}

TEST(Cli, DegreeCap) {
  const auto out = run({"--degree-cap", "10", "coeffs", "3", "5", "7"});
  EXPECT_EQ(out.exit_code, 3);
  EXPECT_NE(out.diagnostics.find("exceeds cap 10"), std::string::npos);
  EXPECT_EQ(run({"--degree-cap", "48", "height", "3", "5", "7"}).exit_code, 0);
}

TEST(Cli, Verify) {
  EXPECT_EQ(run({"verify", "main", "3", "5", "2", "17"}).exit_code, 0);
  EXPECT_EQ(run({"verify", "corollary", "13", "43", "5", "564"}).exit_code, 0);
  EXPECT_EQ(run({"verify", "eq1.5", "3", "5", "17", "32"}).exit_code, 0);
  EXPECT_EQ(run({"verify", "eq1.6", "3", "5", "8", "7", "--sign", "opposite"}).exit_code, 0);
  EXPECT_EQ(run({"verify", "eq1.6", "3", "5", "7", "8", "--sign", "same"}).exit_code, 2);
  EXPECT_EQ(run({"verify", "iterated", "3", "5", "-"}).exit_code, 0);
  EXPECT_EQ(run({"verify", "iterated", "3", "5", "-1"}).exit_code, 0);
  EXPECT_EQ(run({"verify", "eq1.11", "7", "11", "13"}).exit_code, 0);
  const auto lemma = run({"verify", "lemma6", "3", "5", "17", "--s", "2"});
  EXPECT_EQ(lemma.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(lemma.rendered)["values"]["mode"], "exhaustive");
  const auto sampled = run({"verify", "lemma10", "7", "16", "115", "--samples", "500", "--seed", "4"});
  EXPECT_EQ(nlohmann::json::parse(sampled.rendered)["seed"], 4);
  EXPECT_EQ(run({"verify", "lemma8", "3", "5", "17"}).exit_code, 2);
  EXPECT_EQ(run({"verify", "lemma6", "3", "5", "7"}).exit_code, 2);
  EXPECT_EQ(run({"verify", "main", "3", "5", "2"}).exit_code, 2);
}

TEST(Cli, SearchSolutionList) {
  const auto out = run({"search", "eq13", "--s", "2", "--p-max", "5", "--q-max", "10", "--json", "--workers", "2"});
  EXPECT_EQ(out.exit_code, 0);
  const auto j = nlohmann::json::parse(out.rendered);
  bool found = false;
  for (const auto& sol : j["solutions"]) found |= sol["p"] == 3 && sol["q"] == 5;
  EXPECT_TRUE(found);
  const auto text = run({"search", "eq14", "--s", "3", "--max", "16"});
  EXPECT_NE(text.rendered.find("(7, 16)"), std::string::npos) << text.rendered;
  EXPECT_EQ(run({"search", "height-sweep", "--max", "9"}).exit_code, 2);  // needs --out
}

TEST(Cli, SearchResumeMatchesFreshRun) {
  const auto dir = fs::temp_directory_path() / "iep_cli_search";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto a = (dir / "a.jsonl").string(), b = (dir / "b.jsonl").string();
  EXPECT_EQ(run({"search", "height-sweep", "--max", "13", "--out", a, "--workers", "1"}).exit_code, 0);
  EXPECT_EQ(run({"search", "height-sweep", "--max", "13", "--out", b, "--stop-after", "7"}).exit_code, 0);
  const auto resumed = run({"search", "height-sweep", "--max", "13", "--resume", b, "--json", "--workers", "3"});
  EXPECT_EQ(resumed.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(resumed.rendered)["resumed"], 7);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(run({"search", "height-sweep", "--max", "14", "--resume", b}).exit_code, 2);
  fs::remove_all(dir);
}

TEST(Cli, ReproPaperGolden) {
  const auto out = run({"repro-paper", "--json"});
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.rendered, slurp(std::string(IEP_GOLDEN_DIR) + "/repro_paper.json"));
  const auto j = nlohmann::json::parse(out.rendered);
  EXPECT_GE(j["checks"].size(), 8u);
  EXPECT_EQ(j["passed"], true);
}

TEST(Cli, HeightJsonGolden) {
  std::string joined;
  for (const auto& t : std::vector<std::vector<std::string>>{{"5", "7", "3"}, {"3", "5", "1"}, {"13", "43", "564"}}) {
    std::vector<std::string> args{"height"};
    args.insert(args.end(), t.begin(), t.end());
    args.push_back("--json");
    joined += run(args).rendered;
  }
  EXPECT_EQ(joined, slurp(std::string(IEP_GOLDEN_DIR) + "/height.jsonl"));
}

TEST(CliBinary, ExitCodesAndStreams) {
  const auto ok = run_binary("height 5 7 3 --json");
  EXPECT_EQ(ok.status, 0);
  EXPECT_NE(ok.out.find("\"height\":2"), std::string::npos);
  EXPECT_EQ(run_binary("coeffs 3 5 6").status, 2);
  EXPECT_EQ(run_binary("--degree-cap 5 height 3 5 7").status, 3);
  const auto repro = run_binary("repro-paper");
  EXPECT_EQ(repro.status, 0);
  EXPECT_NE(repro.out.find("0 failed"), std::string::npos);
  const auto bin = run_binary("coeffs 3 5 7 --format bin");
  EXPECT_EQ(bin.out.substr(0, 4), "IEPC");
  EXPECT_EQ(bin.out.size(), 48u + 49u * 8u);
}

}  // namespace
