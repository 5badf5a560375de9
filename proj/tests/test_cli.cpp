#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <Eigen/SVD>
#include <json.hpp>

#ifndef NEHARI_CLI_PATH
#error "NEHARI_CLI_PATH must name the nehari_cli binary"
#endif

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct Invocation {
  int status = -1;
  std::string out;
};

Invocation run(const std::string& args) {
  const std::string cmd = std::string(NEHARI_CLI_PATH) + " " + args + " 2>/dev/null";
  Invocation r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

json run_json(const std::string& args) {
  const Invocation r = run(args);
  EXPECT_EQ(r.status, 0) << args;
  return json::parse(r.out);
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "nehari_cli_test";
  fs::create_directories(d);
  return d / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

/// Largest singular value of the Hankel matrix of e^{-ix} + e^{-iy} on [0, N]^2,
/// assembled entry by entry: row (c1, c2) with a negative entry, column (a, b).
double direct_norm(int N) {
  const int M = N + 1;
  std::vector<std::pair<int, int>> rows;
  for (int c1 = -M; c1 <= M; ++c1)
    for (int c2 = -M; c2 <= M; ++c2)
      if (c1 < 0 || c2 < 0) rows.emplace_back(c1, c2);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), (N + 1) * (N + 1));
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (int a = 0; a <= N; ++a)
      for (int b = 0; b <= N; ++b) {
        const int d1 = rows[j].first - a, d2 = rows[j].second - b;
        if ((d1 == -1 && d2 == 0) || (d1 == 0 && d2 == -1)) A(static_cast<Eigen::Index>(j), a * (N + 1) + b) = 1.0;
      }
  return Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues()(0);
}

TEST(Cli, HankelNormMatchesDirectAssembly) {
  const json j = run_json("hankel-norm --symbol \"exp(-ix)+exp(-iy)\" --N 16");
  EXPECT_NEAR(j["values"]["s0"].get<double>(), direct_norm(16), 1e-10);
}

TEST(Cli, EnvelopeEchoesConfigAndSeed) {
  const json j = run_json("--seed 7 hankel-norm --symbol \"exp(-ix)\" --N 4");
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["subcommand"], "hankel-norm");
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["config"]["N"], 4);
  EXPECT_EQ(j["config"]["symbol"], "exp(-ix)");
  EXPECT_EQ(j["config"]["seed"], 7);
  EXPECT_TRUE(j.contains("version"));
  EXPECT_TRUE(j.contains("wall_time"));
  EXPECT_TRUE(j.contains("diagnostics"));
  // A single anti-analytic monomial has norm 1 on any box.
  EXPECT_NEAR(j["values"]["s0"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, DeterministicValues) {
  const std::string args = "--seed 3 sigma-table --symbol \"exp(-ix) + 0.5 exp(-iy)\" --N 4 --mmax 1 --nmax 0 "
                           "--restarts 2 --arm 0";
  EXPECT_EQ(run_json(args)["values"].dump(), run_json(args)["values"].dump());
}

TEST(Cli, ConfigFileRoundTrip) {
  const fs::path cfg = scratch("run.json");
  write_file(cfg, R"json({"subcommand": "singular", "symbol": "exp(-ix) + exp(-2iy)", "N": 6, "count": 3})json");
  const json a = run_json("--config " + cfg.string());
  const json b = run_json("singular --symbol \"exp(-ix) + exp(-2iy)\" --N 6 --count 3");
  EXPECT_EQ(a["values"].dump(), b["values"].dump());
  // The echoed config reproduces the run.
  const fs::path echo = scratch("echo.json");
  write_file(echo, a["config"].dump());
  EXPECT_EQ(run_json("--config " + echo.string())["values"].dump(), a["values"].dump());
  // Flags after the file override it.
  EXPECT_EQ(run_json("--config " + cfg.string() + " --count 2")["values"]["singular_values"].size(), 2u);
}

TEST(Cli, CsvTable) {
  const fs::path csv = scratch("sv.csv");
  run_json("--csv " + csv.string() + " singular --symbol \"exp(-ix)\" --N 3 --count 4");
  std::ifstream f(csv);
  std::string line;
  std::getline(f, line);
  EXPECT_EQ(line, "n,s_n");
  int rows = 0;
  while (std::getline(f, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("no-such-command").status, 1);
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("hankel-norm --symbol \"exp(x)\"").status, 2);
  EXPECT_EQ(run("hankel-norm --symbol \"exp(-ix)\" --N -3").status, 2);
  EXPECT_EQ(run("carleson --atoms /nonexistent/atoms.csv").status, 2);
  EXPECT_EQ(run("hankel-norm --symbol \"exp(-ix)\" --config x.json").status, 2);
  EXPECT_EQ(run("--max-iter 1 nehari-1d --symbol \"exp(-ix) + 0.3 exp(-3ix)\"").status, 3);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, HelpDocumentsTheGrammar) {
  const Invocation r = run("--help");
  EXPECT_NE(r.out.find("B_x"), std::string::npos);
  EXPECT_NE(r.out.find("conj"), std::string::npos);
  EXPECT_NE(r.out.find("verify-all"), std::string::npos);
}

TEST(Cli, CarlesonSingleAtomAtTheOrigin) {
  // K_{00} holds f(0, y) + f(x, 0) - f(0, 0), which lies in every box,
  // so C = sqrt(mu) exactly.
  const fs::path atoms = scratch("atoms.csv");
  write_file(atoms, "re z,im z,re zeta,im zeta,mu\n0,0,0,0,0.25\n");
  const json j = run_json("carleson --atoms " + atoms.string() + " --N 4");
  EXPECT_NEAR(j["values"]["C"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j["values"]["vector_hankel_norm"].get<double>(), 0.5, 1e-12);
}

TEST(Cli, ModelProjectAtTheOrigin) {
  // P_{00}(1 + e^{i(x+y)}) = 1.
  const json j = run_json("model-project --f \"1 + exp(ix + iy)\" --z 0 --zeta 0 --N 4");
  EXPECT_NEAR(j["values"]["norm_truncated"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(j["values"]["norm_closed"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, Pick1dAndWeight) {
  const json p = run_json("pick-1d --zeros 0.5 0.3i --G \"0.5 + 0.2 exp(ix)\"");
  EXPECT_TRUE(p["values"]["psd"].get<bool>());
  EXPECT_TRUE(p["values"]["agree"].get<bool>());
  const json w = run_json("hs-weight --weight 1 --N 2");
  EXPECT_NEAR(w["values"]["M"].get<double>(), 1.0, 1e-9);
}

TEST(Cli, VerifyAllSubset) {
  const Invocation r = run("verify-all --quick --only 1");
  EXPECT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["values"]["1"]["holds"].get<bool>());
}

}  // namespace
