#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "nehari/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite: one PASS/FAIL line per criterion."};
  nehari::SuiteOptions opt;
  std::vector<int> only;
  std::string json_out;
  app.add_flag("--quick", opt.quick, "smaller samples, same tolerances");
  app.add_option("--seed", opt.seed, "master seed");
  app.add_option("--only", only, "criterion ids to run")->check(CLI::Range(1, 13));
  app.add_option("--json", json_out, "write the results envelope here");
  CLI11_PARSE(app, argc, argv);
  opt.only.insert(only.begin(), only.end());

  const auto t0 = std::chrono::steady_clock::now();
  const auto results = nehari::run_suite(opt, [](const nehari::CriterionResult& r) {
    std::printf("%s\n", nehari::format_line(r).c_str());
    std::fflush(stdout);
  });
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::printf("%zu criteria, %d failed\n", results.size(), failed);

  if (!json_out.empty()) {
    nehari::json diag = nehari::json::object();
    for (const auto& r : results) diag[std::to_string(r.id)] = r.diagnostics;
    const nehari::json env = nehari::envelope("acceptance", {{"quick", opt.quick}, {"only", only}}, opt.seed,
                                              nehari::values_of(results), diag,
                                              nehari::detail::seconds_since(t0));
    std::ofstream(json_out) << env.dump(2) << "\n";
  }
  return failed == 0 ? 0 : 1;
}
