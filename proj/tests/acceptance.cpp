// Acceptance run: one line per numbered criterion, exit status 0 iff all pass.
#include "gc3/verify/suites.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>

using namespace gc3;

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  SuiteOptions opt;
  opt.table.mc.samples = 10'000'000;
  opt.jobs = default_jobs();
  std::string cache_file;
  app.add_option("--samples", opt.table.mc.samples, "samples per table integral")->capture_default_str();
  app.add_option("--seed", opt.table.mc.seed, "base seed")->capture_default_str();
  app.add_option("--jobs", opt.jobs, "worker threads")->capture_default_str();
  app.add_option("--cache", cache_file, "integral cache file");
  app.add_flag("--stretch", opt.stretch, "also attempt c3 = -5*10!");
  CLI11_PARSE(app, argc, argv);

  std::unique_ptr<IntegralCache> cache;
  if (!cache_file.empty()) cache = std::make_unique<IntegralCache>(cache_file);
  opt.cache = cache.get();
  SuiteContext ctx(opt);

  std::size_t failed = 0;
  auto report = run_suite("all", ctx, [&](int criterion, const Check& c) {
    if (c.status == CheckStatus::fail) ++failed;
    std::string label = criterion ? "criterion " + std::to_string(criterion) : std::string("stretch");
    std::cout << std::left << std::setw(13) << label << std::setw(5)
              << (c.status == CheckStatus::pass ? "PASS" : c.status == CheckStatus::fail ? "FAIL" : "SKIP") << ' '
              << c.id << ": expected " << c.expected << "; observed " << c.observed << " (" << c.tolerance << ", "
              << std::fixed << std::setprecision(1) << c.seconds << "s)" << std::endl;
    std::cout.unsetf(std::ios::fixed);
  });
  std::cout << (failed ? "FAILED " : "all criteria passed ") << std::fixed << std::setprecision(1) << report.seconds
            << "s" << std::endl;
  return failed ? 1 : 0;
}
