#include "gc3/verify/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <memory>

using namespace gc3;

namespace {

struct CommonFlags {
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 1;
  std::size_t jobs = default_jobs();
  std::string format = "table";
  std::string cache;
  std::string sampler = "tropical";
};

void add_common(CLI::App* cmd, CommonFlags& f, std::uint64_t default_samples) {
  f.samples = default_samples;
  cmd->add_option("--samples", f.samples, "Monte Carlo samples per integral")->capture_default_str();
  cmd->add_option("--seed", f.seed, "base seed of the sample streams")->capture_default_str();
  cmd->add_option("--jobs", f.jobs, "worker threads")->capture_default_str();
  cmd->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--cache", f.cache, "integral cache file (JSON lines), created if missing");
  cmd->add_option("--sampler", f.sampler, "importance sampler")
      ->check(CLI::IsMember({"tropical", "dirichlet"}))
      ->capture_default_str();
}

MonteCarloOptions mc_options(const CommonFlags& f) {
  MonteCarloOptions mc;
  mc.samples = f.samples;
  mc.seed = f.seed;
  mc.jobs = f.jobs;
  mc.sampler = f.sampler == "dirichlet" ? Sampler::dirichlet : Sampler::tropical;
  return mc;
}

std::string value_string(const IntegralResult& r) {
  std::ostringstream os;
  os << std::setprecision(8) << r.value;
  if (r.method == IntegralMethod::monte_carlo) os << " ± " << std::setprecision(3) << r.std_error;
  return os.str();
}

nlohmann::json result_json(const IntegralResult& r) {
  nlohmann::json j = {{"value", r.value},
                      {"std_error", r.std_error},
                      {"method", method_name(r.method)},
                      {"samples", r.samples},
                      {"seed", r.seed}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

int table4_command(const CommonFlags& f, const std::string& graphs, const std::string& table, std::uint64_t budget) {
  std::unique_ptr<IntegralCache> cache;
  if (!f.cache.empty()) cache = std::make_unique<IntegralCache>(f.cache);
  SuiteOptions opt;
  opt.graphs_file = graphs;
  opt.table_file = table;
  opt.table.mc = mc_options(f);
  opt.table.budget = budget;
  opt.jobs = f.jobs;
  opt.cache = cache.get();
  SuiteContext ctx(opt);

  VerificationReport report{"table4", {}, 0};
  auto t0 = std::chrono::steady_clock::now();
  report.checks.push_back(timed_check("census", [&] {
    const auto& run = ctx.table_run();
    std::string obs = std::to_string(run.nonzero) + " nonzero, " + std::to_string(run.zero) + " zero of " +
                      std::to_string(run.classes);
    if (!run.unexpected_nonzero.empty()) obs += "; outside the table: " + detail::join(run.unexpected_nonzero);
    return make_check("census", run.nonzero == 45 && run.zero == 243 && run.unexpected_nonzero.empty(),
                      "45 nonzero, 243 zero of 288", obs);
  }));
  report.checks.push_back(timed_check("table_values", [&] { return check_table_rows(ctx); }));
  report.checks.push_back(timed_check("lambda_cocycles", [&] { return check_lambda_cocycles(ctx); }));
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const auto& run = ctx.table_run();
  auto status = [](const Table4Entry& e) {
    if (e.skipped) return "skipped";
    return e.within_tolerance() && e.sigma_ok() ? "ok" : "off";
  };
  if (f.format == "json") {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& e : run.rows) {
      nlohmann::json row = {{"name", e.name}, {"edges", e.edges}, {"status", status(e)}, {"s", e.s}};
      if (!e.skipped) row["result"] = result_json(e.result);
      if (e.expected) row["expected"] = *e.expected;
      j["rows"].push_back(row);
    }
    j["report"] = report.to_json();
    std::cout << j.dump(2) << '\n';
  } else if (f.format == "csv") {
    std::cout << "name,edges,value,std_error,method,expected,status\n";
    for (const auto& e : run.rows)
      std::cout << e.name << ',' << e.edges << ',' << std::setprecision(8) << e.result.value << ','
                << std::setprecision(3) << e.result.std_error << ',' << method_name(e.result.method) << ','
                << std::setprecision(8) << e.expected.value_or(0) << ',' << status(e) << '\n';
    print_report(std::cout, report, "csv");
  } else {
    std::cout << std::left << std::setw(6) << "name" << std::setw(22) << "edges" << std::setw(26) << "value"
              << std::setw(14) << "table" << "status\n";
    for (const auto& e : run.rows)
      std::cout << std::left << std::setw(6) << e.name << std::setw(22) << e.edges << std::setw(26)
                << (e.skipped ? std::string("-") : value_string(e.result)) << std::setw(14)
                << detail::fmt(e.expected.value_or(0), 8) << status(e) << '\n';
    print_report(std::cout, report, "table");
  }
  std::cerr << "new samples drawn: " << run.new_samples << '\n';
  return report.passed() ? 0 : 1;
}

int verify_command(const CommonFlags& f, const std::string& suite, SuiteOptions opt) {
  suite_includes(suite, 1);
  std::unique_ptr<IntegralCache> cache;
  if (!f.cache.empty()) cache = std::make_unique<IntegralCache>(f.cache);
  opt.table.mc = mc_options(f);
  opt.jobs = f.jobs;
  opt.cache = cache.get();
  SuiteContext ctx(opt);
  auto report = run_suite(suite, ctx);
  print_report(std::cout, report, f.format);
  return report.passed() ? 0 : 1;
}

int integrate_command(const CommonFlags& f, const std::string& graph, const std::string& omega) {
  std::unique_ptr<IntegralCache> cache;
  if (!f.cache.empty()) cache = std::make_unique<IntegralCache>(f.cache);
  OrientedGraph g = parse_adjacency(graph);
  IntegralResult r = canonical_integral(g, CanonicalFormSymbol::parse(omega), mc_options(f), cache.get());
  if (f.format == "json")
    std::cout << result_json(r).dump(2) << '\n';
  else
    std::cout << value_string(r) << " (" << method_name(r.method) << (r.reason.empty() ? "" : ", " + r.reason)
              << ")\n";
  return 0;
}

int numerator_command(const std::string& graph, const std::string& omega) {
  OrientedGraph g = parse_adjacency(graph);
  TopNumerator tn = top_numerator(g, CanonicalFormSymbol::parse(omega));
  std::cout << "Q = " << (tn.q.zero() ? std::string("0") : tn.q.to_string()) << "\ns = " << tn.s << '\n';
  return 0;
}

int boundary_command(const std::string& file) {
  Chain c = load_chain(file);
  Chain d = boundary(c);
  std::cout << (d.zero() ? std::string("0\n") : format_chain(d));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph complex GC3: homology, Pfaffian forms and canonical integrals"};
  app.require_subcommand(1);

  CommonFlags table_flags;
  std::string graphs = data_path("graphs_6_6.txt"), table = data_path("table4.tsv");
  std::uint64_t budget = 0;
  auto* t4 = app.add_subcommand("table4", "integrate the six-loop classes and compare with the shipped table");
  add_common(t4, table_flags, 10'000'000);
  t4->add_option("--graphs", graphs, "graph list file")->capture_default_str();
  t4->add_option("--table", table, "table file")->capture_default_str();
  t4->add_option("--budget", budget, "cap on newly drawn samples (0: none); rows past it are skipped");

  CommonFlags verify_flags;
  std::string suite = "all";
  SuiteOptions suite_opt;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, verify_flags, 10'000'000);
  verify->add_option("suite", suite, "complex, forms, integrals or all")
      ->check(CLI::IsMember(suite_names()))
      ->capture_default_str();
  verify->add_option("--x", suite_opt.x_file, "chain file for X")->capture_default_str();
  verify->add_option("--graphs", suite_opt.graphs_file, "graph list file")->capture_default_str();
  verify->add_option("--table", suite_opt.table_file, "table file")->capture_default_str();
  verify->add_flag("--stretch", suite_opt.stretch, "also attempt the constant c3");

  CommonFlags integrate_flags;
  std::string graph, omega = "b5";
  auto* integrate = app.add_subcommand("integrate", "canonical integral of one oriented graph");
  add_common(integrate, integrate_flags, 1'000'000);
  integrate->add_option("graph", graph, "adjacency string")->required();
  integrate->add_option("--omega", omega, "canonical form, e.g. 1, b5, b5^b9")->capture_default_str();

  std::string num_graph, num_omega = "b5";
  auto* numerator = app.add_subcommand("numerator", "top-degree numerator Q of phi^omega");
  numerator->add_option("graph", num_graph, "adjacency string")->required();
  numerator->add_option("--omega", num_omega, "canonical form")->capture_default_str();

  std::string chain_file;
  auto* bnd = app.add_subcommand("boundary", "boundary of a chain file");
  bnd->add_option("file", chain_file, "chain file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*t4) return table4_command(table_flags, graphs, table, budget);
    if (*verify) return verify_command(verify_flags, suite, suite_opt);
    if (*integrate) return integrate_command(integrate_flags, graph, omega);
    if (*numerator) return numerator_command(num_graph, num_omega);
    if (*bnd) return boundary_command(chain_file);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
