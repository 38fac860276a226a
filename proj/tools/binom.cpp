// binom: command-line front end for the binomial system solver.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "binom/binom.hpp"

namespace {

using binom::Errc;
using binom::Error;
using nlohmann::json;

constexpr int kExitRoot = 0;
constexpr int kExitError = 1;
constexpr int kExitNoRoot = 2;

struct Config {
  std::string input = "-";
  std::string output = "-";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> precision_bits;
  std::optional<double> tolerance;
  std::string grid;
  std::string experiment = "constant-a";
  std::size_t trials = 50;
};

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) binom::fail(Errc::InvalidInput, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_all(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) binom::fail(Errc::InvalidInput, "cannot write " + path);
  out << text;
}

binom::BinomialSystem load_system(const Config& cfg) {
  return binom::json::parse_with(read_all(cfg.input), binom::json::to_system);
}

binom::SolveOptions solve_options(const Config& cfg) {
  binom::SolveOptions opt;
  if (cfg.tolerance) {
    if (!(*cfg.tolerance >= 0.0)) binom::fail(Errc::InvalidInput, "tolerance must be nonnegative");
    opt.tolerance = *cfg.tolerance;
  }
  if (cfg.precision_bits) opt.fraction_bits = *cfg.precision_bits;
  return opt;
}

int cmd_solve(const Config& cfg) {
  const auto f = load_system(cfg);
  const auto r = binom::solve(f, solve_options(cfg));
  write_all(cfg.output, binom::json::from_solve(r).dump(2) + "\n");
  return r.status == binom::SolveStatus::RootFound ? kExitRoot : kExitNoRoot;
}

int cmd_decide(const Config& cfg) {
  const bool yes = binom::has_real_root(load_system(cfg));
  write_all(cfg.output, yes ? "yes\n" : "no\n");
  return yes ? kExitRoot : kExitNoRoot;
}

int cmd_count(const Config& cfg) {
  const binom::BigInt count = binom::count_real_roots(load_system(cfg));
  write_all(cfg.output, count.get_str(10) + "\n");
  return sgn(count) > 0 ? kExitRoot : kExitNoRoot;
}

int cmd_oracle(const Config& cfg) {
  const auto o = binom::sign_enumeration_oracle(load_system(cfg));
  write_all(cfg.output, binom::json::from_oracle(o).dump(2) + "\n");
  return o.exists ? kExitRoot : kExitNoRoot;
}

int cmd_gen(const Config& cfg) {
  auto e = binom::json::parse_with(read_all(cfg.input), binom::json::to_ensemble);
  if (cfg.seed) e.seed = *cfg.seed;
  json out = binom::json::from_system(binom::sample_system(e));
  out["ensemble"] = binom::json::from_ensemble(e);
  write_all(cfg.output, out.dump(2) + "\n");
  return kExitRoot;
}

// --grid is inline JSON or a path to a JSON file:
// {"n": [...], "d": [...], "trials": k, "variances": [[v0, v1], ...]}
binom::ScalingConfig scaling_config(const Config& cfg) {
  binom::ScalingConfig sc;
  sc.trials = cfg.trials;
  sc.seed = cfg.seed.value_or(0);
  if (cfg.grid.empty()) return sc;
  const std::string text = cfg.grid.front() == '{' ? cfg.grid : read_all(cfg.grid);
  return binom::json::parse_with(text, [&](const json& g) {
    if (!g.is_object()) binom::fail(Errc::InvalidInput, "grid must be a JSON object");
    sc.n_list = g.value("n", sc.n_list);
    sc.d_list = g.value("d", sc.d_list);
    sc.trials = g.value("trials", sc.trials);
    sc.variances = g.value("variances", sc.variances);
    return sc;
  });
}

int cmd_bench(const Config& cfg) {
  const auto report = binom::run_scaling(scaling_config(cfg));
  std::ostringstream csv;
  binom::write_scaling_csv(csv, report);
  write_all(cfg.output, csv.str());
  std::cerr << binom::scaling_fit_json(report).dump() << "\n";
  return kExitRoot;
}

int cmd_prob(const Config& cfg) {
  const json params = cfg.input == "-" ? json::object() : binom::json::parse_with(read_all(cfg.input), [](json j) {
    if (!j.is_object()) binom::fail(Errc::InvalidInput, "experiment parameters must be a JSON object");
    return j;
  });
  std::vector<binom::prob::ExperimentRow> rows;
  const auto run = [&](const std::string& name) {
    auto r = binom::prob::run_experiment(name, params, cfg.seed.value_or(0));
    rows.insert(rows.end(), r.begin(), r.end());
  };
  if (cfg.experiment == "all") {
    for (const auto& name : binom::prob::experiment_names()) run(name);
  } else {
    run(cfg.experiment);
  }
  std::ostringstream csv;
  binom::prob::write_csv(csv, rows);
  write_all(cfg.output, csv.str());
  return kExitRoot;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real roots of random binomial systems"};
  app.require_subcommand(1);
  Config cfg;

  auto add_io = [&cfg](CLI::App* sub, const std::string& what) {
    sub->add_option("-i,--input", cfg.input, what + " (- for stdin)");
    sub->add_option("-o,--output", cfg.output, "output path (- for stdout)");
  };
  auto add_solver = [&cfg](CLI::App* sub) {
    sub->add_option("--precision-bits", cfg.precision_bits, "fraction bits, replacing the computed budget")
        ->check(CLI::Range(8u, 1u << 20));
    sub->add_option("--tolerance", cfg.tolerance, "per-equation log-residual tolerance");
  };

  auto* solve = app.add_subcommand("solve", "solve a system given as JSON");
  add_io(solve, "system JSON");
  add_solver(solve);
  auto* decide = app.add_subcommand("decide", "print yes if the system has a real root, else no");
  add_io(decide, "system JSON");
  auto* count = app.add_subcommand("count", "print the number of real roots");
  add_io(count, "system JSON");
  auto* oracle = app.add_subcommand("oracle", "brute-force sign enumeration (n <= 20)");
  add_io(oracle, "system JSON");
  auto* gen = app.add_subcommand("gen", "sample a system from an ensemble description");
  add_io(gen, "ensemble JSON");
  gen->add_option("--seed", cfg.seed, "overrides the seed in the input");
  auto* bench = app.add_subcommand("bench", "operation-count scaling experiment (CSV; fit on stderr)");
  bench->add_option("-o,--output", cfg.output, "CSV path (- for stdout)");
  bench->add_option("--grid", cfg.grid, "grid as inline JSON or a JSON file");
  bench->add_option("--trials", cfg.trials, "trials per cell")->check(CLI::Range(30, 100000));
  bench->add_option("--seed", cfg.seed, "base seed");
  auto* prob = app.add_subcommand("prob", "probability experiments (CSV)");
  prob->add_option("-i,--input", cfg.input, "experiment parameters JSON");
  prob->add_option("-o,--output", cfg.output, "CSV path (- for stdout)");
  std::vector<std::string> choices = binom::prob::experiment_names();
  choices.push_back("all");
  prob->add_option("--experiment", cfg.experiment, "experiment name")->check(CLI::IsMember(choices));
  prob->add_option("--seed", cfg.seed, "base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*solve) return cmd_solve(cfg);
    if (*decide) return cmd_decide(cfg);
    if (*count) return cmd_count(cfg);
    if (*oracle) return cmd_oracle(cfg);
    if (*gen) return cmd_gen(cfg);
    if (*bench) return cmd_bench(cfg);
    if (*prob) return cmd_prob(cfg);
  } catch (const Error& e) {
    std::cerr << "binom: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "binom: " << e.what() << "\n";
  }
  return kExitError;
}
