// tvdist: estimate, compute exactly, or inspect the total variation distance
// between two product distributions read from an instance file.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvdist/coupling.hpp"
#include "tvdist/error.hpp"
#include "tvdist/estimator.hpp"
#include "tvdist/io.hpp"
#include "tvdist/oracle.hpp"

namespace {

enum ExitCode : int {
  exit_ok = 0,
  exit_validation = 2,
  exit_io = 3,
  exit_budget = 4,
  exit_internal = 5,
};

int exit_code_for(tvdist::ErrorClass cls) {
  switch (cls) {
    case tvdist::ErrorClass::validation: return exit_validation;
    case tvdist::ErrorClass::io: return exit_io;
    case tvdist::ErrorClass::budget: return exit_budget;
    case tvdist::ErrorClass::internal: return exit_internal;
  }
  return exit_internal;
}

struct Options {
  std::string input;
  double epsilon = 0.1;
  double delta = 0.05;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  unsigned workers = 1;
  std::string max_states = "1048576";
  bool diagnostics = false;
};

// Accepts a plain integer or 2^k.
std::uint64_t parse_max_states(const std::string& text) {
  try {
    std::size_t used = 0;
    if (text.rfind("2^", 0) == 0) {
      const unsigned long k = std::stoul(text.substr(2), &used);
      if (used == text.size() - 2 && k < 64) return std::uint64_t{1} << k;
    } else {
      const unsigned long long v = std::stoull(text, &used);
      if (used == text.size() && v > 0) return v;
    }
  } catch (const std::exception&) {
  }
  throw tvdist::Error(tvdist::ErrorKind::invalid_config,
                      "--max-states must be a positive integer or 2^k, got " + text);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device device;
  const std::uint64_t generated =
      (static_cast<std::uint64_t>(device()) << 32) ^ device();
  std::cerr << "generated seed: " << generated << "\n";
  return generated;
}

void emit(const tvdist::RunReport& report) {
  std::cout << tvdist::to_json(report).dump(2) << "\n";
}

void emit_error(const std::string& command, const std::string& kind,
                const std::string& cls, std::optional<std::size_t> coordinate,
                const std::string& message) {
  nlohmann::json error{{"kind", kind}, {"class", cls}, {"message", message}};
  error["coordinate"] = coordinate ? nlohmann::json(*coordinate + 1) : nlohmann::json(nullptr);
  std::cout << nlohmann::json{{"command", command}, {"error", error}}.dump(2) << "\n";
  std::cerr << "error: " << message << "\n";
}

int run(const std::string& command, const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  const tvdist::InstanceFile file = tvdist::read_instance_file(opt.input);
  const tvdist::Instance instance = tvdist::to_instance(file);

  tvdist::RunReport report;
  report.command = command;
  report.instance_path = opt.input;
  report.instance_hash = tvdist::instance_hash(file);

  if (command == "estimate") {
    tvdist::EstimatorConfig config;
    config.epsilon = opt.epsilon;
    config.delta = opt.delta;
    config.samples_override = opt.samples;
    config.workers = opt.workers;
    config.diagnostics = opt.diagnostics;
    config.validate();
    config.seed = resolve_seed(opt.seed);
    const auto result = tvdist::estimate_tv(instance.p, instance.q, config);
    report.config = {config.epsilon, config.delta, result.samples_used,
                     config.seed, config.workers, std::nullopt};
    report.result = result;
    std::cerr << "estimate " << result.estimate << " from " << result.samples_used
              << " samples (mean f " << result.mean_f << ", Pr_C[X!=Y] "
              << result.pr_diff << ")\n";
  } else if (command == "naive") {
    const std::uint64_t samples = opt.samples.value_or(100000);
    if (samples == 0 || opt.workers == 0) {
      throw tvdist::Error(tvdist::ErrorKind::invalid_config,
                          "--samples and --workers must be positive");
    }
    const std::uint64_t seed = resolve_seed(opt.seed);
    const auto result =
        tvdist::naive_estimate_tv(instance.p, instance.q, samples, seed, opt.workers);
    report.config = {std::nullopt, std::nullopt, samples, seed, opt.workers, std::nullopt};
    report.result = result;
    std::cerr << "naive estimate " << result.estimate << " from " << samples
              << " samples\n";
  } else if (command == "exact") {
    const tvdist::EnumerationBudget budget{parse_max_states(opt.max_states)};
    const double tv = tvdist::exact_tv(instance.p, instance.q, budget);
    report.config.max_states = budget.max_states;
    report.result = tvdist::ExactResult{tv, instance.p.state_count()};
    std::cerr << "exact TV " << tv << " over " << instance.p.state_count()
              << " states\n";
  } else {  // info
    tvdist::EstimatorConfig{.epsilon = opt.epsilon, .delta = opt.delta}.validate();
    const auto stats = tvdist::build_stats(instance.p, instance.q);
    tvdist::InfoResult info;
    info.per_coordinate_tv = stats.d;
    info.pr_diff = stats.pr_diff;
    info.samples_for_config =
        tvdist::sample_count(instance.p.dimension(), opt.epsilon, opt.delta);
    info.identical = tvdist::are_identical(instance.p, instance.q);
    info.states = instance.p.state_count();
    info.note = info.identical ? "P and Q are identical; estimate returns 0 without sampling"
                               : "";
    report.config.epsilon = opt.epsilon;
    report.config.delta = opt.delta;
    report.config.samples = info.samples_for_config;
    report.result = info;
    std::cerr << "n = " << instance.p.dimension() << ", Pr_C[X!=Y] = " << stats.pr_diff
              << ", m(eps, delta) = " << info.samples_for_config << "\n";
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(report);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total variation distance between product distributions"};
  app.require_subcommand(1);
  Options opt;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", opt.input, "Instance file with keys \"p\" and \"q\"")
        ->required();
  };
  auto add_epsilon_delta = [&](CLI::App* sub) {
    sub->add_option("--epsilon", opt.epsilon, "Relative error target (> 0)");
    sub->add_option("--delta", opt.delta, "Failure probability in (0, 1)");
  };

  auto* estimate = app.add_subcommand("estimate", "Importance-sampling estimate");
  add_input(estimate);
  add_epsilon_delta(estimate);
  estimate->add_option("--seed", opt.seed, "64-bit RNG seed (generated if omitted)");
  estimate->add_option("--samples", opt.samples, "Override the derived sample count");
  estimate->add_option("--workers", opt.workers, "Worker threads");
  estimate->add_flag("--diagnostics", opt.diagnostics,
                     "Check the conditional-weight identity at every step");

  auto* exact = app.add_subcommand("exact", "Exact TV by enumeration");
  add_input(exact);
  exact->add_option("--max-states", opt.max_states, "Enumeration cap (integer or 2^k)");

  auto* naive = app.add_subcommand("naive", "Naive Monte Carlo baseline");
  add_input(naive);
  naive->add_option("--samples", opt.samples, "Number of samples (default 100000)");
  naive->add_option("--seed", opt.seed, "64-bit RNG seed (generated if omitted)");
  naive->add_option("--workers", opt.workers, "Worker threads");

  auto* info = app.add_subcommand("info", "Coupling diagnostics, no sampling");
  add_input(info);
  add_epsilon_delta(info);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_validation;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const tvdist::Error& e) {
    emit_error(command, std::string(tvdist::to_string(e.kind())),
               std::string(tvdist::to_string(e.error_class())), e.coordinate(), e.what());
    return exit_code_for(e.error_class());
  } catch (const std::exception& e) {
    emit_error(command, "InternalError", "internal", std::nullopt, e.what());
    return exit_internal;
  }
}
