// tewa: batch front end for scenario validation, runs, policy comparison
// and scenario generation.
//
// Exit status: 0 success, 1 invalid scenario or failed run, 2 usage error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tewa/tewa.hpp"

namespace fs = std::filesystem;

namespace {

struct RunOptions {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string seeds;
  unsigned sweep = 1;
  std::string policy = "two-stage";
  std::string out_log;
  std::string out_report;
  std::optional<double> horizon;
  unsigned jobs = 0;
};

bool wants_json(const std::string& path) { return fs::path(path).extension() == ".json"; }

/// Inserts ".seed<N>" before the extension when a sweep writes several files.
std::string keyed(const std::string& path, std::uint64_t seed, bool many) {
  if (!many) return path;
  fs::path p(path);
  return (p.parent_path() / (p.stem().string() + ".seed" + std::to_string(seed) + p.extension().string())).string();
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return false;
  }
  out << content;
  return static_cast<bool>(out);
}

void print_diagnostics(const std::vector<tewa::Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << (d.path.empty() ? "/" : d.path) << ": " << d.message << "\n";
}

std::optional<tewa::Scenario> load(const std::string& path, std::optional<double> horizon) {
  try {
    auto sc = tewa::load_scenario_file(path);
    if (horizon) {
      if (*horizon < 0.0) {
        std::cerr << "error: --horizon must be non-negative\n";
        return std::nullopt;
      }
      sc.config.horizon = *horizon;
    }
    return sc;
  } catch (const tewa::DocumentError& e) {
    print_diagnostics(e.diagnostics());
    std::cerr << "error: '" << path << "' is not a valid scenario\n";
  }
  return std::nullopt;
}

std::vector<std::uint64_t> seed_list(const RunOptions& o, const tewa::Scenario& sc) {
  if (!o.seeds.empty()) return tewa::parse_seed_list(o.seeds);
  const std::uint64_t first = o.seed.value_or(sc.config.seed);
  std::vector<std::uint64_t> out;
  for (unsigned i = 0; i < o.sweep; ++i) out.push_back(first + i);
  return out;
}

int cmd_validate(const std::string& path) {
  std::string err;
  auto doc = tewa::detail::read_json_file(path, err);
  if (!doc) {
    std::cerr << "/: " << err << "\n";
    return 1;
  }
  const auto diags = tewa::validate_scenario(*doc, fs::path(path).parent_path());
  if (!diags.empty()) {
    print_diagnostics(diags);
    std::cerr << diags.size() << " error(s)\n";
    return 1;
  }
  std::cout << path << ": valid\n";
  return 0;
}

int cmd_run(const RunOptions& o) {
  const auto policy = tewa::parse_policy(o.policy);
  if (!policy) {
    std::cerr << "error: unknown policy '" << o.policy << "'\n";
    return 2;
  }
  auto sc = load(o.scenario, o.horizon);
  if (!sc) return 1;
  const auto seeds = seed_list(o, *sc);
  const bool many = seeds.size() > 1;
  const auto runs = tewa::run_seeds(*sc, *policy, seeds, o.jobs);
  bool ok = true;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    std::cout << "seed=" << seeds[i] << " policy=" << tewa::to_string(*policy) << " " << tewa::summary_line(r.report)
              << "\n";
    if (!o.out_log.empty()) ok &= write_file(keyed(o.out_log, seeds[i], many), r.log.str());
    if (!o.out_report.empty()) {
      const std::string body =
          wants_json(o.out_report) ? tewa::to_json(r.report).dump(2) + "\n" : tewa::to_text(r.report);
      ok &= write_file(keyed(o.out_report, seeds[i], many), body);
    }
  }
  return ok ? 0 : 1;
}

int cmd_compare(const RunOptions& o) {
  auto sc = load(o.scenario, o.horizon);
  if (!sc) return 1;
  const auto rows = tewa::compare_policies(*sc, seed_list(o, *sc), o.jobs);
  std::cout << tewa::to_text(rows);
  int flagged = 0;
  for (const auto& r : rows) flagged += r.greedy_covers_fewer();
  std::cout << "greedy covers fewer threats on " << flagged << " of " << rows.size() << " seeds\n";
  if (!o.out_report.empty()) {
    const std::string body = wants_json(o.out_report) ? tewa::to_json(rows).dump(2) + "\n" : tewa::to_text(rows);
    if (!write_file(o.out_report, body)) return 1;
  }
  return 0;
}

int cmd_gen(const std::string& profile_name, std::uint64_t seed, const std::string& out,
            const std::string& catalog_file) {
  const auto profile = tewa::parse_profile(profile_name);
  if (!profile) {
    std::cerr << "error: unknown profile '" << profile_name << "'\n";
    return 2;
  }
  auto doc = tewa::generate_scenario(*profile, seed);
  if (!catalog_file.empty()) {
    tewa::Json rebuilt;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (it.key() == "catalog")
        rebuilt["catalog_file"] = catalog_file;
      else
        rebuilt[it.key()] = it.value();
    }
    doc = std::move(rebuilt);
  }
  const std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  return write_file(out, text) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threat evaluation and weapon assignment simulator"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a scenario document");
  validate->add_option("--scenario,scenario", validate_path, "Scenario file")->required();

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Run a scenario");
  run->add_option("--scenario", run_opts.scenario, "Scenario file")->required();
  run->add_option("--seed", run_opts.seed, "Seed (default: the scenario's)");
  run->add_option("--seeds", run_opts.seeds, "Seed list, e.g. 1,2,7 or 1..100");
  run->add_option("--sweep", run_opts.sweep, "Number of consecutive seeds from --seed")->check(CLI::PositiveNumber);
  run->add_option("--policy", run_opts.policy, "two-stage or greedy")
      ->check(CLI::IsMember({"two-stage", "greedy"}));
  run->add_option("--out-log", run_opts.out_log, "Event log path");
  run->add_option("--out-report", run_opts.out_report, "Report path (.json for JSON, text otherwise)");
  run->add_option("--horizon", run_opts.horizon, "Override the scenario horizon (s)");
  run->add_option("--jobs", run_opts.jobs, "Worker threads for sweeps (0 = all cores)");

  RunOptions cmp_opts;
  auto* compare = app.add_subcommand("compare", "Run both policies over a seed list");
  compare->add_option("--scenario", cmp_opts.scenario, "Scenario file")->required();
  compare->add_option("--seed", cmp_opts.seed, "First seed");
  compare->add_option("--seeds", cmp_opts.seeds, "Seed list, e.g. 1,2,7 or 1..100");
  compare->add_option("--sweep", cmp_opts.sweep, "Number of consecutive seeds from --seed")->check(CLI::PositiveNumber);
  compare->add_option("--out-report", cmp_opts.out_report, "Comparison report path (.json for JSON)");
  compare->add_option("--horizon", cmp_opts.horizon, "Override the scenario horizon (s)");
  compare->add_option("--jobs", cmp_opts.jobs, "Worker threads (0 = all cores)");

  std::string profile;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  std::string gen_catalog;
  auto* gen = app.add_subcommand("gen", "Generate a scenario document");
  gen->add_option("--profile", profile, "relaxed, stress, starvation or overutilization")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output path (default: stdout)");
  gen->add_option("--catalog-file", gen_catalog, "Reference this catalog file instead of embedding the catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(validate_path);
    if (*run) return cmd_run(run_opts);
    if (*compare) return cmd_compare(cmp_opts);
    if (*gen) return cmd_gen(profile, gen_seed, gen_out, gen_catalog);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
