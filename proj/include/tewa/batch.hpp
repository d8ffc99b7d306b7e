#pragma once

// Seed sweeps and policy comparison. Runs fan out over worker threads; each
// run owns a private copy of the scenario so nothing mutable is shared.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "tewa/report.hpp"
#include "tewa/sim_engine.hpp"

namespace tewa {

struct BatchRun {
  SimReport report;
  EventLog log;
};

/// Runs every seed, results in seed-list order. `workers` = 0 picks the
/// hardware concurrency. The first exception thrown by any run is rethrown.
inline std::vector<BatchRun> run_seeds(const Scenario& scenario, Policy policy, const std::vector<std::uint64_t>& seeds,
                                       unsigned workers = 0) {
  std::vector<BatchRun> out(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, seeds.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        auto [rep, log] = run(scenario, policy, seeds[i]);
        out[i] = {std::move(rep), std::move(log)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline std::vector<ComparisonRow> compare_policies(const Scenario& scenario, const std::vector<std::uint64_t>& seeds,
                                                   unsigned workers = 0) {
  auto two = run_seeds(scenario, Policy::TwoStage, seeds, workers);
  auto greedy = run_seeds(scenario, Policy::Greedy, seeds, workers);
  std::vector<ComparisonRow> rows;
  for (std::size_t i = 0; i < seeds.size(); ++i)
    rows.push_back({seeds[i], std::move(two[i].report), std::move(greedy[i].report)});
  return rows;
}

/// Parses "1,2,5" or "1..100" (inclusive) or a mix such as "1..3,9".
inline std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  auto parse_u64 = [](std::string_view s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos)
      throw std::invalid_argument("invalid seed '" + std::string(s) + "'");
    return static_cast<std::uint64_t>(std::stoull(std::string(s)));
  };
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const auto lo = parse_u64(item.substr(0, dots));
      const auto hi = parse_u64(item.substr(dots + 2));
      if (hi < lo) throw std::invalid_argument("empty seed range '" + std::string(item) + "'");
      if (hi - lo >= 1000000) throw std::invalid_argument("seed range too large");
      for (auto s = lo;; ++s) {
        out.push_back(s);
        if (s == hi) break;
      }
    } else {
      out.push_back(parse_u64(item));
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("seed list is empty");
  return out;
}

}  // namespace tewa
