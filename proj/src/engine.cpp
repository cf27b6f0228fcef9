#include "semnoma/engine.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "semnoma/errors.hpp"
#include "semnoma/substream.hpp"

namespace semnoma {

namespace {

template <typename Fn>
void parallel_ranges(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = std::min(resolve_workers(workers), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

constexpr double kZ95 = 1.959963984540054;

}  // namespace

void SweepSpec::validate() const {
  if (grid.empty()) throw ValidationError("sweep grid must not be empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ValidationError("sweep grid must be strictly increasing");
  if (schemes.empty()) throw ValidationError("sweep needs at least one scheme");
  if (realizations < 1) throw ValidationError("realizations must be >= 1");
  if (axis == SweepAxis::P0 && grid.front() < 0.0)
    throw ValidationError("P0 grid values must be >= 0");
}

std::size_t resolve_workers(std::size_t workers) {
  if (workers > 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<FadingBlock> sample_blocks(std::size_t n, std::uint64_t master_seed,
                                       std::size_t workers) {
  std::vector<FadingBlock> blocks(n);
  parallel_ranges(n, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto stream = derive_substream(master_seed, i);
      blocks[i] = sample_block(stream);
    }
  });
  return blocks;
}

std::vector<BlockOutcome> compute_outcomes(std::span<const FadingBlock> blocks,
                                           const ScenarioConfig& cfg,
                                           std::size_t workers) {
  cfg.validate();
  std::vector<BlockOutcome> outcomes(blocks.size());
  parallel_ranges(blocks.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) outcomes[i] = block_outcome(blocks[i], cfg);
  });
  return outcomes;
}

PointResult summarize_point(std::span<const BlockOutcome> outcomes, SchemeKind scheme,
                            double r_min, double axis_value) {
  SchemeResult sr;
  try {
    sr = solve_scheme(outcomes, scheme, r_min);
  } catch (const InfeasibleError&) {
    sr = all_off_result(outcomes);
  }

  PointResult p;
  p.axis_value = axis_value;
  p.scheme = scheme;
  p.ergodic_secondary = sr.ergodic_secondary;
  p.ergodic_primary = sr.ergodic_primary;
  p.feasible = sr.feasible;

  const std::size_t n = outcomes.size();
  if (n > 1) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = secondary_rate(outcomes[i], sr.actions[i]) - sr.ergodic_secondary;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    p.ci_halfwidth = kZ95 * sd / std::sqrt(static_cast<double>(n));
  }
  return p;
}

PointResult run_point(const ScenarioConfig& cfg, SchemeKind scheme, double r_min,
                      std::size_t n, std::uint64_t master_seed, std::size_t workers) {
  if (n < 1) throw ValidationError("realizations must be >= 1");
  const auto blocks = sample_blocks(n, master_seed, workers);
  const auto outcomes = compute_outcomes(blocks, cfg, workers);
  return summarize_point(outcomes, scheme, r_min, r_min);
}

std::vector<PointResult> run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec,
                                   std::size_t workers) {
  spec.validate();
  const auto blocks = sample_blocks(spec.realizations, spec.master_seed, workers);

  std::vector<PointResult> rows;
  rows.reserve(spec.grid.size() * spec.schemes.size());
  if (spec.axis == SweepAxis::RMin) {
    const auto outcomes = compute_outcomes(blocks, cfg, workers);
    for (const double r_min : spec.grid)
      for (const auto scheme : spec.schemes)
        rows.push_back(summarize_point(outcomes, scheme, r_min, r_min));
  } else {
    for (const double p0 : spec.grid) {
      ScenarioConfig point_cfg = cfg;
      point_cfg.secondary_link.tx_power = p0;
      const auto outcomes = compute_outcomes(blocks, point_cfg, workers);
      for (const auto scheme : spec.schemes)
        rows.push_back(summarize_point(outcomes, scheme, spec.fixed_r_min, p0));
    }
  }
  return rows;
}

}  // namespace semnoma
