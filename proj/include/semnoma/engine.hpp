#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semnoma/noma.hpp"
#include "semnoma/policy.hpp"

namespace semnoma {

enum class SweepAxis { RMin, P0 };

struct SweepSpec {
  SweepAxis axis = SweepAxis::RMin;
  std::vector<double> grid;
  std::vector<SchemeKind> schemes{SchemeKind::Opportunistic, SchemeKind::SemOnly,
                                  SchemeKind::BitOnly};
  std::size_t realizations = 100000;
  std::uint64_t master_seed = 1;
  // Constraint level held fixed along a P0 sweep.
  double fixed_r_min = 2.0;

  void validate() const;
};

struct PointResult {
  double axis_value = 0.0;
  SchemeKind scheme = SchemeKind::Opportunistic;
  double ergodic_secondary = 0.0;
  double ergodic_primary = 0.0;
  double ci_halfwidth = 0.0;
  bool feasible = false;

  bool operator==(const PointResult&) const = default;
};

// 0 selects std::thread::hardware_concurrency().
std::size_t resolve_workers(std::size_t workers);

// Block i is drawn from derive_substream(master_seed, i), so the sample does
// not depend on the worker count.
std::vector<FadingBlock> sample_blocks(std::size_t n, std::uint64_t master_seed,
                                       std::size_t workers = 0);

std::vector<BlockOutcome> compute_outcomes(std::span<const FadingBlock> blocks,
                                           const ScenarioConfig& cfg,
                                           std::size_t workers = 0);

// Ergodic means plus a 95% normal-approximation half-width on the
// secondary rate. Infeasible constraints report the all-Off policy.
PointResult summarize_point(std::span<const BlockOutcome> outcomes, SchemeKind scheme,
                            double r_min, double axis_value);

PointResult run_point(const ScenarioConfig& cfg, SchemeKind scheme, double r_min,
                      std::size_t n, std::uint64_t master_seed,
                      std::size_t workers = 0);

// Grid x schemes, grid-major. One fading sample is shared by every row.
std::vector<PointResult> run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec,
                                   std::size_t workers = 0);

}  // namespace semnoma
