#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semnoma/noma.hpp"
#include "semnoma/policy.hpp"

namespace semnoma {

// Experiment-level settings that live next to the scenario in a config file.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::size_t realizations = 100000;
  std::size_t workers = 0;
  SchemeKind scheme = SchemeKind::Opportunistic;
  std::vector<SchemeKind> schemes{SchemeKind::Opportunistic, SchemeKind::SemOnly,
                                  SchemeKind::BitOnly};
  double r_min = 2.0;
  std::vector<double> r_min_grid{0, 1, 2, 3, 4, 5, 6};
  std::vector<double> p0_grid{0.1, 0.25, 0.5, 1.0, 1.5, 2.0};

  bool operator==(const ExperimentConfig&) const = default;
};

struct RunConfig {
  ScenarioConfig scenario;
  ExperimentConfig experiment;

  bool operator==(const RunConfig&) const = default;
};

// Flat `key = value` text, one key per line, `#` starts a comment. Unknown
// or repeated keys are ParseErrors; values violating an invariant raise
// ValidationError.
RunConfig parse_config(const std::string& text);

RunConfig load_run_config(const std::string& path);

ScenarioConfig load_config(const std::string& path);

// Emits every key with round-trip precision; parse_config(format_config(c))
// reproduces c exactly.
std::string format_config(const RunConfig& cfg);

}  // namespace semnoma
