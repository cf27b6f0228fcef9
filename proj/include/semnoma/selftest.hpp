#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "semnoma/noma.hpp"
#include "semnoma/policy.hpp"

namespace semnoma {

// Small random instance for checking the multiplier solver against
// exhaustive search: `blocks` fading draws at a random P0 in [0.1, 2] W and
// an r_min drawn between the all-on and all-off primary means.
struct OracleInstance {
  std::vector<BlockOutcome> outcomes;
  double p0 = 1.0;
  double r_min = 0.0;
};

OracleInstance make_oracle_instance(const ScenarioConfig& base, std::uint64_t seed,
                                    std::uint64_t instance, std::size_t blocks = 8);

struct OracleComparison {
  double solver_objective = 0.0;
  double optimal_objective = 0.0;
  double gap_bound = 0.0;  // max single-block secondary rate / N
  // The full-action-set multiplier solution is slack (lambda = 0) or meets
  // the constraint with equality, so it must be exactly optimal.
  bool lagrangian_exact_case = false;

  bool within_bound() const;
  bool passes() const;
};

OracleComparison compare_with_oracle(const OracleInstance& inst, SchemeKind scheme);

// Oracle comparison over `instances` seeded instances for every scheme plus
// similarity round-trip checks. Writes one line per check; returns false if
// any check fails.
bool run_selftest(std::ostream& log, std::uint64_t seed = 1, std::size_t instances = 100);

}  // namespace semnoma
