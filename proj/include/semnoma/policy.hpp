#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "semnoma/noma.hpp"

namespace semnoma {

// Per-block secondary action. The numeric order is the tie-break order.
enum class Action : std::uint8_t { Off = 0, Bit = 1, Sem = 2 };

enum class SchemeKind { Opportunistic, SemOnly, BitOnly };

std::string_view to_string(SchemeKind scheme);
std::string_view to_string(Action action);
// Accepts opportunistic | sem_only | bit_only. Throws ValidationError.
SchemeKind parse_scheme(std::string_view name);

// Actions admitted by the scheme, in tie-break order.
std::span<const Action> scheme_actions(SchemeKind scheme);

// Sem needs the similarity gate; Off and Bit are always available.
bool action_available(const BlockOutcome& outcome, Action action);
double secondary_rate(const BlockOutcome& outcome, Action action);
double primary_rate(const BlockOutcome& outcome, Action action);

struct SchemeResult {
  double ergodic_secondary = 0.0;  // suts/s/Hz
  double ergodic_primary = 0.0;    // bits/s/Hz
  double lambda = 0.0;             // suts per bit
  std::vector<Action> actions;
  bool feasible = false;
};

// Sample means of the realized rates under `actions`.
SchemeResult evaluate_actions(std::span<const BlockOutcome> outcomes,
                              std::vector<Action> actions);

// The all-Off policy, flagged infeasible. Used to report points whose
// constraint cannot be met.
SchemeResult all_off_result(std::span<const BlockOutcome> outcomes);

// Threshold policy for a single multiplier over the scheme's action set.
// Each block maximizes secondary - lambda * (primary loss); ties go to the
// higher primary rate, then to the lower Action.
std::vector<Action> lagrangian_actions(std::span<const BlockOutcome> outcomes,
                                       SchemeKind scheme, double lambda);

// Bisection on the multiplier until the sample-mean primary rate meets
// r_min, followed by a repair pass that switches the blocks closest to
// indifference Off if rounding left the constraint violated.
// Throws EmptySample, InfeasibleError.
SchemeResult solve_lagrangian(std::span<const BlockOutcome> outcomes,
                              SchemeKind scheme, double r_min);

// solve_lagrangian for the fixed schemes. For Opportunistic the result is the
// best feasible primal among the multiplier solutions over the full action
// set and over each restricted set, so it never falls below a fixed scheme
// on the same sample.
SchemeResult solve_scheme(std::span<const BlockOutcome> outcomes, SchemeKind scheme,
                          double r_min);

inline constexpr std::size_t kMaxEnumerationBlocks = 14;

// Exhaustive optimum of the sampled problem. Ties resolve to the
// lexicographically smallest action vector. Throws TooLarge, EmptySample,
// InfeasibleError.
SchemeResult enumerate_optimal(std::span<const BlockOutcome> outcomes,
                               SchemeKind scheme, double r_min);

}  // namespace semnoma
