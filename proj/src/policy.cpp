#include "semnoma/policy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "semnoma/errors.hpp"

namespace semnoma {

namespace {

constexpr std::array<Action, 3> kOpportunisticActions{Action::Off, Action::Bit,
                                                      Action::Sem};
constexpr std::array<Action, 2> kSemActions{Action::Off, Action::Sem};
constexpr std::array<Action, 2> kBitActions{Action::Off, Action::Bit};

constexpr int kBisectionCap = 200;
constexpr double kBisectionRelWidth = 1e-13;

Action choose(const BlockOutcome& o, std::span<const Action> allowed, double lambda) {
  Action best = Action::Off;
  double best_score = 0.0;
  double best_primary = o.rate_p_off;
  for (const Action a : allowed) {
    if (a == Action::Off || !action_available(o, a)) continue;
    const double primary = primary_rate(o, a);
    const double score = secondary_rate(o, a) - lambda * (o.rate_p_off - primary);
    if (score > best_score || (score == best_score && primary > best_primary)) {
      best = a;
      best_score = score;
      best_primary = primary;
    }
  }
  return best;
}

double mean_primary(std::span<const BlockOutcome> outcomes,
                    std::span<const Action> allowed, double lambda) {
  double sum = 0.0;
  for (const auto& o : outcomes) sum += primary_rate(o, choose(o, allowed, lambda));
  return sum / static_cast<double>(outcomes.size());
}

void check_solvable(std::span<const BlockOutcome> outcomes, double r_min) {
  if (outcomes.empty()) throw EmptySample("no block outcomes");
  double sum = 0.0;
  for (const auto& o : outcomes) sum += o.rate_p_off;
  const double mean_off = sum / static_cast<double>(outcomes.size());
  if (mean_off < r_min)
    throw InfeasibleError("mean primary rate with the secondary silent (" +
                          std::to_string(mean_off) + ") is below r_min (" +
                          std::to_string(r_min) + ")");
}

double lambda_upper_bound(std::span<const BlockOutcome> outcomes,
                          std::span<const Action> allowed) {
  double max_secondary = 0.0;
  double min_loss = std::numeric_limits<double>::infinity();
  for (const auto& o : outcomes) {
    for (const Action a : allowed) {
      if (a == Action::Off || !action_available(o, a)) continue;
      max_secondary = std::max(max_secondary, secondary_rate(o, a));
      const double loss = o.rate_p_off - primary_rate(o, a);
      if (loss > 0.0) min_loss = std::min(min_loss, loss);
    }
  }
  if (!std::isfinite(min_loss)) return 1.0;
  return max_secondary / min_loss + 1.0;
}

}  // namespace

std::string_view to_string(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::Opportunistic: return "opportunistic";
    case SchemeKind::SemOnly: return "sem_only";
    case SchemeKind::BitOnly: return "bit_only";
  }
  return "unknown";
}

std::string_view to_string(Action action) {
  switch (action) {
    case Action::Off: return "off";
    case Action::Bit: return "bit";
    case Action::Sem: return "sem";
  }
  return "unknown";
}

SchemeKind parse_scheme(std::string_view name) {
  for (auto s : {SchemeKind::Opportunistic, SchemeKind::SemOnly, SchemeKind::BitOnly})
    if (to_string(s) == name) return s;
  throw ValidationError("unknown scheme '" + std::string(name) + "'");
}

std::span<const Action> scheme_actions(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::Opportunistic: return kOpportunisticActions;
    case SchemeKind::SemOnly: return kSemActions;
    case SchemeKind::BitOnly: return kBitActions;
  }
  return {};
}

bool action_available(const BlockOutcome& outcome, Action action) {
  return action != Action::Sem || outcome.sem_feasible;
}

double secondary_rate(const BlockOutcome& outcome, Action action) {
  switch (action) {
    case Action::Off: return 0.0;
    case Action::Bit: return outcome.bitum_rate;
    case Action::Sem: return outcome.sem_rate;
  }
  return 0.0;
}

double primary_rate(const BlockOutcome& outcome, Action action) {
  return action == Action::Off ? outcome.rate_p_off : outcome.rate_p_on;
}

SchemeResult evaluate_actions(std::span<const BlockOutcome> outcomes,
                              std::vector<Action> actions) {
  SchemeResult r;
  double sec = 0.0, pri = 0.0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    sec += secondary_rate(outcomes[i], actions[i]);
    pri += primary_rate(outcomes[i], actions[i]);
  }
  const auto n = static_cast<double>(outcomes.size());
  r.ergodic_secondary = sec / n;
  r.ergodic_primary = pri / n;
  r.actions = std::move(actions);
  return r;
}

SchemeResult all_off_result(std::span<const BlockOutcome> outcomes) {
  if (outcomes.empty()) throw EmptySample("no block outcomes");
  auto r = evaluate_actions(outcomes, std::vector<Action>(outcomes.size(), Action::Off));
  r.feasible = false;
  return r;
}

std::vector<Action> lagrangian_actions(std::span<const BlockOutcome> outcomes,
                                       SchemeKind scheme, double lambda) {
  const auto allowed = scheme_actions(scheme);
  std::vector<Action> out(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    out[i] = choose(outcomes[i], allowed, lambda);
  return out;
}

SchemeResult solve_lagrangian(std::span<const BlockOutcome> outcomes,
                              SchemeKind scheme, double r_min) {
  check_solvable(outcomes, r_min);
  const auto allowed = scheme_actions(scheme);

  double lambda = 0.0;
  if (mean_primary(outcomes, allowed, 0.0) < r_min) {
    double lo = 0.0;
    double hi = lambda_upper_bound(outcomes, allowed);
    for (int it = 0; it < kBisectionCap && hi - lo > kBisectionRelWidth * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (mean_primary(outcomes, allowed, mid) >= r_min)
        hi = mid;
      else
        lo = mid;
    }
    lambda = hi;
  }

  auto result = evaluate_actions(outcomes, lagrangian_actions(outcomes, scheme, lambda));
  result.lambda = lambda;

  if (result.ergodic_primary < r_min) {
    // Repair: switch active blocks Off in order of increasing Lagrangian
    // margin over Off until the constraint holds.
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < outcomes.size(); ++i)
      if (result.actions[i] != Action::Off) active.push_back(i);
    const auto margin = [&](std::size_t i) {
      const auto& o = outcomes[i];
      const Action a = result.actions[i];
      return secondary_rate(o, a) - lambda * (o.rate_p_off - primary_rate(o, a));
    };
    std::stable_sort(active.begin(), active.end(),
                     [&](auto a, auto b) { return margin(a) < margin(b); });
    auto actions = std::move(result.actions);
    for (const auto i : active) {
      actions[i] = Action::Off;
      result = evaluate_actions(outcomes, actions);
      actions = std::move(result.actions);
      if (result.ergodic_primary >= r_min) break;
    }
    result.actions = std::move(actions);
    result.lambda = lambda;
  }
  result.feasible = result.ergodic_primary >= r_min;
  return result;
}

SchemeResult solve_scheme(std::span<const BlockOutcome> outcomes, SchemeKind scheme,
                          double r_min) {
  auto best = solve_lagrangian(outcomes, scheme, r_min);
  if (scheme != SchemeKind::Opportunistic) return best;
  for (auto restricted : {SchemeKind::SemOnly, SchemeKind::BitOnly}) {
    auto cand = solve_lagrangian(outcomes, restricted, r_min);
    if (cand.feasible && cand.ergodic_secondary > best.ergodic_secondary)
      best = std::move(cand);
  }
  return best;
}

SchemeResult enumerate_optimal(std::span<const BlockOutcome> outcomes,
                               SchemeKind scheme, double r_min) {
  if (outcomes.size() > kMaxEnumerationBlocks)
    throw TooLarge("enumeration supports at most " +
                   std::to_string(kMaxEnumerationBlocks) + " blocks");
  check_solvable(outcomes, r_min);

  const std::size_t n = outcomes.size();
  std::vector<std::vector<Action>> menu(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const Action a : scheme_actions(scheme))
      if (action_available(outcomes[i], a)) menu[i].push_back(a);

  // Odometer with block 0 most significant: visits vectors in
  // lexicographic order, so keeping the first strict maximum gives the
  // lexicographically smallest optimum.
  std::vector<std::size_t> digit(n, 0);
  std::vector<Action> current(n);
  SchemeResult best;
  bool found = false;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) current[i] = menu[i][digit[i]];
    auto cand = evaluate_actions(outcomes, current);
    if (cand.ergodic_primary >= r_min &&
        (!found || cand.ergodic_secondary > best.ergodic_secondary)) {
      best = std::move(cand);
      found = true;
    }
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digit[pos] < menu[pos].size()) break;
      digit[pos] = 0;
      if (pos == 0) {
        pos = n + 1;
        break;
      }
    }
    if (pos == n + 1 || n == 0) break;
  }
  // All-Off is always feasible once check_solvable passed.
  best.feasible = true;
  best.lambda = 0.0;
  return best;
}

}  // namespace semnoma
