#include "semnoma/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "semnoma/policy.hpp"
#include "semnoma/similarity.hpp"
#include "semnoma/substream.hpp"

namespace semnoma {

namespace {

constexpr double kExactTol = 1e-9;

}  // namespace

OracleInstance make_oracle_instance(const ScenarioConfig& base, std::uint64_t seed,
                                    std::uint64_t instance, std::size_t blocks) {
  auto stream = derive_substream(seed, instance);
  const double u_p0 = stream.next_uniform();
  const double u_r = stream.next_uniform();
  const std::uint64_t block_seed = stream.next_u64();

  OracleInstance inst;
  inst.p0 = 0.1 + 1.9 * u_p0;
  ScenarioConfig cfg = base;
  cfg.secondary_link.tx_power = inst.p0;

  double sum_on = 0.0, sum_off = 0.0;
  for (std::size_t i = 0; i < blocks; ++i) {
    auto bs = derive_substream(block_seed, i);
    inst.outcomes.push_back(block_outcome(sample_block(bs), cfg));
    sum_on += inst.outcomes.back().rate_p_on;
    sum_off += inst.outcomes.back().rate_p_off;
  }
  const double n = static_cast<double>(blocks);
  inst.r_min = sum_on / n + u_r * (sum_off - sum_on) / n;
  return inst;
}

bool OracleComparison::within_bound() const {
  return solver_objective <= optimal_objective + kExactTol &&
         optimal_objective - solver_objective <= gap_bound + kExactTol;
}

bool OracleComparison::passes() const {
  if (!within_bound()) return false;
  return !lagrangian_exact_case ||
         std::abs(optimal_objective - solver_objective) <= kExactTol;
}

OracleComparison compare_with_oracle(const OracleInstance& inst, SchemeKind scheme) {
  OracleComparison cmp;
  const auto solved = solve_scheme(inst.outcomes, scheme, inst.r_min);
  const auto optimal = enumerate_optimal(inst.outcomes, scheme, inst.r_min);
  const auto lagrangian = solve_lagrangian(inst.outcomes, scheme, inst.r_min);
  cmp.solver_objective = solved.ergodic_secondary;
  cmp.optimal_objective = optimal.ergodic_secondary;

  double max_rate = 0.0;
  for (const auto& o : inst.outcomes)
    for (const Action a : scheme_actions(scheme))
      if (action_available(o, a)) max_rate = std::max(max_rate, secondary_rate(o, a));
  cmp.gap_bound = max_rate / static_cast<double>(inst.outcomes.size());
  cmp.lagrangian_exact_case =
      lagrangian.lambda == 0.0 ||
      std::abs(lagrangian.ergodic_primary - inst.r_min) <= kExactTol;
  return cmp;
}

bool run_selftest(std::ostream& log, std::uint64_t seed, std::size_t instances) {
  bool all_ok = true;
  const auto report = [&](const char* name, bool ok, const std::string& detail) {
    log << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    all_ok = all_ok && ok;
  };

  const ScenarioConfig cfg{};
  for (const auto scheme :
       {SchemeKind::Opportunistic, SchemeKind::SemOnly, SchemeKind::BitOnly}) {
    std::size_t failures = 0, exact_cases = 0;
    double worst_gap = 0.0;
    for (std::size_t k = 0; k < instances; ++k) {
      const auto cmp = compare_with_oracle(make_oracle_instance(cfg, seed, k), scheme);
      if (!cmp.passes()) ++failures;
      if (cmp.lagrangian_exact_case) ++exact_cases;
      worst_gap = std::max(worst_gap, cmp.optimal_objective - cmp.solver_objective);
    }
    const std::string name = "oracle " + std::string(to_string(scheme));
    report(name.c_str(), failures == 0,
           std::to_string(instances - failures) + "/" + std::to_string(instances) +
               " within bound, " + std::to_string(exact_cases) +
               " exact cases, worst gap " + std::to_string(worst_gap));
  }

  const auto& params = cfg.logistic;
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double snr = -2.0 + 0.1 * i;
    const double eps = eval_epsilon(params, snr);
    if (eps <= params.a_low + 1e-6 || eps >= params.a_high - 1e-6) continue;
    worst = std::max(worst, std::abs(invert_epsilon(params, eps) - snr));
  }
  report("similarity round trip", worst <= 1e-6,
         "max |invert(eval(x)) - x| = " + std::to_string(worst));

  // Bisection on eval_epsilon as an independent route to the threshold SNR.
  double lo = 0.0, hi = 1000.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (eval_epsilon(params, mid) < cfg.similarity_threshold ? lo : hi) = mid;
  }
  const double closed = invert_epsilon(params, cfg.similarity_threshold);
  report("threshold inversion", std::abs(closed - hi) <= 1e-9,
         "closed form " + std::to_string(closed) + " vs bisection " + std::to_string(hi));

  return all_ok;
}

}  // namespace semnoma
