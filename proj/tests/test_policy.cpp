#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "semnoma/engine.hpp"
#include "semnoma/errors.hpp"
#include "semnoma/policy.hpp"
#include "semnoma/selftest.hpp"
#include "semnoma/substream.hpp"

using namespace semnoma;

namespace {

constexpr SchemeKind kAll[] = {SchemeKind::Opportunistic, SchemeKind::SemOnly,
                               SchemeKind::BitOnly};

std::vector<BlockOutcome> random_outcomes(std::size_t n, std::uint64_t seed, double p0) {
  ScenarioConfig cfg{};
  cfg.secondary_link.tx_power = p0;
  const auto blocks = sample_blocks(n, seed, 1);
  return compute_outcomes(blocks, cfg, 1);
}

double mean_of(const std::vector<BlockOutcome>& os, double BlockOutcome::*field) {
  double s = 0.0;
  for (const auto& o : os) s += o.*field;
  return s / static_cast<double>(os.size());
}

}  // namespace

TEST_CASE("slack constraint gives the unconstrained argmax") {
  const auto os = random_outcomes(500, 17, 1.0);
  const auto r = solve_scheme(os, SchemeKind::Opportunistic, 0.0);
  CHECK(r.lambda == 0.0);
  CHECK(r.feasible);
  for (std::size_t i = 0; i < os.size(); ++i) {
    const double best = std::max({0.0, os[i].sem_rate, os[i].bitum_rate});
    CHECK(secondary_rate(os[i], r.actions[i]) == best);
  }
}

TEST_CASE("ergodic rates are means of the realized per-block rates") {
  const auto os = random_outcomes(300, 5, 0.5);
  for (const auto scheme : kAll) {
    const auto r = solve_scheme(os, scheme, 5.0);
    double sec = 0.0, pri = 0.0;
    for (std::size_t i = 0; i < os.size(); ++i) {
      sec += secondary_rate(os[i], r.actions[i]);
      pri += primary_rate(os[i], r.actions[i]);
    }
    CHECK(r.ergodic_secondary == doctest::Approx(sec / os.size()).epsilon(1e-14));
    CHECK(r.ergodic_primary == doctest::Approx(pri / os.size()).epsilon(1e-14));
    for (std::size_t i = 0; i < os.size(); ++i) {
      const auto allowed = scheme_actions(scheme);
      CHECK(std::find(allowed.begin(), allowed.end(), r.actions[i]) != allowed.end());
      CHECK(action_available(os[i], r.actions[i]));
    }
  }
}

TEST_CASE("infeasible and empty inputs") {
  const auto os = random_outcomes(50, 9, 1.0);
  const double mean_off = mean_of(os, &BlockOutcome::rate_p_off);
  for (const auto scheme : kAll) {
    CHECK_THROWS_AS(solve_scheme(os, scheme, mean_off + 1e-6), InfeasibleError);
    CHECK_THROWS_AS(solve_scheme({}, scheme, 0.0), EmptySample);
  }
  std::vector<BlockOutcome> small(os.begin(), os.begin() + 8);
  CHECK_THROWS_AS(enumerate_optimal(small, SchemeKind::SemOnly, 100.0), InfeasibleError);
  std::vector<BlockOutcome> large(os.begin(), os.begin() + 15);
  CHECK_THROWS_AS(enumerate_optimal(large, SchemeKind::SemOnly, 0.0), TooLarge);
}

TEST_CASE("single-block enumeration") {
  const ScenarioConfig cfg{};
  const auto o = block_outcome({1.0, 1.0}, cfg);
  REQUIRE(o.sem_rate > o.bitum_rate);
  const std::vector<BlockOutcome> one{o};

  const auto r = enumerate_optimal(one, SchemeKind::Opportunistic, 0.0);
  REQUIRE(r.actions.size() == 1);
  CHECK(r.actions[0] == Action::Sem);

  const auto bound = enumerate_optimal(one, SchemeKind::Opportunistic, o.rate_p_off);
  CHECK(bound.actions[0] == Action::Off);
  CHECK(bound.ergodic_secondary == 0.0);

  const auto solved = solve_scheme(one, SchemeKind::Opportunistic, o.rate_p_off);
  CHECK(solved.actions[0] == Action::Off);
  CHECK(solved.feasible);
}

TEST_CASE("tie-breaking is deterministic") {
  // Equal secondary and primary rates: the lower action wins.
  BlockOutcome tie;
  tie.rate_p_off = 5.0;
  tie.rate_p_on = 4.0;
  tie.sem_feasible = true;
  tie.sem_rate = 0.1;
  tie.bitum_rate = 0.1;
  // Silent channel: Bit costs nothing and earns nothing, Off wins.
  BlockOutcome silent;
  silent.rate_p_off = silent.rate_p_on = 5.0;

  const std::vector<BlockOutcome> os{tie, silent};
  const auto acts = lagrangian_actions(os, SchemeKind::Opportunistic, 0.0);
  CHECK(acts[0] == Action::Bit);
  CHECK(acts[1] == Action::Off);

  const auto opt = enumerate_optimal(os, SchemeKind::Opportunistic, 0.0);
  CHECK(opt.actions == std::vector<Action>{Action::Bit, Action::Off});
}

TEST_CASE("multiplier solver against exhaustive search") {
  const ScenarioConfig cfg{};
  std::size_t exact = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const auto inst = make_oracle_instance(cfg, 77, k);
    for (const auto scheme : kAll) {
      const auto cmp = compare_with_oracle(inst, scheme);
      CHECK(cmp.optimal_objective >= cmp.solver_objective - 1e-12);
      CHECK(cmp.optimal_objective - cmp.solver_objective <= cmp.gap_bound + 1e-12);
      if (cmp.lagrangian_exact_case) {
        ++exact;
        CHECK(std::abs(cmp.optimal_objective - cmp.solver_objective) <= 1e-9);
      }
    }
  }
  MESSAGE("exact cases: " << exact);
}

TEST_CASE("scheme dominance and constraint monotonicity on a shared sample") {
  for (double p0 : {0.25, 1.0, 2.0}) {
    const auto os = random_outcomes(3000, 21, p0);
    const double lo = mean_of(os, &BlockOutcome::rate_p_on);
    const double hi = mean_of(os, &BlockOutcome::rate_p_off);
    double prev[3] = {1e300, 1e300, 1e300};
    for (int step = 0; step <= 40; ++step) {
      const double r_min = lo - 1.0 + (hi - lo + 1.0) * step / 40.0;
      SchemeResult res[3];
      for (int s = 0; s < 3; ++s) {
        res[s] = solve_scheme(os, kAll[s], r_min);
        CHECK(res[s].feasible);
        CHECK(res[s].ergodic_primary >= r_min - 1e-9);
        CHECK(res[s].lambda >= 0.0);
        CHECK(res[s].ergodic_secondary <= prev[s] + 1e-9);
        prev[s] = res[s].ergodic_secondary;
      }
      CHECK(res[0].ergodic_secondary >= res[1].ergodic_secondary - 1e-9);
      CHECK(res[0].ergodic_secondary >= res[2].ergodic_secondary - 1e-9);
    }
  }
}

TEST_CASE("complementary slackness") {
  const auto os = random_outcomes(2000, 4, 1.5);
  double spread = 0.0;
  for (const auto& o : os) spread = std::max(spread, o.rate_p_off - o.rate_p_on);
  const double lo = mean_of(os, &BlockOutcome::rate_p_on);
  const double hi = mean_of(os, &BlockOutcome::rate_p_off);
  for (const auto scheme : kAll) {
    for (int step = 1; step < 20; ++step) {
      const double r_min = lo + (hi - lo) * step / 20.0;
      const auto r = solve_lagrangian(os, scheme, r_min);
      if (r.lambda > 0.0)
        CHECK(std::abs(r.ergodic_primary - r_min) <= spread / os.size());
    }
  }
}

TEST_CASE("all-Off helper") {
  const auto os = random_outcomes(10, 2, 1.0);
  const auto r = all_off_result(os);
  CHECK_FALSE(r.feasible);
  CHECK(r.ergodic_secondary == 0.0);
  CHECK(r.ergodic_primary ==
        doctest::Approx(mean_of(os, &BlockOutcome::rate_p_off)).epsilon(1e-15));
}

TEST_CASE("scheme names") {
  for (const auto s : kAll) CHECK(parse_scheme(to_string(s)) == s);
  CHECK_THROWS_AS(parse_scheme("hybrid"), ValidationError);
}
