#pragma once

#include "semnoma/channel.hpp"
#include "semnoma/rate.hpp"
#include "semnoma/similarity.hpp"

namespace semnoma {

// Unit of the SNR fed to the logistic similarity curve.
enum class SnrUnit { Linear, Decibel };

// Two-user uplink scenario. Defaults reproduce the reference setup: bit user
// at 15 m with 1 W, semantic-capable user at 45 m, -30 dB at 1 m, exponent 4,
// -80 dBm noise, K = 5 DeepSC constants, similarity threshold 0.9.
struct ScenarioConfig {
  LinkBudget primary_link{15.0, -30.0, 4.0, 1.0};
  LinkBudget secondary_link{45.0, -30.0, 4.0, 1.0};
  double noise_power = 1e-11;  // W
  SourceStats source{};
  LogisticParams logistic = kDeepScK5;
  double similarity_threshold = 0.9;
  Bandwidth bandwidth{};
  SnrUnit snr_unit = SnrUnit::Linear;

  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

struct UplinkSinrs {
  double sinr_primary = 0.0;
  double snr_secondary = 0.0;
};

// Everything the policy layer needs about one block, for both secondary
// states. Rates are per the configured bandwidth (bits/s, suts/s).
struct BlockOutcome {
  double rate_p_off = 0.0;
  double rate_p_on = 0.0;
  double snr_s = 0.0;
  double epsilon = 0.0;
  double sem_rate = 0.0;
  bool sem_feasible = false;
  double bitum_rate = 0.0;
};

// The primary is decoded first treating the secondary as noise; the
// secondary is then decoded interference-free.
UplinkSinrs uplink_sinrs(const FadingBlock& block, const ScenarioConfig& cfg,
                         bool secondary_active);

BlockOutcome block_outcome(const FadingBlock& block, const ScenarioConfig& cfg);

// The SNR value handed to eval_epsilon under cfg.snr_unit.
double similarity_input(double snr_linear, SnrUnit unit);

}  // namespace semnoma
