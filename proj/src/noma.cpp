#include "semnoma/noma.hpp"

#include <cmath>

#include "semnoma/errors.hpp"

namespace semnoma {

void ScenarioConfig::validate() const {
  primary_link.validate();
  secondary_link.validate();
  if (!(noise_power > 0.0 && std::isfinite(noise_power)))
    throw ValidationError("noise_power must be > 0");
  source.validate();
  logistic.validate();
  if (!(similarity_threshold > 0.0 && similarity_threshold < 1.0))
    throw ValidationError("similarity_threshold must lie in (0, 1)");
  bandwidth.validate();
}

double similarity_input(double snr_linear, SnrUnit unit) {
  return unit == SnrUnit::Linear ? snr_linear : 10.0 * std::log10(snr_linear);
}

UplinkSinrs uplink_sinrs(const FadingBlock& block, const ScenarioConfig& cfg,
                         bool secondary_active) {
  const double rx_primary =
      cfg.primary_link.tx_power * pathloss_gain(cfg.primary_link) * block.gain_primary;
  if (!secondary_active) return {rx_primary / cfg.noise_power, 0.0};

  const double rx_secondary = cfg.secondary_link.tx_power *
                              pathloss_gain(cfg.secondary_link) *
                              block.gain_secondary;
  return {rx_primary / (cfg.noise_power + rx_secondary),
          rx_secondary / cfg.noise_power};
}

BlockOutcome block_outcome(const FadingBlock& block, const ScenarioConfig& cfg) {
  const auto off = uplink_sinrs(block, cfg, false);
  const auto on = uplink_sinrs(block, cfg, true);

  BlockOutcome out;
  out.rate_p_off = bit_rate(cfg.bandwidth, off.sinr_primary);
  out.rate_p_on = bit_rate(cfg.bandwidth, on.sinr_primary);
  out.snr_s = on.snr_secondary;
  out.epsilon = eval_epsilon(cfg.logistic, similarity_input(out.snr_s, cfg.snr_unit));
  out.sem_feasible = out.epsilon >= cfg.similarity_threshold;
  out.sem_rate = out.sem_feasible ? semantic_rate(cfg.bandwidth, cfg.source,
                                                  cfg.logistic.k_symbols, out.epsilon)
                                  : 0.0;
  out.bitum_rate = bit_equivalent_semantic_rate(bit_rate(cfg.bandwidth, out.snr_s),
                                                cfg.source);
  return out;
}

}  // namespace semnoma
