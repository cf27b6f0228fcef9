#pragma once

#include "semnoma/substream.hpp"

namespace semnoma {

struct LinkBudget {
  double distance = 1.0;           // m
  double ref_pathloss_db = -30.0;  // dB at 1 m
  double pathloss_exp = 4.0;
  double tx_power = 1.0;           // W

  void validate() const;
  bool operator==(const LinkBudget&) const = default;
};

// One quasi-static block: unit-mean exponential power gains |h|^2.
struct FadingBlock {
  double gain_primary = 1.0;
  double gain_secondary = 1.0;

  bool operator==(const FadingBlock&) const = default;
};

// 10^(ref_pathloss_db/10) * distance^(-pathloss_exp).
double pathloss_gain(const LinkBudget& link);

// Inverse CDF of exponential(1): -ln(1 - u).
double exponential_from_uniform(double u);

FadingBlock block_from_uniforms(double u_primary, double u_secondary);

// Draws the primary gain first, then the secondary gain.
FadingBlock sample_block(Substream& stream);

}  // namespace semnoma
