#include "semnoma/channel.hpp"

#include <cmath>

#include "semnoma/errors.hpp"
#include "semnoma/rate.hpp"

namespace semnoma {

void LinkBudget::validate() const {
  if (!(distance > 0.0 && std::isfinite(distance)))
    throw ValidationError("link distance must be > 0");
  if (!std::isfinite(ref_pathloss_db))
    throw ValidationError("reference path loss must be finite");
  if (!(pathloss_exp > 0.0 && std::isfinite(pathloss_exp)))
    throw ValidationError("path-loss exponent must be > 0");
  if (!(tx_power >= 0.0 && std::isfinite(tx_power)))
    throw ValidationError("transmit power must be >= 0");
}

double pathloss_gain(const LinkBudget& link) {
  return decibel_to_linear(link.ref_pathloss_db) *
         std::pow(link.distance, -link.pathloss_exp);
}

double exponential_from_uniform(double u) { return -std::log1p(-u); }

FadingBlock block_from_uniforms(double u_primary, double u_secondary) {
  return {exponential_from_uniform(u_primary), exponential_from_uniform(u_secondary)};
}

FadingBlock sample_block(Substream& stream) {
  const double u1 = stream.next_uniform();
  const double u2 = stream.next_uniform();
  return block_from_uniforms(u1, u2);
}

}  // namespace semnoma
