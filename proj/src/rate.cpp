#include "semnoma/rate.hpp"

#include <cmath>

#include "semnoma/errors.hpp"

namespace semnoma {

void SourceStats::validate() const {
  if (!(info_per_msg > 0.0)) throw ValidationError("info_per_msg must be > 0");
  if (!(words_per_msg > 0.0)) throw ValidationError("words_per_msg must be > 0");
  if (!(bits_per_word > 0.0)) throw ValidationError("bits_per_word must be > 0");
  if (!(eps_c > 0.0 && eps_c <= 1.0)) throw ValidationError("eps_c must lie in (0, 1]");
}

void Bandwidth::validate() const {
  if (!(hertz > 0.0 && std::isfinite(hertz)))
    throw ValidationError("bandwidth_hz must be > 0");
}

double decibel_to_linear(double value_db) { return std::pow(10.0, value_db / 10.0); }

double dbm_to_watts(double value_dbm) { return decibel_to_linear(value_dbm) * 1e-3; }

double semantic_rate(Bandwidth w, const SourceStats& src, double k_symbols,
                     double epsilon) {
  return w.hertz * src.info_per_msg / (k_symbols * src.words_per_msg) * epsilon;
}

double bit_rate(Bandwidth w, double sinr) { return w.hertz * std::log2(1.0 + sinr); }

double bit_equivalent_semantic_rate(double r_b, const SourceStats& src) {
  return r_b * src.info_per_msg / (src.bits_per_word * src.words_per_msg) * src.eps_c;
}

}  // namespace semnoma
