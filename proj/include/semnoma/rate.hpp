#pragma once

namespace semnoma {

// Source statistics shared by the semantic and bit-equivalent rate formulas.
struct SourceStats {
  double info_per_msg = 1.0;   // I, suts per message
  double words_per_msg = 1.0;  // L, words per message
  double bits_per_word = 40.0; // mu
  double eps_c = 1.0;          // similarity credited to exact bit recovery

  void validate() const;
  bool operator==(const SourceStats&) const = default;
};

struct Bandwidth {
  double hertz = 1.0;

  void validate() const;
  bool operator==(const Bandwidth&) const = default;
};

// 10^(value/10). A dBm argument yields milliwatts.
double decibel_to_linear(double value_db);

double dbm_to_watts(double value_dbm);

// W * I / (K * L) * epsilon, in suts/s.
double semantic_rate(Bandwidth w, const SourceStats& src, double k_symbols,
                     double epsilon);

// Shannon rate W * log2(1 + sinr), in bits/s.
double bit_rate(Bandwidth w, double sinr);

// r_b * I / (mu * L) * eps_c, in suts/s.
double bit_equivalent_semantic_rate(double r_b, const SourceStats& src);

}  // namespace semnoma
