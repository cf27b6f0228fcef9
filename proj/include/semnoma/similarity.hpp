#pragma once

#include <span>
#include <string>
#include <vector>

namespace semnoma {

// Generalized-logistic approximation of the semantic similarity score for
// one symbols-per-word setting:
//
//   eps(snr) = a_low + (a_high - a_low) / (1 + exp(-(growth * snr + shift)))
struct LogisticParams {
  double a_low = 0.37;
  double a_high = 0.98;
  double growth = 0.2525;
  double shift = -0.7895;
  double k_symbols = 5.0;

  // Throws ValidationError naming the first violated invariant.
  void validate() const;

  bool operator==(const LogisticParams&) const = default;
};

// DeepSC constants for K = 5 symbols per word.
inline constexpr LogisticParams kDeepScK5{0.37, 0.98, 0.2525, -0.7895, 5.0};

struct SimilaritySample {
  double snr = 0.0;
  double epsilon = 0.0;
};

double eval_epsilon(const LogisticParams& params, double snr);

// Closed-form logit inversion. The returned SNR is negative when the target
// lies below eps(0); callers that need a physical SNR must clamp.
// Throws TargetOutOfRange unless a_low < target < a_high.
double invert_epsilon(const LogisticParams& params, double target);

struct FitResult {
  LogisticParams params;
  double mse = 0.0;
  int iterations = 0;
  bool used_fallback = false;
};

// Least-squares fit of the four logistic constants. Gauss-Newton with a
// backtracking step from a logit-regression start; falls back to a coarse
// (growth, shift) grid with the asymptotes solved linearly, then polishes.
// Throws DegenerateSamples (< 8 points or constant epsilon) or NoConvergence.
FitResult fit_logistic(std::span<const SimilaritySample> samples,
                       double k_symbols);

// Reads the `snr_linear,epsilon` sample CSV. Throws IoError / ParseError.
std::vector<SimilaritySample> read_samples_csv(const std::string& path);

}  // namespace semnoma
