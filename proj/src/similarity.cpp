#include "semnoma/similarity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <string_view>

#include "semnoma/errors.hpp"

namespace semnoma {

namespace {

constexpr std::size_t kMinSamples = 8;
constexpr int kMaxIterations = 200;
constexpr int kMaxHalvings = 40;

bool valid(const LogisticParams& p) {
  return std::isfinite(p.a_low) && std::isfinite(p.a_high) &&
         std::isfinite(p.growth) && std::isfinite(p.shift) && p.a_low >= 0.0 &&
         p.a_low < p.a_high && p.a_high <= 1.0 && p.growth > 0.0;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

using Vec4 = Eigen::Vector4d;

LogisticParams unpack(const Vec4& v, double k_symbols) {
  return {v[0], v[1], v[2], v[3], k_symbols};
}

double sse(const Vec4& theta, std::span<const SimilaritySample> samples) {
  double total = 0.0;
  for (const auto& s : samples) {
    const double f =
        theta[0] + (theta[1] - theta[0]) * sigmoid(theta[2] * s.snr + theta[3]);
    const double r = s.epsilon - f;
    total += r * r;
  }
  return total;
}

struct GaussNewtonOutcome {
  Vec4 theta;
  double sse = 0.0;
  int iterations = 0;
  bool ok = false;
};

GaussNewtonOutcome gauss_newton(Vec4 theta,
                                std::span<const SimilaritySample> samples) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd jac(n, 4);
  Eigen::VectorXd resid(n);

  double current = sse(theta, samples);
  int it = 0;
  for (; it < kMaxIterations; ++it) {
    if (!std::isfinite(current)) return {theta, current, it, false};
    if (current == 0.0) break;

    const double span_a = theta[1] - theta[0];
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& s = samples[static_cast<std::size_t>(i)];
      const double sg = sigmoid(theta[2] * s.snr + theta[3]);
      const double ds = span_a * sg * (1.0 - sg);
      jac(i, 0) = 1.0 - sg;
      jac(i, 1) = sg;
      jac(i, 2) = ds * s.snr;
      jac(i, 3) = ds;
      resid[i] = s.epsilon - (theta[0] + span_a * sg);
    }

    auto qr = jac.colPivHouseholderQr();
    if (qr.rank() < 4) return {theta, current, it, false};
    const Vec4 step = qr.solve(resid);
    if (!step.allFinite()) return {theta, current, it, false};

    double t = 1.0;
    bool improved = false;
    Vec4 trial;
    double trial_sse = current;
    for (int h = 0; h < kMaxHalvings; ++h, t *= 0.5) {
      trial = theta + t * step;
      trial_sse = sse(trial, samples);
      if (std::isfinite(trial_sse) && trial_sse < current) {
        improved = true;
        break;
      }
    }
    // No descent along the Gauss-Newton direction: stationary point.
    if (!improved) break;

    const double moved = (t * step).norm();
    theta = trial;
    const double previous = current;
    current = trial_sse;
    if (moved <= 1e-14 * (1.0 + theta.norm()) ||
        previous - current <= 1e-16 * previous) {
      ++it;
      break;
    }
  }
  return {theta, current, it, it < kMaxIterations};
}

// Logit-linear regression on the samples normalised by the sample range.
Vec4 initial_guess(std::span<const SimilaritySample> samples) {
  auto [lo_it, hi_it] = std::minmax_element(
      samples.begin(), samples.end(),
      [](const auto& a, const auto& b) { return a.epsilon < b.epsilon; });
  const double a_low = lo_it->epsilon;
  const double a_high = hi_it->epsilon;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& s : samples) {
    const double y =
        std::clamp((s.epsilon - a_low) / (a_high - a_low), 0.01, 0.99);
    const double z = std::log(y / (1.0 - y));
    sx += s.snr;
    sy += z;
    sxx += s.snr * s.snr;
    sxy += s.snr * z;
  }
  const double n = static_cast<double>(samples.size());
  const double denom = n * sxx - sx * sx;
  double growth = (n * sxy - sx * sy) / denom;
  if (!(growth > 0.0)) growth = 1e-3;
  const double shift = (sy - growth * sx) / n;
  return {a_low, a_high, growth, shift};
}

// Coarse search over (growth, midpoint); asymptotes enter linearly and are
// solved exactly for each grid cell.
Vec4 grid_search(std::span<const SimilaritySample> samples) {
  auto [lo_it, hi_it] = std::minmax_element(
      samples.begin(), samples.end(),
      [](const auto& a, const auto& b) { return a.snr < b.snr; });
  const double x_min = lo_it->snr;
  const double x_max = hi_it->snr;
  const double width = x_max - x_min;

  Vec4 best{0, 0, 0, 0};
  double best_sse = std::numeric_limits<double>::infinity();
  constexpr int kGrowthSteps = 40;
  constexpr int kMidSteps = 41;
  for (int gi = 0; gi < kGrowthSteps; ++gi) {
    const double growth =
        std::pow(10.0, -1.0 + 3.0 * gi / (kGrowthSteps - 1)) / width;
    for (int mi = 0; mi < kMidSteps; ++mi) {
      const double mid = x_min - width + 3.0 * width * mi / (kMidSteps - 1);
      const double shift = -growth * mid;
      // Normal equations for eps = a_low * (1 - s) + a_high * s.
      double s00 = 0, s01 = 0, s11 = 0, b0 = 0, b1 = 0;
      for (const auto& smp : samples) {
        const double s = sigmoid(growth * smp.snr + shift);
        const double u = 1.0 - s;
        s00 += u * u;
        s01 += u * s;
        s11 += s * s;
        b0 += u * smp.epsilon;
        b1 += s * smp.epsilon;
      }
      const double det = s00 * s11 - s01 * s01;
      if (std::abs(det) < 1e-300) continue;
      const double a_low = (b0 * s11 - b1 * s01) / det;
      const double a_high = (s00 * b1 - s01 * b0) / det;
      if (!(a_low < a_high)) continue;
      const Vec4 cand{a_low, a_high, growth, shift};
      const double e = sse(cand, samples);
      if (e < best_sse) {
        best_sse = e;
        best = cand;
      }
    }
  }
  return best;
}

}  // namespace

void LogisticParams::validate() const {
  if (!(std::isfinite(a_low) && std::isfinite(a_high) && std::isfinite(growth) &&
        std::isfinite(shift) && std::isfinite(k_symbols)))
    throw ValidationError("logistic parameters must be finite");
  if (!(a_low >= 0.0)) throw ValidationError("a_low must be >= 0");
  if (!(a_low < a_high)) throw ValidationError("a_low must be < a_high");
  if (!(a_high <= 1.0)) throw ValidationError("a_high must be <= 1");
  if (!(growth > 0.0)) throw ValidationError("growth must be > 0");
  if (!(k_symbols >= 1.0)) throw ValidationError("k_symbols must be >= 1");
}

double eval_epsilon(const LogisticParams& params, double snr) {
  return params.a_low +
         (params.a_high - params.a_low) * sigmoid(params.growth * snr + params.shift);
}

double invert_epsilon(const LogisticParams& params, double target) {
  if (!(target > params.a_low && target < params.a_high))
    throw TargetOutOfRange("similarity target " + std::to_string(target) +
                           " is outside (a_low, a_high)");
  const double y = (target - params.a_low) / (params.a_high - params.a_low);
  return (std::log(y / (1.0 - y)) - params.shift) / params.growth;
}

FitResult fit_logistic(std::span<const SimilaritySample> samples,
                       double k_symbols) {
  if (samples.size() < kMinSamples)
    throw DegenerateSamples("need at least " + std::to_string(kMinSamples) +
                            " samples, got " + std::to_string(samples.size()));
  for (const auto& s : samples) {
    if (!(std::isfinite(s.snr) && s.snr >= 0.0))
      throw ValidationError("sample snr must be finite and >= 0");
    if (!(s.epsilon >= 0.0 && s.epsilon <= 1.0))
      throw ValidationError("sample epsilon must lie in [0, 1]");
  }
  const auto eps_equal = [&](const auto& s) {
    return s.epsilon == samples.front().epsilon;
  };
  const auto snr_equal = [&](const auto& s) { return s.snr == samples.front().snr; };
  if (std::all_of(samples.begin(), samples.end(), eps_equal))
    throw DegenerateSamples("all epsilon values are equal");
  if (std::all_of(samples.begin(), samples.end(), snr_equal))
    throw DegenerateSamples("all snr values are equal");

  const double n = static_cast<double>(samples.size());

  auto primary = gauss_newton(initial_guess(samples), samples);
  if (primary.ok && valid(unpack(primary.theta, k_symbols)))
    return {unpack(primary.theta, k_symbols), primary.sse / n, primary.iterations,
            false};

  auto fallback = gauss_newton(grid_search(samples), samples);
  if (fallback.ok && valid(unpack(fallback.theta, k_symbols)))
    return {unpack(fallback.theta, k_symbols), fallback.sse / n,
            primary.iterations + fallback.iterations, true};

  throw NoConvergence("logistic fit did not reach a valid minimum");
}

std::vector<SimilaritySample> read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sample file: " + path);

  std::vector<SimilaritySample> out;
  std::string line;
  int lineno = 0;
  const auto strip = [](std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  };
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  ++lineno;
  strip(line);
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  if (line != "snr_linear,epsilon")
    throw ParseError("expected header 'snr_linear,epsilon'", lineno);

  const auto parse = [&](std::string_view field) {
    double v = 0.0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc{} || ptr != end)
      throw ParseError("bad number '" + std::string(field) + "'", lineno);
    return v;
  };

  while (std::getline(in, line)) {
    ++lineno;
    strip(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw ParseError("expected two comma-separated fields", lineno);
    const std::string_view view(line);
    out.push_back({parse(view.substr(0, comma)), parse(view.substr(comma + 1))});
  }
  return out;
}

}  // namespace semnoma
