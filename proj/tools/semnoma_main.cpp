// semnoma: batch driver for the two-user uplink NOMA semantic/bit simulator.
//
//   semnoma <fit|point|sweep-rate|sweep-power|selftest> --config PATH
//           [--seed U64] [--n COUNT] [--out PATH] [--plot] [--workers N]
//
// Exit codes: 0 ok, 1 usage, 2 validation/parse/IO, 3 only infeasible
// results, 4 selftest failure.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "semnoma/config.hpp"
#include "semnoma/engine.hpp"
#include "semnoma/errors.hpp"
#include "semnoma/results.hpp"
#include "semnoma/selftest.hpp"
#include "semnoma/similarity.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kInfeasible = 3,
  kSelftestFailed = 4,
};

struct Manifest {
  std::string config_path;
  std::string out_path;
  std::string samples_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> realizations;
  std::optional<std::size_t> workers;
  bool plot = false;
};

void add_common(CLI::App* sub, Manifest& m, bool config_required) {
  auto* cfg = sub->add_option("--config", m.config_path, "Scenario config file");
  if (config_required) cfg->required();
  cfg->check(CLI::ExistingFile);
  sub->add_option("--seed", m.seed, "Master seed override");
  sub->add_option("--n", m.realizations, "Monte Carlo realizations override")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", m.out_path, "Output path (stdout when omitted)");
  sub->add_flag("--plot", m.plot, "Also write an SVG chart next to --out");
  sub->add_option("--workers", m.workers, "Worker threads (0 = all cores)");
}

semnoma::RunConfig load(const Manifest& m) {
  semnoma::RunConfig cfg =
      m.config_path.empty() ? semnoma::RunConfig{} : semnoma::load_run_config(m.config_path);
  if (m.seed) cfg.experiment.seed = *m.seed;
  if (m.realizations) cfg.experiment.realizations = *m.realizations;
  if (m.workers) cfg.experiment.workers = *m.workers;
  return cfg;
}

void emit_text(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw semnoma::IoError("cannot open output file: " + out_path);
  out << body;
  if (!out) throw semnoma::IoError("write failed: " + out_path);
}

int emit_rows(const std::vector<semnoma::PointResult>& rows, const Manifest& m,
              const std::string& x_label) {
  if (m.out_path.empty())
    std::cout << semnoma::format_results_csv(rows);
  else
    semnoma::write_results(rows, m.out_path, m.plot, x_label);
  for (const auto& r : rows)
    if (r.feasible) return kOk;
  std::cerr << "semnoma: every result row is infeasible\n";
  return kInfeasible;
}

int cmd_fit(const Manifest& m) {
  const auto cfg = load(m);
  const auto samples = semnoma::read_samples_csv(m.samples_path);
  const auto fit = semnoma::fit_logistic(samples, cfg.scenario.logistic.k_symbols);
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "# logistic fit over %zu samples: mse = %.9g, iterations = %d%s\n"
                "a_low = %.17g\na_high = %.17g\ngrowth = %.17g\nshift = %.17g\n"
                "k_symbols = %.17g\n",
                samples.size(), fit.mse, fit.iterations,
                fit.used_fallback ? ", grid fallback" : "", fit.params.a_low,
                fit.params.a_high, fit.params.growth, fit.params.shift,
                fit.params.k_symbols);
  emit_text(buf, m.out_path);
  return kOk;
}

int cmd_point(const Manifest& m) {
  const auto cfg = load(m);
  const auto& e = cfg.experiment;
  const auto row = semnoma::run_point(cfg.scenario, e.scheme, e.r_min, e.realizations,
                                      e.seed, e.workers);
  return emit_rows({row}, m, "minimum primary rate (bits/s/Hz)");
}

int cmd_sweep(const Manifest& m, semnoma::SweepAxis axis) {
  const auto cfg = load(m);
  const auto& e = cfg.experiment;
  semnoma::SweepSpec spec;
  spec.axis = axis;
  spec.grid = axis == semnoma::SweepAxis::RMin ? e.r_min_grid : e.p0_grid;
  spec.schemes = e.schemes;
  spec.realizations = e.realizations;
  spec.master_seed = e.seed;
  spec.fixed_r_min = e.r_min;
  const auto rows = semnoma::run_sweep(cfg.scenario, spec, e.workers);
  return emit_rows(rows, m,
                   axis == semnoma::SweepAxis::RMin ? "minimum primary rate (bits/s/Hz)"
                                                    : "secondary power P0 (W)");
}

int cmd_selftest(const Manifest& m) {
  const auto cfg = load(m);
  const bool ok = semnoma::run_selftest(std::cout, cfg.experiment.seed);
  std::cout << (ok ? "selftest passed\n" : "selftest FAILED\n");
  return ok ? kOk : kSelftestFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-user uplink NOMA simulator for bit and semantic users"};
  app.require_subcommand(1);

  Manifest m;
  auto* fit = app.add_subcommand("fit", "Fit logistic similarity constants to samples");
  add_common(fit, m, true);
  fit->add_option("--samples", m.samples_path, "CSV with header snr_linear,epsilon")
      ->required()
      ->check(CLI::ExistingFile);
  auto* point = app.add_subcommand("point", "Single (scheme, r_min, P0) point");
  add_common(point, m, true);
  auto* sweep_rate = app.add_subcommand("sweep-rate", "Sweep the primary rate constraint");
  add_common(sweep_rate, m, true);
  auto* sweep_power = app.add_subcommand("sweep-power", "Sweep the secondary power P0");
  add_common(sweep_power, m, true);
  auto* selftest = app.add_subcommand("selftest", "Oracle and round-trip self checks");
  add_common(selftest, m, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (m.plot && m.out_path.empty()) {
    std::cerr << "semnoma: --plot needs --out\n";
    return kUsage;
  }

  try {
    if (*fit) return cmd_fit(m);
    if (*point) return cmd_point(m);
    if (*sweep_rate) return cmd_sweep(m, semnoma::SweepAxis::RMin);
    if (*sweep_power) return cmd_sweep(m, semnoma::SweepAxis::P0);
    if (*selftest) return cmd_selftest(m);
  } catch (const semnoma::Error& e) {
    std::cerr << "semnoma: " << e.what() << '\n';
    return kValidation;
  }
  return kUsage;
}
