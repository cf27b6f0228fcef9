#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "semnoma/config.hpp"
#include "semnoma/errors.hpp"

using namespace semnoma;

TEST_CASE("empty config yields the reference scenario") {
  const auto cfg = parse_config("");
  const ScenarioConfig& s = cfg.scenario;
  CHECK(s.primary_link.distance == 15.0);
  CHECK(s.secondary_link.distance == 45.0);
  CHECK(s.primary_link.ref_pathloss_db == -30.0);
  CHECK(s.secondary_link.pathloss_exp == 4.0);
  CHECK(s.primary_link.tx_power == 1.0);
  CHECK(s.secondary_link.tx_power == 1.0);
  CHECK(s.noise_power == doctest::Approx(1e-11).epsilon(1e-14));
  CHECK(s.logistic == kDeepScK5);
  CHECK(s.similarity_threshold == 0.9);
  CHECK(s.source.bits_per_word == 40.0);
  CHECK(s.source.eps_c == 1.0);
  CHECK(s.source.info_per_msg / s.source.words_per_msg == 1.0);
  CHECK(s.bandwidth.hertz == 1.0);
  CHECK(s.snr_unit == SnrUnit::Linear);
  CHECK(cfg == RunConfig{});
}

TEST_CASE("single-key override") {
  const auto cfg = parse_config("# lower secondary power\np0 = 0.5\n");
  ScenarioConfig expected{};
  expected.secondary_link.tx_power = 0.5;
  CHECK(cfg.scenario == expected);
}

TEST_CASE("invariant violations are validation errors") {
  CHECK_THROWS_AS(parse_config("similarity_threshold = 1.5\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("a_low = 0.99\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("r_min_grid = 1, 0\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("realizations = 0\n"), ValidationError);
}

TEST_CASE("malformed files are parse errors with line context") {
  try {
    parse_config("p0 = 1\n\nbogus_key = 3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("p0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("p0 = abc\n"), ParseError);
  CHECK_THROWS_AS(parse_config("p0 = 1\np0 = 2\n"), ParseError);
  CHECK_THROWS_AS(parse_config("noise_power_dbm = -80\nnoise_power_w = 1e-11\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_config("snr_unit = log\n"), ParseError);
  CHECK_THROWS_AS(parse_config("schemes = opportunistic,,bit_only\n"), ParseError);
  CHECK_THROWS_AS(parse_config("scheme = hybrid\n"), ParseError);
  CHECK_THROWS_AS(parse_config("seed = -1\n"), ParseError);
}

TEST_CASE("experiment keys") {
  const auto cfg = parse_config(
      "seed = 18446744073709551615\nrealizations = 1000\nworkers = 3\n"
      "scheme = bit_only\nschemes = sem_only, bit_only\nr_min = 6\n"
      "r_min_grid = 0, 2.5, 6\np0_grid = 0.5,1\nsnr_unit = db   # comment\n"
      "noise_power_dbm = -90\n");
  CHECK(cfg.experiment.seed == 18446744073709551615ULL);
  CHECK(cfg.experiment.realizations == 1000);
  CHECK(cfg.experiment.workers == 3);
  CHECK(cfg.experiment.scheme == SchemeKind::BitOnly);
  CHECK(cfg.experiment.schemes ==
        std::vector<SchemeKind>{SchemeKind::SemOnly, SchemeKind::BitOnly});
  CHECK(cfg.experiment.r_min == 6.0);
  CHECK(cfg.experiment.r_min_grid == std::vector<double>{0, 2.5, 6});
  CHECK(cfg.experiment.p0_grid == std::vector<double>{0.5, 1});
  CHECK(cfg.scenario.snr_unit == SnrUnit::Decibel);
  CHECK(cfg.scenario.noise_power == doctest::Approx(1e-12).epsilon(1e-14));
}

TEST_CASE("format_config round-trips exactly") {
  CHECK(parse_config(format_config(RunConfig{})) == RunConfig{});

  RunConfig odd = parse_config(
      "p0 = 0.123456789012345678\nnoise_power_dbm = -83.3\na_low = 0.1\n"
      "growth = 0.3333333333333333\nsnr_unit = db\nschemes = bit_only\n"
      "r_min_grid = 0.1, 0.7\nseed = 99\n");
  CHECK(parse_config(format_config(odd)) == odd);
}

TEST_CASE("load_config reads files") {
  const auto path = std::filesystem::temp_directory_path() / "semnoma_cfg_test.conf";
  {
    std::ofstream out(path);
    out << "p0 = 2\n";
  }
  CHECK(load_config(path.string()).secondary_link.tx_power == 2.0);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config(path.string()), IoError);
}
