#include "semnoma/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

#include "semnoma/errors.hpp"
#include "semnoma/rate.hpp"

namespace semnoma {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

struct Cursor {
  std::string_view key;
  int line;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("key '" + std::string(key) + "': " + msg, line);
  }

  double number(std::string_view v) const {
    double out = 0.0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end || !std::isfinite(out))
      fail("expected a finite number, got '" + std::string(v) + "'");
    return out;
  }

  template <typename Int>
  Int integer(std::string_view v) const {
    Int out = 0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end)
      fail("expected a non-negative integer, got '" + std::string(v) + "'");
    return out;
  }

  template <typename F>
  auto list(std::string_view v, F&& item) const {
    std::vector<decltype(item(v))> out;
    while (true) {
      const auto comma = v.find(',');
      const auto field = trim(v.substr(0, comma));
      if (field.empty()) fail("empty list element");
      out.push_back(item(field));
      if (comma == std::string_view::npos) break;
      v.remove_prefix(comma + 1);
    }
    return out;
  }
};

using Setter = std::function<void(RunConfig&, std::string_view, const Cursor&)>;

template <typename Field>
Setter set_number(Field field) {
  return [field](RunConfig& c, std::string_view v, const Cursor& cur) {
    field(c) = cur.number(v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    t["primary_distance_m"] =
        set_number([](RunConfig& c) -> double& { return c.scenario.primary_link.distance; });
    t["secondary_distance_m"] = set_number(
        [](RunConfig& c) -> double& { return c.scenario.secondary_link.distance; });
    t["primary_power_w"] =
        set_number([](RunConfig& c) -> double& { return c.scenario.primary_link.tx_power; });
    t["p0"] = set_number(
        [](RunConfig& c) -> double& { return c.scenario.secondary_link.tx_power; });
    t["ref_pathloss_db"] = [](RunConfig& c, std::string_view v, const Cursor& cur) {
      c.scenario.primary_link.ref_pathloss_db = c.scenario.secondary_link.ref_pathloss_db =
          cur.number(v);
    };
    t["pathloss_exp"] = [](RunConfig& c, std::string_view v, const Cursor& cur) {
      c.scenario.primary_link.pathloss_exp = c.scenario.secondary_link.pathloss_exp =
          cur.number(v);
    };
    t["noise_power_dbm"] = [](RunConfig& c, std::string_view v, const Cursor& cur) {
      c.scenario.noise_power = dbm_to_watts(cur.number(v));
    };
    t["noise_power_w"] =
        set_number([](RunConfig& c) -> double& { return c.scenario.noise_power; });
    t["a_low"] = set_number([](RunConfig& c) -> double& { return c.scenario.logistic.a_low; });
    t["a_high"] =
        set_number([](RunConfig& c) -> double& { return c.scenario.logistic.a_high; });
    t["growth"] =
        set_number([](RunConfig& c) -> double& { return c.scenario.logistic.growth; });
    t["shift"] = set_number([](RunConfig& c) -> double& { return c.scenario.logistic.shift; });
    t["k_symbols"] =
        set_number([](RunConfig& c) -> double& { return c.scenario.logistic.k_symbols; });
    t["similarity_threshold"] =
        set_number([](RunConfig& c) -> double& { return c.scenario.similarity_threshold; });
    t["info_per_msg"] =
        set_number([](RunConfig& c) -> double& { return c.scenario.source.info_per_msg; });
    t["words_per_msg"] =
        set_number([](RunConfig& c) -> double& { return c.scenario.source.words_per_msg; });
    t["bits_per_word"] =
        set_number([](RunConfig& c) -> double& { return c.scenario.source.bits_per_word; });
    t["eps_c"] = set_number([](RunConfig& c) -> double& { return c.scenario.source.eps_c; });
    t["bandwidth_hz"] =
        set_number([](RunConfig& c) -> double& { return c.scenario.bandwidth.hertz; });
    t["snr_unit"] = [](RunConfig& c, std::string_view v, const Cursor& cur) {
      if (v == "linear")
        c.scenario.snr_unit = SnrUnit::Linear;
      else if (v == "db")
        c.scenario.snr_unit = SnrUnit::Decibel;
      else
        cur.fail("expected 'linear' or 'db'");
    };

    t["seed"] = [](RunConfig& c, std::string_view v, const Cursor& cur) {
      c.experiment.seed = cur.integer<std::uint64_t>(v);
    };
    t["realizations"] = [](RunConfig& c, std::string_view v, const Cursor& cur) {
      c.experiment.realizations = cur.integer<std::size_t>(v);
    };
    t["workers"] = [](RunConfig& c, std::string_view v, const Cursor& cur) {
      c.experiment.workers = cur.integer<std::size_t>(v);
    };
    t["r_min"] = set_number([](RunConfig& c) -> double& { return c.experiment.r_min; });
    const auto scheme = [](const Cursor& cur) {
      return [&cur](std::string_view s) {
        try {
          return parse_scheme(s);
        } catch (const ValidationError& e) {
          cur.fail(e.what());
        }
      };
    };
    t["scheme"] = [scheme](RunConfig& c, std::string_view v, const Cursor& cur) {
      c.experiment.scheme = scheme(cur)(v);
    };
    t["schemes"] = [scheme](RunConfig& c, std::string_view v, const Cursor& cur) {
      c.experiment.schemes = cur.list(v, scheme(cur));
    };
    t["r_min_grid"] = [](RunConfig& c, std::string_view v, const Cursor& cur) {
      c.experiment.r_min_grid = cur.list(v, [&](std::string_view s) { return cur.number(s); });
    };
    t["p0_grid"] = [](RunConfig& c, std::string_view v, const Cursor& cur) {
      c.experiment.p0_grid = cur.list(v, [&](std::string_view s) { return cur.number(s); });
    };
    return t;
  }();
  return table;
}

void validate_grid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw ValidationError(std::string(name) + " must not be empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ValidationError(std::string(name) + " must be strictly increasing");
}

void validate(const RunConfig& c) {
  c.scenario.validate();
  const auto& e = c.experiment;
  if (e.realizations < 1) throw ValidationError("realizations must be >= 1");
  if (e.schemes.empty()) throw ValidationError("schemes must not be empty");
  validate_grid(e.r_min_grid, "r_min_grid");
  validate_grid(e.p0_grid, "p0_grid");
  if (e.p0_grid.front() < 0.0) throw ValidationError("p0_grid values must be >= 0");
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, F&& f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += f(xs[i]);
  }
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line(raw);
    if (lineno == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'key = value', got '" + std::string(line) + "'", lineno);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const Cursor cur{key, lineno};
    const auto it = setters().find(key);
    if (it == setters().end()) cur.fail("unknown key");
    if (value.empty()) cur.fail("missing value");
    if (!seen.emplace(key).second) cur.fail("key given twice");
    if ((key == "noise_power_w" && seen.count("noise_power_dbm")) ||
        (key == "noise_power_dbm" && seen.count("noise_power_w")))
      cur.fail("noise_power_w and noise_power_dbm are mutually exclusive");
    it->second(cfg, value, cur);
  }
  validate(cfg);
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ScenarioConfig load_config(const std::string& path) { return load_run_config(path).scenario; }

std::string format_config(const RunConfig& cfg) {
  const auto& s = cfg.scenario;
  const auto& e = cfg.experiment;
  if (!(s.primary_link.ref_pathloss_db == s.secondary_link.ref_pathloss_db &&
        s.primary_link.pathloss_exp == s.secondary_link.pathloss_exp))
    throw ValidationError("config files share path-loss constants between links");

  std::ostringstream out;
  const auto kv = [&](const char* key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  out << "# scenario\n";
  kv("primary_distance_m", fmt_double(s.primary_link.distance));
  kv("secondary_distance_m", fmt_double(s.secondary_link.distance));
  kv("ref_pathloss_db", fmt_double(s.primary_link.ref_pathloss_db));
  kv("pathloss_exp", fmt_double(s.primary_link.pathloss_exp));
  kv("primary_power_w", fmt_double(s.primary_link.tx_power));
  kv("p0", fmt_double(s.secondary_link.tx_power));
  kv("noise_power_w", fmt_double(s.noise_power));
  kv("a_low", fmt_double(s.logistic.a_low));
  kv("a_high", fmt_double(s.logistic.a_high));
  kv("growth", fmt_double(s.logistic.growth));
  kv("shift", fmt_double(s.logistic.shift));
  kv("k_symbols", fmt_double(s.logistic.k_symbols));
  kv("similarity_threshold", fmt_double(s.similarity_threshold));
  kv("info_per_msg", fmt_double(s.source.info_per_msg));
  kv("words_per_msg", fmt_double(s.source.words_per_msg));
  kv("bits_per_word", fmt_double(s.source.bits_per_word));
  kv("eps_c", fmt_double(s.source.eps_c));
  kv("bandwidth_hz", fmt_double(s.bandwidth.hertz));
  kv("snr_unit", s.snr_unit == SnrUnit::Linear ? "linear" : "db");
  out << "# experiment\n";
  kv("seed", std::to_string(e.seed));
  kv("realizations", std::to_string(e.realizations));
  kv("workers", std::to_string(e.workers));
  kv("scheme", std::string(to_string(e.scheme)));
  kv("schemes", join(e.schemes, [](SchemeKind k) { return std::string(to_string(k)); }));
  kv("r_min", fmt_double(e.r_min));
  kv("r_min_grid", join(e.r_min_grid, fmt_double));
  kv("p0_grid", join(e.p0_grid, fmt_double));
  return out.str();
}

}  // namespace semnoma
