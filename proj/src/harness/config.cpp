#include "cgolab/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "cgolab/errors.hpp"
#include "cgolab/grid.hpp"

namespace cgolab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad number for '" + key + "': '" + v + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("bad non-negative integer for '" + key + "': '" + v + "'");
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(parse_double(key, item));
  return out;
}

std::optional<BumpSpec> parse_bump(const std::string& key, const std::string& v, bool complex_amp) {
  if (v == "none") return std::nullopt;
  const auto d = parse_doubles(key, v);
  const std::size_t want = complex_amp ? 5 : 4;
  if (d.size() != want) {
    throw ConfigError("'" + key + "' needs " + std::to_string(want) + " comma-separated numbers or 'none'");
  }
  BumpSpec b;
  b.center = {d[0], d[1]};
  b.radius = d[2];
  b.amplitude = complex_amp ? cplx(d[3], d[4]) : cplx(d[3], 0.0);
  return b;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::string fmt_bump(const std::optional<BumpSpec>& b, bool complex_amp) {
  if (!b) return "none";
  std::string out = fmt(b->center.real()) + ", " + fmt(b->center.imag()) + ", " + fmt(b->radius) +
                    ", " + fmt(b->amplitude.real());
  if (complex_amp) out += ", " + fmt(b->amplitude.imag());
  return out;
}

}  // namespace

void ExperimentConfig::set(const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in);
  const std::string v = trim(value_in);
  if (key == "kind") {
    kind = v;
  } else if (key == "L") {
    side_length = parse_double(key, v);
  } else if (key == "N") {
    resolution = parse_uint(key, v);
  } else if (key == "s") {
    s = parse_double(key, v);
  } else if (key == "taus") {
    taus = parse_doubles(key, v);
  } else if (key == "tau") {
    tau = parse_double(key, v);
  } else if (key == "x") {
    const auto d = parse_doubles(key, v);
    if (d.size() != 2) throw ConfigError("'x' needs two numbers");
    x = {d[0], d[1]};
  } else if (key == "v1") {
    v1 = parse_bump(key, v, false);
  } else if (key == "v2") {
    v2 = parse_bump(key, v, false);
  } else if (key == "a") {
    a = parse_bump(key, v, true);
  } else if (key == "xs_count") {
    xs_count = parse_uint(key, v);
  } else if (key == "tol") {
    tol = parse_double(key, v);
  } else if (key == "max_iter") {
    max_iter = parse_uint(key, v);
  } else if (key == "seed") {
    seed = parse_uint(key, v);
  } else if (key == "threads") {
    threads = parse_uint(key, v);
  } else if (key == "samples") {
    samples = parse_uint(key, v);
  } else if (key == "probes") {
    probes = parse_uint(key, v);
  } else if (key == "band_modes") {
    band_modes = static_cast<int>(parse_uint(key, v));
  } else if (key == "energy_k") {
    energy_k = parse_double(key, v);
  } else if (key == "dn_modes") {
    dn_modes = static_cast<int>(parse_uint(key, v));
  } else if (key == "field") {
    if (v != "bump" && v != "zero") throw ConfigError("'field' must be bump or zero");
    field = v;
  } else if (key == "input") {
    input = v;
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

void ExperimentConfig::validate() const {
  if (!(s > 0.0 && s < 1.0)) throw ConfigError("s must lie in (0, 1)");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (threads == 0) throw ConfigError("threads must be >= 1");
  try {
    const Grid2D g = make_grid(side_length, resolution);
    for (const auto* b : {&v1, &v2}) {
      if (*b) make_bump(**b, g);
    }
    if (a) make_bump(*a, g);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  for (double t : taus) {
    if (!(t >= 1.0)) throw ConfigError("every tau must be >= 1");
  }
}

std::map<std::string, std::string> ExperimentConfig::entries() const {
  std::map<std::string, std::string> e;
  e["kind"] = kind;
  e["L"] = fmt(side_length);
  e["N"] = std::to_string(resolution);
  e["s"] = fmt(s);
  std::string t;
  for (std::size_t k = 0; k < taus.size(); ++k) t += (k ? ", " : "") + fmt(taus[k]);
  e["taus"] = t;
  e["tau"] = fmt(tau);
  e["x"] = fmt(x.real()) + ", " + fmt(x.imag());
  e["v1"] = fmt_bump(v1, false);
  e["v2"] = fmt_bump(v2, false);
  e["a"] = fmt_bump(a, true);
  e["xs_count"] = std::to_string(xs_count);
  e["tol"] = fmt(tol);
  e["max_iter"] = std::to_string(max_iter);
  e["seed"] = std::to_string(seed);
  e["threads"] = std::to_string(threads);
  e["samples"] = std::to_string(samples);
  e["probes"] = std::to_string(probes);
  e["band_modes"] = std::to_string(band_modes);
  e["energy_k"] = fmt(energy_k);
  e["dn_modes"] = std::to_string(dn_modes);
  e["field"] = field;
  e["input"] = input;
  return e;
}

std::map<std::string, double> ExperimentConfig::derived_exponents() const {
  return {{"p", 1.0 / (1.0 - s)}, {"q", 4.0 / (3.0 - s)}, {"p_star", 2.0 / (s + 1.0)}};
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    base.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

void apply_overrides(ExperimentConfig& cfg, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + o + "' is not key=value");
    cfg.set(o.substr(0, eq), o.substr(eq + 1));
  }
}

}  // namespace cgolab
