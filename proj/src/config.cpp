#include "tempo/config.hpp"

#include <cctype>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Parses a full number, rejecting trailing junk; `what` names the expectation.
double number_or_throw(const std::string& text, const char* what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError(std::string("expected ") + what + ", got '" + text + "'");
  }
  if (used != t.size()) {
    throw ConfigError(std::string("expected ") + what + ", got '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

}  // namespace

double parse_time(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError("expected a time like '100 ns', got '" + text + "'");
  }
  const std::string unit = trim(t.substr(used));
  if (unit == "s") return v;
  if (unit == "ms") return v * 1e-3;
  if (unit == "us") return v * 1e-6;
  if (unit == "ns") return v * 1e-9;
  if (unit == "ps") return v * 1e-12;
  if (unit == "fs") return v * 1e-15;
  throw ConfigError("time '" + text + "' needs a unit of s, ms, us, ns, ps, or fs");
}

double parse_rate(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError("expected a rate like '100 /s', got '" + text + "'");
  }
  const std::string unit = trim(t.substr(used));
  if (unit == "/s" || unit == "1/s") return v;
  throw ConfigError("rate '" + text + "' needs the unit /s");
}

double parse_real(const std::string& text) { return number_or_throw(text, "a number"); }

int parse_int(const std::string& text) {
  const double v = number_or_throw(text, "an integer");
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-9 || std::abs(r) > 1e15) {
    throw ConfigError("expected an integer, got '" + text + "'");
  }
  return static_cast<int>(r);
}

std::vector<int> parse_int_list(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) return {};
  const auto dots = t.find("..");
  if (dots != std::string::npos) {
    const int lo = parse_int(t.substr(0, dots));
    const int hi = parse_int(t.substr(dots + 2));
    if (hi < lo) throw ConfigError("range '" + text + "' runs backwards");
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::vector<int> out;
  for (const auto& part : split(t, ',')) out.push_back(parse_int(part));
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) return {};
  const auto dots = t.find("..");
  if (dots != std::string::npos) {
    const auto colon = t.find(':', dots);
    if (colon == std::string::npos) {
      throw ConfigError("real range '" + text + "' needs a step, like 0.5..5:0.25");
    }
    const double lo = parse_real(t.substr(0, dots));
    const double hi = parse_real(t.substr(dots + 2, colon - dots - 2));
    const double step = parse_real(t.substr(colon + 1));
    if (!(step > 0.0)) throw ConfigError("range step must be positive in '" + text + "'");
    if (hi < lo) throw ConfigError("range '" + text + "' runs backwards");
    std::vector<double> out;
    // Index-based stepping avoids accumulation drift; half-step slack keeps
    // the endpoint in despite rounding.
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5 + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      const double v = lo + static_cast<double>(i) * step;
      if (v > hi + 0.5 * step) break;
      out.push_back(v);
    }
    return out;
  }
  std::vector<double> out;
  for (const auto& part : split(t, ',')) out.push_back(parse_real(part));
  return out;
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + " is not 'key = value': '" +
                        line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + " has no key");
    if (!cfg.values_.emplace(key, value).second) {
      throw ConfigError("duplicate config key '" + key + "'");
    }
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

const std::string* Config::find(const std::string& key) const {
  seen_.insert(key);
  const auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const std::string* v = find(key);
  return v ? *v : fallback;
}

std::string Config::require_string(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) throw ConfigError("missing required config key '" + key + "'");
  return *v;
}

namespace {
template <typename F>
auto keyed(const std::string& key, F&& fn) {
  // Prefixes parser failures with the key path, so errors read
  // "sweep.d: expected an integer, got 'x'".
  try {
    return fn();
  } catch (const ConfigError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}
}  // namespace

double Config::get_real(const std::string& key, double fallback) const {
  const std::string* v = find(key);
  return v ? keyed(key, [&] { return parse_real(*v); }) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
  const std::string* v = find(key);
  return v ? keyed(key, [&] { return parse_int(*v); }) : fallback;
}

double Config::get_time(const std::string& key, double fallback) const {
  const std::string* v = find(key);
  return v ? keyed(key, [&] { return parse_time(*v); }) : fallback;
}

double Config::get_rate(const std::string& key, double fallback) const {
  const std::string* v = find(key);
  return v ? keyed(key, [&] { return parse_rate(*v); }) : fallback;
}

std::vector<int> Config::get_int_list(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) throw ConfigError("missing required config key '" + key + "'");
  return keyed(key, [&] { return parse_int_list(*v); });
}

std::vector<double> Config::get_real_list(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) throw ConfigError("missing required config key '" + key + "'");
  return keyed(key, [&] { return parse_real_list(*v); });
}

std::vector<double> Config::get_real_list(const std::string& key,
                                          const std::vector<double>& fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  return keyed(key, [&] { return parse_real_list(*v); });
}

void Config::reject_unknown() const {
  std::string extras;
  for (const auto& [key, value] : values_) {
    if (seen_.count(key) == 0) {
      if (!extras.empty()) extras += ", ";
      extras += key;
    }
  }
  if (!extras.empty()) throw ConfigError("unknown config keys: " + extras);
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [key, value] : values_) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  return out;
}

}  // namespace tempo
