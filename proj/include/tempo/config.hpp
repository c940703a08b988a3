#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tempo {

// Unit-aware scalar parsers. Physical quantities must carry explicit units:
// times accept s/ms/us/ns/ps/fs, rates accept /s or 1/s. Dimensionless values
// are plain numbers. All throw ConfigError with the offending text.
double parse_time(const std::string& text);
double parse_rate(const std::string& text);
double parse_real(const std::string& text);
int parse_int(const std::string& text);
// "2,5,9" or inclusive range "2..20".
std::vector<int> parse_int_list(const std::string& text);
// "0.5,1,2" or inclusive stepped range "0.5..5.0:0.25".
std::vector<double> parse_real_list(const std::string& text);

// key = value configuration file: one pair per line, '#' comments, dotted key
// paths, duplicate keys rejected. Typed getters mark keys as recognized;
// reject_unknown() then reports anything left over, so misspelled keys never
// pass silently.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  double get_real(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  double get_time(const std::string& key, double fallback) const;
  double get_rate(const std::string& key, double fallback) const;
  std::vector<int> get_int_list(const std::string& key) const;         // required
  std::vector<double> get_real_list(const std::string& key) const;     // required
  std::vector<double> get_real_list(const std::string& key, const std::vector<double>& fallback) const;

  // Throws ConfigError naming every key no getter has touched.
  void reject_unknown() const;

  // Sorted "key=value" lines of the effective configuration; the basis of the
  // reproducibility hash in output metadata.
  std::string canonical() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> seen_;

  const std::string* find(const std::string& key) const;
};

}  // namespace tempo
