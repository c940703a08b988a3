#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tempo {

// Rectangular numeric result set with an ordered metadata block. Serialized
// as CSV with '# key: value' header lines; values print with 17 significant
// digits so a rerun reproduces the file byte for byte.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;
};

std::string format_real(double v);
std::string to_csv(const ResultTable& table);
void write_text_file(const std::string& path, const std::string& content);

// FNV-1a; stable across platforms, used for the config hash in metadata.
std::uint64_t fnv1a64(std::string_view text);
std::string hex64(std::uint64_t v);

}  // namespace tempo
