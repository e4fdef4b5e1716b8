#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace imbench {

/// Shortest round-trip decimal form of a double, locale independent. Keeps
/// CSV output byte-stable across runs and machines.
inline std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

/// Minimal CSV emitter: comma separated, one header row, '\n' line ends,
/// decimal points, no quoting (all emitted fields are identifier- or
/// number-shaped).
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(&out) {}

  CsvWriter& field(std::string_view text) {
    if (!first_) *out_ << ',';
    *out_ << text;
    first_ = false;
    return *this;
  }
  CsvWriter& field(double value) { return field(format_double(value)); }
  CsvWriter& field(std::uint64_t value) { return field(std::to_string(value)); }
  CsvWriter& field(std::uint32_t value) { return field(std::to_string(value)); }
  void end_row() {
    *out_ << '\n';
    first_ = true;
  }

 private:
  std::ostream* out_;
  bool first_ = true;
};

}  // namespace imbench
