#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace ffpat::cli {

using Json = nlohmann::ordered_json;

/// 17 significant digits, enough to round-trip a double.
std::string fmt17(double v);

/// CSV with the parameter echo as leading "# key = value" comment lines.
class CsvWriter {
 public:
  CsvWriter(const Json& echo, std::vector<std::string> columns);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const noexcept { return text_; }

 private:
  std::size_t width_;
  std::string text_;
};

/// Writes to `path`, or to `fallback` when path is empty or "-". Paths ending
/// in ".gz" are compressed.
void write_text(const std::string& path, const std::string& content, std::ostream& fallback);
std::string read_text(const std::string& path);

}  // namespace ffpat::cli
