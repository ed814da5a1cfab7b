#include "ffpat/cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <zlib.h>

#include "ffpat/error.hpp"

namespace ffpat::cli {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const Json& echo, std::vector<std::string> columns) : width_(columns.size()) {
  for (const auto& [k, v] : echo.items()) text_ += "# " + k + " = " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) text_ += (i ? "," : "") + columns[i];
  text_ += "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw Error(Errc::InvalidInput, "CSV row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const bool quote = cells[i].find_first_of(",\"") != std::string::npos;
    text_ += i ? "," : "";
    text_ += quote ? "\"" + cells[i] + "\"" : cells[i];
  }
  text_ += "\n";
}

namespace {

bool gz(const std::string& path) { return path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0; }

}  // namespace

void write_text(const std::string& path, const std::string& content, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << content;
    return;
  }
  if (gz(path)) {
    gzFile f = gzopen(path.c_str(), "wb9");
    if (!f) throw Error(Errc::InvalidInput, "cannot write " + path);
    const int n = gzwrite(f, content.data(), static_cast<unsigned>(content.size()));
    gzclose(f);
    if (n != static_cast<int>(content.size())) throw Error(Errc::InvalidInput, "short write to " + path);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidInput, "cannot write " + path);
  out << content;
}

std::string read_text(const std::string& path) {
  if (gz(path)) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw Error(Errc::InvalidInput, "cannot read " + path);
    std::string out;
    char buf[1 << 15];
    int n;
    while ((n = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
    const bool bad = n < 0;
    gzclose(f);
    if (bad) throw Error(Errc::CorruptCache, "gzip stream is damaged: " + path);
    return out;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidInput, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ffpat::cli
