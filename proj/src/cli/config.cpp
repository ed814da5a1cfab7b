#include "ffpat/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ffpat/error.hpp"

namespace ffpat::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string normalize_key(std::string_view key) {
  std::string k = trim(key);
  std::replace(k.begin(), k.end(), '_', '-');
  while (!k.empty() && k.front() == '-') k.erase(k.begin());
  return k;
}

Settings parse_config(std::string_view text) {
  Settings out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::ConfigError, "config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = normalize_key(std::string_view(line).substr(0, eq));
    if (key.empty()) throw Error(Errc::ConfigError, "config line " + std::to_string(lineno) + ": empty key");
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    out[key] = value;
  }
  return out;
}

Settings load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ConfigError, "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::ConfigError, std::string("config JSON: ") + e.what());
    }
    if (j.contains("params") && j["params"].is_object()) j = j["params"];
    if (!j.contains("config") || !j["config"].is_object())
      throw Error(Errc::ConfigError, "JSON config lacks a \"config\" object");
    Settings out;
    for (auto& [k, v] : j["config"].items()) out[normalize_key(k)] = v.is_string() ? v.get<std::string>() : v.dump();
    if (j.contains("subcommand") && j["subcommand"].is_string()) out["subcommand"] = j["subcommand"].get<std::string>();
    return out;
  }
  return parse_config(text);
}

std::string dump_config(const Settings& s) {
  std::string out;
  for (const auto& [k, v] : s) out += k + " = " + v + "\n";
  return out;
}

std::vector<std::string> to_args(const Settings& s, const std::vector<std::string>& flag_keys) {
  std::vector<std::string> out;
  for (const auto& [k, v] : s) {
    if (std::find(flag_keys.begin(), flag_keys.end(), k) != flag_keys.end()) {
      if (v == "true" || v == "1") out.push_back("--" + k);
      else if (v != "false" && v != "0") throw Error(Errc::ConfigError, "flag '" + k + "' takes true or false");
      continue;
    }
    out.push_back("--" + k);
    out.push_back(v);
  }
  return out;
}

}  // namespace ffpat::cli
