#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ffpat::cli {

/// Ordered key -> value settings. Keys use dashes ("deg-a-max"); underscores
/// are accepted on input and normalised.
using Settings = std::map<std::string, std::string>;

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
/// Throws Error(ConfigError) with the offending line number.
Settings parse_config(std::string_view text);
/// Reads a config file. A file holding a previous run's JSON output is also
/// accepted: its "params.config" object is used, and "params.subcommand"
/// comes back as the "subcommand" key.
Settings load_config(const std::string& path);
/// Canonical form: one `key = value` per line, sorted by key.
std::string dump_config(const Settings& s);
std::string normalize_key(std::string_view key);

/// Turns settings into "--key value" tokens (or "--key" for "true" flags).
std::vector<std::string> to_args(const Settings& s, const std::vector<std::string>& flag_keys);

}  // namespace ffpat::cli
