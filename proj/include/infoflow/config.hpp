#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "infoflow/fit.hpp"
#include "infoflow/model.hpp"
#include "infoflow/walk.hpp"

namespace infoflow {

enum class IngestMode { kIncrements, kFinals };

std::string to_string(IngestMode mode);

/// Everything a subcommand needs; fully reproducible from its echo.
struct RunConfig {
  ModelParams model;
  std::uint64_t seed = 1;
  std::size_t replicates = 1000;
  std::int64_t horizon = 100;
  std::size_t max_agents = 1'000'000;
  Metric metric = Metric::kLikes;
  bool flow = false;
  FitMethod method = FitMethod::kLeastSquares;
  bool use_enum = false;
  bool lifetime = false;
  IngestMode mode = IngestMode::kIncrements;
  double bin_width = 1.0;
  std::string out = "out";
  std::string input;
  std::string store;
  std::string pmf;
  std::string hist;
};

/// Flat key -> value map. Later sources override earlier ones.
using KeyValues = std::map<std::string, std::string>;

/// Grammar: one `key = value` per line; blank lines and lines starting with
/// '#' are ignored; surrounding whitespace is trimmed. ConfigError on a line
/// without '=' or a repeated key.
KeyValues parse_key_values(std::string_view text);

KeyValues read_config_file(const std::filesystem::path& path);

/// Builds a RunConfig from defaults overlaid with `values`. Unknown keys and
/// invalid values raise ConfigError naming the key. Without phi.variant the
/// response curve defaults to saturating with c = E0.
RunConfig resolve_config(const KeyValues& values);

/// Key-value text that resolve_config maps back to an equal configuration.
std::string echo_config(const RunConfig& config);

}  // namespace infoflow
