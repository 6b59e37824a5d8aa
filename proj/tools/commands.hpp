#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

// Subcommands of the flightlab tool. Each takes a fully normalized config
// (see normalize_config) and writes its artifacts into the output directory.

namespace flightlab::cli {

using Json = nlohmann::ordered_json;

/// Invalid or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParamType { Number, Integer, String, NumberList };

struct Param {
  std::string key;
  ParamType type;
  Json default_value;
  std::string help;
};

struct Command {
  std::string name;
  std::string help;
  bool stochastic;  // needs --seed
  std::vector<Param> params;
};

const std::vector<Command>& commands();
const Command& find_command(const std::string& name);

/// Checks keys and types against the command's parameters and fills in
/// defaults, in declaration order. Throws ConfigError.
Json normalize_config(const Command& command, const Json& given);

struct Context {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

struct RunManifest {
  std::string command;
  Json config;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;  // relative to the output directory
  Json summary = Json::object();
  bool passed = true;  // false: verification or threshold failure (exit code 3)

  Json to_json() const;
};

/// Runs a command on a normalized config and writes manifest.json.
RunManifest execute(const Command& command, const Json& config, const Context& context);

RunManifest cmd_sample(const Json& config, const Context& context);
RunManifest cmd_density(const Json& config, const Context& context);
RunManifest cmd_verify(const Json& config, const Context& context);
RunManifest cmd_compare(const Json& config, const Context& context);
RunManifest cmd_charfn(const Json& config, const Context& context);
RunManifest cmd_moments(const Json& config, const Context& context);

}  // namespace flightlab::cli
