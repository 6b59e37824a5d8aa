#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "commands.hpp"

namespace flightlab::cli {
namespace {

std::string flag_name(const std::string& key) {
  std::string f = key;
  for (char& ch : f) {
    if (ch == '_') ch = '-';
  }
  return "--" + f;
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size()) throw ConfigError(key + ": malformed number '" + text + "'");
  return v;
}

Json parse_flag(const Param& p, const std::string& text) {
  switch (p.type) {
    case ParamType::Number:
      return parse_number(p.key, text);
    case ParamType::Integer: {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (text.empty() || used != text.size()) {
        throw ConfigError(p.key + ": malformed integer '" + text + "'");
      }
      return v;
    }
    case ParamType::String:
      return text;
    case ParamType::NumberList: {
      Json list = Json::array();
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) list.push_back(parse_number(p.key, item));
      return list;
    }
  }
  return nullptr;
}

Json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file '" + path + "'");
  try {
    return Json::parse(is);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

bool is_manifest(const Json& j) { return j.is_object() && j.contains("command") && j.contains("config"); }

std::uint64_t seed_value(const Json& v) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ConfigError("seed must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

void print_summary(std::ostream& out, const Context& ctx, const RunManifest& m) {
  for (const auto& [key, value] : m.summary.items()) out << key << ": " << value.dump() << '\n';
  for (const auto& f : m.outputs) out << "wrote " << (ctx.out_dir / f).string() << '\n';
  out << "wrote " << (ctx.out_dir / "manifest.json").string() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"flightlab: finite-velocity random motions, closed-form laws and PDE checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_dir = ".";
  std::string config_path;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  auto* seed_opt = app.add_option("--seed", seed, "master seed (stochastic commands)");
  app.add_option("--out-dir", out_dir, "output directory");
  app.add_option("--config", config_path,
                 "JSON config overriding flags; a manifest is replayed with its own seed");
  app.add_option("--threads", threads, "worker threads (speed only, never results)")
      ->check(CLI::Range(1u, 1024u));

  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : commands()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    for (const auto& p : cmd.params) {
      sub->add_option(flag_name(p.key), raw[cmd.name][p.key], p.help);
    }
    subs[cmd.name] = sub;
  }
  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "re-run a manifest");
  replay->add_option("manifest", replay_path, "manifest.json of an earlier run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Context ctx;
    ctx.out_dir = out_dir;
    ctx.threads = threads;
    if (*seed_opt) ctx.seed = seed;

    const Command* command = nullptr;
    Json given = Json::object();
    Json file;
    if (*replay) {
      file = read_json_file(replay_path);
      if (!is_manifest(file)) throw ConfigError("'" + replay_path + "' is not a manifest");
      command = &find_command(file.at("command").get<std::string>());
    } else {
      for (const auto& cmd : commands()) {
        if (!*subs[cmd.name]) continue;
        command = &cmd;
        for (const auto& p : cmd.params) {
          if (subs[cmd.name]->count(flag_name(p.key)) > 0) {
            given[p.key] = parse_flag(p, raw[cmd.name][p.key]);
          }
        }
      }
      if (!config_path.empty()) file = read_json_file(config_path);
    }

    if (!file.is_null()) {
      if (is_manifest(file)) {
        if (file.at("command").get<std::string>() != command->name) {
          throw ConfigError("manifest was written by '" + file.at("command").get<std::string>() +
                            "', not '" + command->name + "'");
        }
        given = file.at("config");
        if (file.contains("seed") && command->stochastic) ctx.seed = seed_value(file.at("seed"));
        if (file.contains("seed") && !command->stochastic && given.value("n", 0) > 0) {
          ctx.seed = seed_value(file.at("seed"));
        }
      } else {
        if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
        for (const auto& [key, value] : file.items()) {
          if (key == "seed") {
            ctx.seed = seed_value(value);
          } else if (key == "threads") {
            if (!value.is_number_integer() || value.get<long long>() < 1) {
              throw ConfigError("threads must be a positive integer");
            }
            ctx.threads = value.get<unsigned>();
          } else {
            given[key] = value;
          }
        }
      }
    }

    const Json config = normalize_config(*command, given);
    const RunManifest m = execute(*command, config, ctx);
    print_summary(out, ctx, m);
    if (!m.passed) {
      err << command->name << ": verification threshold not met\n";
      return kExitThreshold;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace flightlab::cli
