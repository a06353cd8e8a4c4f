// Command-line front end. Talks to the library only through the C API.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sirs/sirs.h"

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> horizon;
  std::optional<int> replicas;
  std::string out;
};

std::string json_escape(const std::string& s) {
  std::string r;
  for (char ch : s) {
    switch (ch) {
      case '"': r += "\\\""; break;
      case '\\': r += "\\\\"; break;
      case '\n': r += "\\n"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          r += buf;
        } else {
          r += ch;
        }
    }
  }
  return r;
}

int report_error(sirs_status status) {
  std::cout << "{\n  \"status\": \"error\",\n  \"kind\": \"" << sirs_status_name(status)
            << "\",\n  \"message\": \"" << json_escape(sirs_last_error()) << "\"\n}\n";
  return sirs_status_exit_code(status);
}

sirs_status load(const std::string& path, sirs_scenario** out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cout << "{\n  \"status\": \"error\",\n  \"kind\": \"io\",\n  \"message\": \"cannot read "
              << json_escape(path) << "\"\n}\n";
    return SIRS_ERR_IO;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return sirs_scenario_parse(buf.str().c_str(), out);
}

int run_scenario(sirs_scenario* sc, const Overrides& o) {
  if (o.seed) sirs_scenario_set_seed(sc, *o.seed);
  if (o.horizon) sirs_scenario_set_horizon(sc, *o.horizon);
  if (o.replicas) sirs_scenario_set_replicas(sc, *o.replicas);
  if (!o.out.empty()) {
    sirs_scenario_set_output_dir(sc, o.out.c_str());
  } else if (sirs_scenario_output_dir(sc) == nullptr) {
    const char* env = std::getenv("SIRS_OUTPUT_DIR");
    sirs_scenario_set_output_dir(sc, env != nullptr && *env != '\0' ? env : "sirs_out");
  }
  char* text = nullptr;
  const sirs_status st = sirs_scenario_run(sc, &text);
  if (text != nullptr) std::cout << text;
  sirs_string_free(text);
  return sirs_status_exit_code(st);
}

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "Base seed for the replicas");
  cmd->add_option("--horizon", o.horizon, "Simulation horizon");
  cmd->add_option("--replicas", o.replicas, "Number of independent replicas");
  cmd->add_option("--out", o.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Switched-environment SIRS simulator and analysis tool"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sirs_version());

  Overrides run_opts;
  std::string run_config;
  auto* run_cmd = app.add_subcommand("run", "Run the analyses described by a config file");
  run_cmd->add_option("config", run_config, "Scenario config (JSON)")->required();
  add_overrides(run_cmd, run_opts);

  std::string validate_config;
  auto* validate_cmd = app.add_subcommand("validate", "Check a config without running it");
  validate_cmd->add_option("config", validate_config, "Scenario config (JSON)")->required();

  Overrides preset_opts;
  std::string preset_name;
  auto* preset_cmd = app.add_subcommand(
      "preset", "Run a built-in scenario (qualitative reproduction of the worked examples)");
  preset_cmd->add_option("name", preset_name, "example1, example2 or example3")
      ->required()
      ->check(CLI::IsMember({"example1", "example2", "example3"}));
  add_overrides(preset_cmd, preset_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  sirs_scenario* sc = nullptr;
  int code = 0;
  if (*run_cmd) {
    const sirs_status st = load(run_config, &sc);
    if (st == SIRS_ERR_IO) return sirs_status_exit_code(st);
    code = st != SIRS_OK ? report_error(st) : run_scenario(sc, run_opts);
  } else if (*validate_cmd) {
    const sirs_status st = load(validate_config, &sc);
    if (st == SIRS_ERR_IO) return sirs_status_exit_code(st);
    if (st != SIRS_OK) return report_error(st);
    char* text = nullptr;
    size_t count = 0;
    const sirs_status vs = sirs_scenario_validate(sc, &text, &count);
    if (vs != SIRS_OK) {
      code = report_error(vs);
    } else {
      std::cout << text;
      code = count == 0 ? 0 : 3;
    }
    sirs_string_free(text);
  } else if (*preset_cmd) {
    const sirs_status st = sirs_scenario_preset(preset_name.c_str(), &sc);
    code = st != SIRS_OK ? report_error(st) : run_scenario(sc, preset_opts);
  }
  sirs_scenario_destroy(sc);
  return code;
}
