// atomwall: command-line front end over the C API.
//
//   atomwall <energy|sweep|table|epsilon|alpha> --config run.json [--out file] [--format csv|json]
//
// Exit codes: 0 success, 2 usage (bad arguments, unreadable config path),
// 3 invalid configuration or data, 4 numerical convergence failure, 5 internal.

#include "atomwall/atomwall.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kInvalid = 3, kNumerical = 4, kInternal = 5 };

int exit_code(aw_status status) {
  switch (status) {
  case AW_OK: return kOk;
  case AW_ERR_USAGE:
  case AW_ERR_IO:
  case AW_ERR_NULL_ARGUMENT: return kUsage;
  case AW_ERR_DOMAIN:
  case AW_ERR_CONFIG:
  case AW_ERR_VALIDATION: return kInvalid;
  case AW_ERR_NUMERICAL: return kNumerical;
  case AW_ERR_INTERNAL: return kInternal;
  }
  return kInternal;
}

int fail(aw_status status) {
  std::cerr << "atomwall: " << aw_status_name(status) << ": " << aw_last_error() << "\n";
  return exit_code(status);
}

struct Options {
  std::string config;
  std::string out;
  std::string format;
};

int run(const std::string& command, const Options& opts) {
  aw_config* config = nullptr;
  if (auto st = aw_config_load(opts.config.c_str(), &config); st != AW_OK) return fail(st);

  char* text = nullptr;
  auto st = aw_run_command(config, command.c_str(), opts.format.empty() ? nullptr : opts.format.c_str(), &text);
  if (st != AW_OK) {
    aw_config_free(config);
    return fail(st);
  }

  std::string destination = opts.out;
  if (destination.empty()) {
    char* path = nullptr;
    if (aw_config_output_path(config, &path) == AW_OK) {
      destination = path;
      aw_string_free(path);
    }
  }
  aw_config_free(config);

  int code = kOk;
  if (destination.empty() || destination == "-") {
    std::fputs(text, stdout);
  } else {
    std::ofstream out(destination, std::ios::binary);
    if (!(out << text)) {
      std::cerr << "atomwall: cannot write " << destination << "\n";
      code = kUsage;
    }
  }
  aw_string_free(text);
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-temperature Casimir-Polder free energy of an atom near a flat wall"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(aw_version()));

  Options opts;
  const std::pair<const char*, const char*> commands[] = {
      {"energy", "Free energy at the first configured separation"},
      {"sweep", "Free energy and normalized ratio over all separations"},
      {"table", "Correction factors of model variants relative to a reference"},
      {"epsilon", "Dump eps(i xi) of the wall over the configured grid"},
      {"alpha", "Dump alpha(i xi) of the atom over the configured grid"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config, "Run configuration (JSON)")->required();
    sub->add_option("--out", opts.out, "Output file, '-' for stdout (default: config output.path)");
    sub->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  for (auto* sub : app.get_subcommands()) return run(sub->get_name(), opts);
  return kUsage;
}
