// hardylab <command> --config <path> [--out <path>] [--format csv|json]
//
// Exit status: 0 when every verdict holds, 2 when an inequality is violated,
// 1 on usage, configuration or computation errors.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "hardylab.h"

namespace {

constexpr int kExitError = 1;

int report_error(const std::string& context) {
  std::fprintf(stderr, "hardylab: %s: %s\n", context.c_str(), hl_last_error());
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp constants and verification reports for weighted Hardy inequalities"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_path;
  std::string format;
  double bound_scale = 1.0;

  for (const char* name : {"constant", "verify", "sweep", "lambda", "rearrange"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run a '") + name + "' configuration");
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "report path (default: configured path or stdout)");
    sub->add_option("--format", format, "report format (default: configured, else csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    // Test hook: scales every asserted bound to exercise the failure path.
    sub->add_option("--test-bound-scale", bound_scale)->group("")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  hl_run_options options{bound_scale};
  hl_report* report = nullptr;
  if (hl_run_config_file(config_path.c_str(), command.c_str(), &options, &report) != HL_OK) {
    return report_error(command);
  }
  const std::string path = out_path.empty() ? hl_report_output_path(report) : out_path;
  const char* fmt = format.empty() ? nullptr : format.c_str();
  if (hl_report_write(report, path.c_str(), fmt) != HL_OK) {
    hl_report_destroy(report);
    return report_error("writing report");
  }
  const int status = hl_report_exit_status(report);
  hl_report_destroy(report);
  return status;
}
