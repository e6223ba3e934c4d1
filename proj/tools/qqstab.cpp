#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "qqstab/cli/commands.hpp"

namespace fs = std::filesystem;
using namespace qqstab;
using namespace qqstab::cli;

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for the quadratic-quartic functional equation"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::string format = "json";
  bool quiet = false;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "directory for report.json, points.csv, trace.csv");
  app.add_option("--format", format, "stdout rendering")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--quiet", quiet, "print nothing on success");

  for (const auto& name : command_names()) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  CommandResult res;
  try {
    const RunConfig cfg = load_run_config(config_path);
    res = run_command(command, cfg);
    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      write_file(fs::path(out_dir) / "report.json", res.report.dump(2) + "\n");
      if (!res.points.header.empty())
        write_file(fs::path(out_dir) / "points.csv", res.points.render());
      if (!res.trace.header.empty())
        write_file(fs::path(out_dir) / "trace.csv", res.trace.render());
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (!quiet || res.status != kPass) {
    if (format == "csv" && !res.points.header.empty())
      std::cout << res.points.render();
    else
      std::cout << res.report.dump(2) << "\n";
  }
  if (res.status != kPass && res.report.contains("error"))
    std::cerr << "error: " << res.report["error"]["message"].get<std::string>() << "\n";
  return res.status;
}
