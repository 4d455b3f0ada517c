#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "alr/cli.hpp"

namespace {

void report(const alr::cli::json& err) {
  std::cerr << "alr: " << err["kind"].get<std::string>() << " (" << err["module"].get<std::string>() << ")";
  if (!err["mode"].is_null()) std::cerr << " mode " << err["mode"].get<int>();
  std::cerr << ": " << err["message"].get<std::string>() << "\n";
}

alr::cli::json usage_error(const std::string& command, const std::string& message) {
  return {{"status", "error"}, {"exit_code", alr::cli::exit_invalid}, {"command", command},
          {"kind", "validation"}, {"module", "cli"}, {"message", message}, {"mode", nullptr}};
}

}  // namespace

int main(int argc, char** argv) {
  using namespace alr::cli;
  CLI::App app{"Anomalous localized resonance experiments"};
  app.set_version_flag("--version", std::string("alr ") + tool_version);
  app.require_subcommand(1, 1);

  std::string spec_path, out_dir = ".";
  int jobs = alr::default_jobs();
  bool validate_only = false;
  for (const auto& name : commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--validate", validate_only, "print the normalized spec and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_invalid;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  json spec;
  {
    std::ifstream f(spec_path);
    if (!f) {
      report(usage_error(command, "cannot open spec file " + spec_path));
      return exit_invalid;
    }
    try {
      spec = json::parse(f);
    } catch (const json::parse_error& e) {
      report(usage_error(command, std::string("spec is not valid JSON: ") + e.what()));
      return exit_invalid;
    }
  }

  if (validate_only) {
    try {
      std::cout << validate_spec(command, spec).dump(2) << "\n";
      return exit_ok;
    } catch (const ValidationError& e) {
      report(usage_error(command, e.what()));
      return exit_invalid;
    }
  }

  const auto res = run(command, spec, out_dir, jobs, spec_path);
  if (res.exit_code != exit_ok) report(res.error);
  return res.exit_code;
}
