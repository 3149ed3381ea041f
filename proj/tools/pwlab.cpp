// pwlab: exact verification of Patterson-Walker extension identities.
//
//   pwlab check <scenario.json> [--format text|json] [--jobs N]
//                               [--degree-bound D] [--gallery]
//   pwlab manifest
//
// Exit code 0 iff every executed check passes.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pwlab/gallery.hpp"

using namespace pwlab;

int main(int argc, char** argv) {
  CLI::App app{"exact Patterson-Walker extension laboratory"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "run checks from a scenario file or the gallery");
  std::string path;
  std::string format = "text";
  int jobs = 1;
  int degree_bound = -1;
  bool gallery = false;
  check->add_option("scenario", path, "scenario JSON file");
  check->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  check->add_option("--jobs", jobs, "number of worker threads")->check(CLI::PositiveNumber);
  check->add_option("--degree-bound", degree_bound, "polynomial degree bound for solvers");
  check->add_flag("--gallery", gallery, "run every bundled fixture");

  auto* manifest = app.add_subcommand("manifest", "list every check with its identity");

  CLI11_PARSE(app, argc, argv);

  try {
    if (manifest->parsed()) {
      for (const auto& def : check_registry()) {
        std::cout << def.name << "\n    " << def.anchor << "\n    exercises:";
        for (const auto& op : def.covers) std::cout << " " << op;
        std::cout << "\n";
      }
      return 0;
    }
    std::vector<CheckReport> reports;
    if (gallery) {
      reports = run_gallery(jobs);
    } else {
      if (path.empty()) {
        std::cerr << "pwlab check: need a scenario file or --gallery\n";
        return 2;
      }
      std::ifstream in(path);
      if (!in) {
        std::cerr << "pwlab check: cannot open '" << path << "'\n";
        return 2;
      }
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      Scenario sc = parse_scenario_string(text);
      if (degree_bound > 0) sc.options.degree_bound = degree_bound;
      reports.push_back(run_checks(sc, check->count("--jobs") ? jobs : 0));
    }
    std::cout << (format == "json" ? report_json(reports) : report_text(reports));
    for (const auto& rep : reports)
      if (!rep.all_passed()) return 1;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "pwlab: " << e.what() << "\n";
    return 2;
  }
}
