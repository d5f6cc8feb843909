// Command-line front end: entropy, ic, semsim and benchmark subcommands.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "dagic/commands.hpp"
#include "dagic/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Ontology entropy and graph-based information content"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "flat key = value config file");

  std::map<std::string, std::string> flags;
  const std::map<std::string, std::string> help = {
      {"obo", "OBO ontology file"},
      {"namespace", "keep only terms of this namespace"},
      {"relations", "comma-separated relationship types to follow besides is_a"},
      {"corpus", "annotation corpus"},
      {"corpus-format", "tsv or gaf"},
      {"min-depth", "drop annotations to terms shallower than this (default 2)"},
      {"metric", "gic, ric or sic"},
      {"bin-size", "pairs per bin (default 1000)"},
      {"workers", "worker threads for metric computation (0 = all cores)"},
      {"out-dir", "directory for output files"},
      {"bitscores", "BLAST bit score TSV (a, b, score)"},
      {"semsim", "precomputed semsim TSV for benchmark"},
      {"pairs", "gene pair list for semsim"},
      {"regression", "binned or raw"},
      {"count-mode", "gene or event"},
      {"depth-filter", "direct or after-propagation"},
  };
  for (const auto& key : dagic::config_keys()) {
    if (key == "include-identical") continue;
    app.add_option("--" + key, flags[key], help.at(key));
  }
  bool include_identical = false;
  auto* identical_flag =
      app.add_flag("--include-identical", include_identical, "keep RRBS = 1 pairs in the regression");

  app.add_subcommand("entropy", "ontology entropy H(M)")->fallthrough();
  app.add_subcommand("ic", "per-term information content table")->fallthrough();
  app.add_subcommand("semsim", "SimMax between annotated genes")->fallthrough();
  app.add_subcommand("benchmark", "SimMax vs RRBS binning and regression")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  dagic::RunConfig cfg;
  try {
    if (!config_path.empty()) dagic::apply_settings(cfg, dagic::parse_config_file(config_path));
    dagic::apply_settings(cfg, dagic::settings_from_env());
    dagic::Settings cli;
    for (const auto& [key, value] : flags)
      if (app.get_option("--" + key)->count() > 0) cli[key] = value;
    if (identical_flag->count() > 0) cli["include-identical"] = include_identical ? "true" : "false";
    dagic::apply_settings(cfg, cli);
  } catch (const dagic::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dagic::cli::exit_code_for(e);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return dagic::cli::run(command, cfg, std::cout, std::cerr);
}
