#include "denseflock/app/commands.hpp"
#include "denseflock/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace denseflock;

int main(int argc, char** argv) {
  CLI::App cli{"Density-induced and Cucker-Smale flocking simulator"};
  cli.require_subcommand(1);

  std::string config_path;
  std::string output_dir;

  auto* run = cli.add_subcommand("run", "simulate one config and write CSV output");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("-o,--output-dir", output_dir, "override output_dir");

  app::SweepOptions sweep_options;
  std::string summary = "sweep.csv";
  auto* sweep = cli.add_subcommand("sweep", "run every point of a config's [sweep] grid");
  sweep->add_option("config", config_path, "config file with a [sweep] section")->required();
  sweep->add_option("-s,--summary", summary, "summary CSV path")->capture_default_str();
  sweep->add_option("-j,--jobs", sweep_options.jobs, "worker threads (0 = all cores)")->capture_default_str();
  sweep->add_flag("--write-runs", sweep_options.write_runs, "also write every run's files under output_dir");

  double tolerance_scale = 1.0;
  auto* verify = cli.add_subcommand("verify", "run the built-in invariant and oracle checks");
  verify->add_option("--tolerance-scale", tolerance_scale, "multiply every tolerance")->capture_default_str();

  auto* classify = cli.add_subcommand("classify", "simulate a three_body config and report its regime");
  classify->add_option("config", config_path, "config file")->required();

  auto* show = cli.add_subcommand("show-config", "print a config with every default filled in");
  show->add_option("config", config_path, "config file")->required();

  CLI11_PARSE(cli, argc, argv);

  try {
    if (*verify) return app::cmd_verify(tolerance_scale, std::cout);
    if (*sweep) {
      sweep_options.summary = summary;
      return app::cmd_sweep(parse_document(app::read_text(config_path)), sweep_options, std::cout);
    }
    RunConfig config = parse_config(app::read_text(config_path));
    if (!output_dir.empty()) config.output_dir = output_dir;
    if (*run) return app::cmd_run(config, std::cout);
    if (*classify) return app::cmd_classify(config, std::cout);
    std::cout << serialize_config(config);
    return app::Ok;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return app::ConfigFailure;
  } catch (const IntegrationFault& e) {
    std::cerr << "integration fault: " << e.what() << '\n';
    return app::IntegrationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return app::ConfigFailure;
  }
}
