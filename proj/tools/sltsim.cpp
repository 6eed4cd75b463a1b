// sltsim: run one experiment and write <out> plus <out>.json.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "slt/config.hpp"
#include "slt/errors.hpp"
#include "slt/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo estimates of renormalized self-intersection local times of planar Brownian paths"};

  std::string subcommand = "converge";
  int k = 2;
  std::vector<double> eps;
  long paths = 10000;
  int steps = 4096;
  std::uint64_t seed = 0;
  std::string weight = "const:1";
  std::string out = "results.csv";
  std::string config_file;
  bool wall_time = false;
  bool serial = false;
  bool print_config = false;

  app.add_option("--subcommand", subcommand, "converge | hilbert | brick-check | image-check | lemma-delta")
      ->capture_default_str();
  app.add_option("--k", k, "multiplicity")->capture_default_str();
  app.add_option("--eps", eps, "strictly decreasing epsilon levels")->delimiter(',');
  app.add_option("--paths", paths, "number of Monte Carlo paths")->capture_default_str();
  app.add_option("--steps", steps, "grid steps per path")->capture_default_str();
  app.add_option("--seed", seed, "root seed")->capture_default_str();
  app.add_option("--weight", weight,
                 "const:<c> | jacobian:<map> | example31:<N>[:gs|:dyadic][:<coords>] | example32[:<mc>]")
      ->capture_default_str();
  app.add_option("--out", out, "CSV output path; the sidecar goes to <out>.json")->capture_default_str();
  app.add_option("--config", config_file, "JSON config; its keys override the flags");
  app.add_flag("--wall-time", wall_time, "fill the wall_time_s column (makes output run-dependent)");
  app.add_flag("--serial", serial, "run the path ensemble without OpenMP");
  app.add_flag("--print-config", print_config, "print the resolved config and exit");
  CLI11_PARSE(app, argc, argv);

  if (const char* env = std::getenv("SLT_NUM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }

  nlohmann::json doc = {{"subcommand", subcommand}, {"k", k},         {"eps", eps},
                        {"paths", paths},           {"steps", steps}, {"seed", seed},
                        {"weight", weight},         {"out", out},     {"wall_time", wall_time}};
  try {
    if (!config_file.empty()) {
      std::ifstream is(config_file);
      if (!is) {
        std::cerr << "error: cannot read config '" << config_file << "'\n";
        return 2;
      }
      std::stringstream buf;
      buf << is.rdbuf();
      nlohmann::json file;
      try {
        file = nlohmann::json::parse(buf.str());
      } catch (const nlohmann::json::parse_error& e) {
        throw slt::ConfigError({std::string("malformed JSON in '") + config_file + "': " + e.what()});
      }
      if (!file.is_object()) throw slt::ConfigError({"config file must hold a JSON object"});
      doc.merge_patch(file);
    }
    const slt::ExperimentConfig config = slt::parse_config_json(doc);
    if (print_config) {
      std::cout << slt::emit_config(config) << '\n';
      return 0;
    }

    slt::RunOptions options;
    options.execution = serial ? slt::Execution::kSerial : slt::Execution::kParallel;
    const slt::ExperimentResult result = slt::run_experiment(config, options);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    slt::write_outputs(config, result);
    std::cout << slt::format_csv(result.rows);
  } catch (const slt::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const slt::ExperimentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
