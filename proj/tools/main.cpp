#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ntdlab/experiment.hpp"

namespace {

// Exit codes: 0 success, 1 validation error, 2 numerical failure.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partial-data Neumann-to-Dirichlet experiment runner"};
    app.require_subcommand(1);

    std::string config_path;
    ntdlab::RunOptions options;
    auto* run = app.add_subcommand("run", "Run one experiment from a config file");
    run->add_option("config", config_path, "Experiment config file")->required();
    run->add_option("--output", options.output_override, "Output directory (overrides config)");
    run->add_option("--threads", options.threads, "Worker thread cap")->check(CLI::PositiveNumber);
    run->add_flag("--verbose", options.verbose, "Progress output on stderr");

    CLI11_PARSE(app, argc, argv);

    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open config file: " << config_path << "\n";
        return kExitValidation;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string config_text = buffer.str();

    try {
        std::istringstream stream(config_text);
        const ntdlab::ExperimentConfig config = ntdlab::parse_config(stream);
        const std::string dir = ntdlab::run_experiment(config, config_text, options);
        std::cout << "wrote " << dir << "\n";
        return kExitOk;
    } catch (const ntdlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ntdlab::InvalidArgument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}
