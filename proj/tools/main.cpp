#include "commands.hpp"
#include "config.hpp"

#include "ghshot/batch.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Shot-noise simulation of generalised hyperbolic Levy processes"};
    std::string config_path, out_dir = ".", command = "simulate";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    app.add_option("--config", config_path, "JSON configuration file")->required();
    app.add_option("--seed", seed, "master seed (overrides the config)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--cmd", command, "command to run")
        ->check(CLI::IsMember({"simulate", "marginal-test", "diagnostics"}));
    app.add_option("--threads", threads, "worker threads (overrides the config)")
        ->check(CLI::NonNegativeNumber);
    CLI11_PARSE(app, argc, argv);

    try {
        ghcli::RunConfig c = ghcli::load_config(config_path);
        if (seed)
            c.seed = *seed;
        if (threads)
            c.threads = *threads;
        if (!c.seed) {
            std::cerr << config_path << ": /seed: a master seed is required (config or --seed)\n";
            return 2;
        }
        ghshot::set_threads(c.threads);
        if (command == "simulate")
            return ghcli::cmd_simulate(c, out_dir, std::cerr);
        if (command == "marginal-test")
            return ghcli::cmd_marginal_test(c, out_dir, std::cerr);
        return ghcli::cmd_diagnostics(c, out_dir, std::cerr);
    } catch (const ghcli::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
