// spamstake CLI: run the incentive-mechanism simulation, the accuracy
// curve experiment, or one-off feature extraction.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spamstake/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Incentivized crowdsourced spam-detection simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int64_t seed = -1;
    app.add_option("--config", config_path, "Path to a JSON config file");
    app.add_option("--seed", seed, "Master seed (overrides config)");
    app.add_option("--out", out_dir, "Output directory (overrides config)");

    auto* simulate = app.add_subcommand("simulate", "Run the full simulation");
    simulate->fallthrough();
    auto* curve = app.add_subcommand("curve", "Accuracy vs. training-set size");
    curve->fallthrough();
    std::vector<size_t> sizes{10, 50, 100, 200, 500, 1000};
    curve->add_option("--sizes", sizes, "Training-set sizes to evaluate");
    auto* extract = app.add_subcommand("extract", "Print features for one URL");
    extract->fallthrough();
    std::string url;
    extract->add_option("url", url, "URL to analyze")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        spamstake::RunConfig config = config_path.empty()
                                          ? spamstake::default_config()
                                          : spamstake::load_config(config_path);
        if (seed >= 0) config.seed = static_cast<uint64_t>(seed);
        if (!out_dir.empty()) config.out_dir = out_dir;

        if (simulate->parsed())
            return spamstake::cmd_simulate(config, std::cout, std::cerr);
        if (curve->parsed())
            return spamstake::cmd_curve(config, sizes, std::cout, std::cerr);
        if (extract->parsed())
            return spamstake::cmd_extract(url, config, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
