#include <iostream>

#include "CLI11.hpp"

#include "tietz/runner.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Faber-Tietz series on capped spheres and tori"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool strict = false;
    bool verbose = false;
    auto* run = app.add_subcommand("run", "decompose the configured target and run its checks");
    run->add_option("config", config, "experiment configuration")->required();
    auto* out_opt = run->add_option("--out-dir", out_dir, "directory for coefficients.csv, residuals.csv, report.json");
    auto* seed_opt = run->add_option("--seed", seed, "seed for the random sample points of the checks");
    run->add_flag("--strict", strict, "treat an ill-conditioned Gram matrix as a numerical failure");
    run->add_flag("-v,--verbose", verbose, "log progress to stderr");

    auto* list = app.add_subcommand("list-checks", "print the verification checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : tietz::io::exit_config_error;
    }

    if (list->parsed()) {
        std::cout << tietz::io::list_checks();
        return 0;
    }

    tietz::io::RunOptions options;
    if (*out_opt) options.out_dir = out_dir;
    if (*seed_opt) options.seed = seed;
    options.strict = strict;
    if (verbose) options.log = &std::cerr;
    try {
        return tietz::io::run(config, options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return tietz::io::exit_numerical_failure;
    }
}
