// Command-line front end: run experiment configs, built-in presets, and
// ad-hoc diversity-multiplexing computations.
//
//   saf_cli run <config.json>
//   saf_cli preset <name> [--out DIR] [--seed S] [--samples N]
//   saf_cli dmt <instance> [--grid K] [--describe]
//
// SAF_WORKERS bounds the Monte-Carlo worker count; results do not depend
// on it. Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include "saf/dmt.hpp"
#include "saf/errors.hpp"
#include "saf/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>

namespace {

int dispatch(const std::function<int()>& body) {
    try {
        return body();
    } catch (const saf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

void report(const std::vector<std::string>& files) {
    for (const std::string& f : files) std::cout << f << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"slotted amplify-and-forward outage and DMT laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "run an experiment config file");
    run->add_option("config", config_path, "JSON experiment config")->required();

    std::string preset_name, out_dir = ".";
    std::uint64_t seed = 0;
    std::int64_t samples = 0;
    CLI::App* pre = app.add_subcommand("preset", "run a built-in scenario");
    pre->add_option("name", preset_name, "fig1|fig3|fig4|fig5|fig7|fig8|fig9")
        ->required();
    pre->add_option("--out", out_dir, "output directory");
    pre->add_option("--seed", seed, "override the preset seed");
    pre->add_option("--samples", samples, "override the Monte-Carlo sample count");

    std::string instance;
    int grid = 101;
    bool describe = false;
    CLI::App* dmt = app.add_subcommand("dmt", "print a tradeoff curve as CSV");
    dmt->add_option("instance", instance,
                    "genie:N:M, dumb:N:M, smart:N:M, 2r3s:ordered, 2r3s:unordered")
        ->required();
    dmt->add_option("--grid", grid, "number of multiplexing-gain points");
    dmt->add_flag("--describe", describe, "print the exponent program instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (run->parsed()) {
        return dispatch([&] {
            report(saf::run_experiment(saf::ExperimentConfig::load(config_path)));
            return 0;
        });
    }
    if (pre->parsed()) {
        return dispatch([&] {
            saf::ExperimentConfig cfg = saf::preset(preset_name);
            cfg.output_dir = out_dir;
            if (seed != 0) cfg.seed = seed;
            if (samples != 0) cfg.n_samples = samples;
            report(saf::run_experiment(cfg));
            return 0;
        });
    }
    return dispatch([&] {
        const saf::ExponentLp model = saf::make_exponent_instance(instance);
        if (describe) {
            std::cout << model.describe();
            return 0;
        }
        const saf::DmtCurve curve = saf::dmt_curve_from_lp(model, grid);
        std::cout << "r,d\n";
        for (int i = 0; i < grid; ++i) {
            const double r = static_cast<double>(i) / (grid - 1);
            std::printf("%.10g,%.10g\n", r, curve.eval(r));
        }
        return 0;
    });
}
