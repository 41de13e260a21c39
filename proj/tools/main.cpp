// Command-line harness: parses a run config, dispatches one mode, and
// writes CSV/JSON artifacts.  Exit codes: 0 ok, 2 config error, 3
// non-convergence or failed check suite, 4 floor breach, 5 inner
// divergence.

#include "fsilab/config.hpp"
#include "fsilab/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

int dispatch(const std::string& config_path, const std::string& output_dir,
             fsilab::RunMode forced_mode, bool force_mode) {
    fsilab::RunConfig cfg;
    try {
        cfg = config_path.empty() ? fsilab::parse_config_text(fsilab::default_config_text(),
                                                              "<defaults>")
                                  : fsilab::parse_config(config_path);
        if (force_mode) cfg.mode = forced_mode;
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        cfg.validate();
    } catch (const fsilab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return fsilab::ExitConfigError;
    }

    fsilab::RunSummary summary = fsilab::run(cfg);
    std::cout << "mode=" << fsilab::run_mode_name(cfg.mode) << " status=" << summary.status
              << " exit=" << summary.exit_code << "\n";
    for (const auto& w : summary.warnings) std::cout << "warning: " << w << "\n";
    for (const auto& a : summary.artifacts)
        std::cout << "wrote " << cfg.output_dir << "/" << a << "\n";
    return summary.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fsilab: coupled compressible-flow / elastic-wave channel simulator"};
    app.require_subcommand(1);

    std::string config_path, output_dir;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "run configuration file");
        sub->add_option("-o,--output", output_dir, "output directory (overrides config)");
    };

    auto* simulate = app.add_subcommand("simulate", "run a fixed-point iteration (mode "
                                                    "lambda or pi from the config)");
    add_common(simulate);
    std::string sim_mode;
    simulate->add_option("--mode", sim_mode, "force iteration map: lambda | pi");

    auto* lemmas = app.add_subcommand("verify-lemmas", "trace/interpolation/hidden-"
                                                       "regularity suites");
    add_common(lemmas);
    auto* compat = app.add_subcommand("check-compat", "evaluate the compatibility "
                                                      "conditions of the initial data");
    add_common(compat);
    auto* contraction = app.add_subcommand("contraction-study",
                                           "one-step contraction factors over a T sweep");
    add_common(contraction);
    auto* mms = app.add_subcommand("mms", "manufactured-solution order study");
    add_common(mms);
    auto* recompute = app.add_subcommand("recompute-norms",
                                         "re-emit norms.csv from a stored checkpoint");
    add_common(recompute);
    std::string checkpoint_path;
    recompute->add_option("--checkpoint", checkpoint_path, "checkpoint file")->required();
    auto* defaults = app.add_subcommand("print-defaults", "print the default config");

    CLI11_PARSE(app, argc, argv);

    if (defaults->parsed()) {
        std::cout << fsilab::default_config_text();
        return 0;
    }
    if (simulate->parsed()) {
        if (!sim_mode.empty() && sim_mode != "lambda" && sim_mode != "pi") {
            std::cerr << "config error: --mode must be lambda or pi\n";
            return fsilab::ExitConfigError;
        }
        const bool force = !sim_mode.empty();
        return dispatch(config_path, output_dir,
                        sim_mode == "lambda" ? fsilab::RunMode::Lambda : fsilab::RunMode::Pi,
                        force);
    }
    if (lemmas->parsed())
        return dispatch(config_path, output_dir, fsilab::RunMode::Lemmas, true);
    if (compat->parsed())
        return dispatch(config_path, output_dir, fsilab::RunMode::Compat, true);
    if (contraction->parsed())
        return dispatch(config_path, output_dir, fsilab::RunMode::Contraction, true);
    if (mms->parsed()) return dispatch(config_path, output_dir, fsilab::RunMode::Mms, true);
    if (recompute->parsed()) {
        fsilab::RunConfig cfg;
        try {
            cfg = config_path.empty()
                      ? fsilab::parse_config_text(fsilab::default_config_text(), "<defaults>")
                      : fsilab::parse_config(config_path);
            if (!output_dir.empty()) cfg.output_dir = output_dir;
        } catch (const fsilab::ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return fsilab::ExitConfigError;
        }
        fsilab::RunSummary summary = fsilab::recompute_norms(cfg, checkpoint_path);
        std::cout << "mode=recompute-norms status=" << summary.status
                  << " exit=" << summary.exit_code << "\n";
        for (const auto& w : summary.warnings) std::cout << "warning: " << w << "\n";
        return summary.exit_code;
    }
    return 0;
}
