#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "dnls/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"dnlslab - multi-soliton and kink-soliton train laboratory for two "
                 "derivative NLS equations"};
    app.require_subcommand(1);

    std::string config_path;
    std::string outdir = "out";
    std::vector<std::string> overrides;

    const std::vector<std::string> commands = {"profile", "residual", "evolve", "fixpoint",
                                               "sweep"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "path to the JSON run configuration")
            ->required();
        sub->add_option("--out", outdir, "output directory (default: out)");
        sub->add_option("--override", overrides,
                        "KEY=VALUE config override (dotted keys, repeatable)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        dnls::harness::json cfg = dnls::harness::load_config(config_path);
        for (const auto& kv : overrides) dnls::harness::apply_override(cfg, kv);
        const std::string cmd = app.get_subcommands().front()->get_name();
        return dnls::harness::run_command_guarded(cmd, cfg, outdir);
    } catch (const std::exception& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return 2;
    }
}
