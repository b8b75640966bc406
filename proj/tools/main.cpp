#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sqg/io.hpp"
#include "sqg/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"sqglab: pseudo-spectral laboratory for stochastic SQG and 2D critical "
                 "Boussinesq equations with transport noise"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    int threads = -1;

    for (const char* name : {"simulate", "limit", "scaling", "verify"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "path to the key = value configuration file")
            ->required();
        sub->add_option("--output", output_dir, "output directory (overrides output_dir)");
        sub->add_option("--threads", threads, "worker count (0 = core count)");
    }

    CLI11_PARSE(app, argc, argv);

    const std::string command_name = app.get_subcommands().front()->get_name();
    try {
        const sqg::Command command = sqg::parse_command(command_name);
        const std::string text = sqg::read_file(config_path);
        const sqg::RunConfig cfg = sqg::parse_config(text, command);
        const auto result = sqg::run_command(
            command, cfg,
            output_dir.empty() ? std::nullopt : std::make_optional(output_dir),
            threads < 0 ? std::nullopt : std::make_optional(threads));
        if (!result.message.empty())
            std::fprintf(result.exit_code == 0 ? stdout : stderr, "%s\n",
                         result.message.c_str());
        return result.exit_code;
    } catch (const sqg::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
