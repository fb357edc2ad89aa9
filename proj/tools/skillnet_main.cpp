// skillnet: batch analysis of a job-skill bipartite matrix.
//
//   skillnet pipeline     --config run.json [overrides]
//   skillnet spectroscopy --config run.json --job <id> [overrides]
//   skillnet heatmap      --config run.json --x <field> --y <field>
//                         --class <field> [--sigma 32] [overrides]
//
// Overrides: --seed, --level (fitness + jobs projection), --samples,
// --threshold, --out. Exit codes: 0 ok, 2 config, 3 data, 4 numerical.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "skillnet/cli.hpp"

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> level;
    std::optional<int> samples;
    std::optional<double> threshold;
    std::optional<std::string> out;
};

void add_common_options(CLI::App* cmd, std::string& config_path, Overrides& overrides) {
    cmd->add_option("--config", config_path, "Run configuration (JSON)")->required();
    cmd->add_option("--seed", overrides.seed, "Override the validation seed");
    cmd->add_option("--level", overrides.level,
                    "Override the fitness and jobs-projection levels "
                    "(detailed|broad|minor|major)");
    cmd->add_option("--samples", overrides.samples, "Override the null-model sample count");
    cmd->add_option("--threshold", overrides.threshold, "Override the validation threshold");
    cmd->add_option("--out", overrides.out, "Override the output directory");
}

skillnet::RunConfig configure(const std::string& config_path, const Overrides& overrides) {
    skillnet::RunConfig config = skillnet::load_run_config(config_path);
    if (overrides.seed) config.validation.seed = *overrides.seed;
    if (overrides.level) {
        const skillnet::Level level = skillnet::parse_level(*overrides.level);
        config.fitness_level = level;
        config.jobs_projection_level = level;
    }
    if (overrides.samples) config.validation.sample_count = *overrides.samples;
    if (overrides.threshold) config.validation.threshold = *overrides.threshold;
    if (overrides.out) config.output_dir = *overrides.out;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Job-skill fitness, relatedness and coherence analysis"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides overrides;

    CLI::App* pipeline = app.add_subcommand("pipeline", "Run the full analysis pipeline");
    add_common_options(pipeline, config_path, overrides);

    CLI::App* spectroscopy =
        app.add_subcommand("spectroscopy", "Export one job's skills by ascending complexity");
    add_common_options(spectroscopy, config_path, overrides);
    std::string job_id;
    spectroscopy->add_option("--job", job_id, "Job id at the fitness level")->required();

    CLI::App* heatmap =
        app.add_subcommand("heatmap", "Export Gaussian-smoothed class density grids");
    add_common_options(heatmap, config_path, overrides);
    std::string x_field, y_field, class_field;
    double sigma = 32.0;
    heatmap->add_option("--x", x_field, "X axis field")->required();
    heatmap->add_option("--y", y_field, "Y axis field")->required();
    heatmap->add_option("--class", class_field, "Class field (abstract_manual|routine)")
        ->required();
    heatmap->add_option("--sigma", sigma, "Gaussian width in grid cells (default 32)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const skillnet::RunConfig config = configure(config_path, overrides);
        if (pipeline->parsed()) skillnet::cmd_pipeline(config, std::cout);
        else if (spectroscopy->parsed()) skillnet::cmd_spectroscopy(config, job_id, std::cout);
        else skillnet::cmd_heatmap(config, x_field, y_field, class_field, sigma, std::cout);
    } catch (const skillnet::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const skillnet::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const skillnet::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
