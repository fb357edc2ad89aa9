#pragma once

// Batch front end: a declarative run configuration (JSON file plus flag
// overrides applied by main) and the three commands built on it. Exit
// codes: 0 success, 2 configuration error, 3 data error, 4 numerical
// failure — main maps the error taxonomy onto these.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "skillnet/core.hpp"
#include "skillnet/efc.hpp"
#include "skillnet/nullmodel.hpp"

namespace skillnet {

struct RunConfig {
    std::filesystem::path importance_csv;
    std::filesystem::path hierarchy_csv;
    std::optional<std::filesystem::path> wages_csv;
    std::optional<std::filesystem::path> labels_csv;

    Level fitness_level = Level::broad;
    Level jobs_projection_level = Level::broad;
    Level skills_projection_level = Level::detailed;

    // When set, the detailed matrix is binarized first and the 0/1 values
    // aggregated (then re-thresholded); default is aggregate-then-binarize.
    bool binarize_before_aggregate = false;
    // When set, average coherence uses only validated skill-skill links
    // instead of the raw projection.
    bool coherence_uses_validated = false;

    EfcConfig efc;
    ValidationConfig validation;
    std::filesystem::path output_dir = "out";
};

// Parses the JSON run configuration. Unknown keys, wrong types and missing
// required paths are ConfigErrors; values are validated where the type
// allows (levels, positive counts).
RunConfig load_run_config(const std::filesystem::path& path);

// Full batch run: ingest, fitness/complexity, both validated projections,
// coherence, betweenness, report, manifest. All outputs land in
// config.output_dir; on failure, files written so far are removed.
void cmd_pipeline(const RunConfig& config, std::ostream& log);

// Emits spectroscopy_<job>.csv for one job at the configured fitness
// level, reusing complexity.csv from the output directory when present.
void cmd_spectroscopy(const RunConfig& config, const std::string& job_id, std::ostream& log);

// Emits heatmap_<class>.csv grids for the chosen report fields
// (x/y from fitness, average_coherence, annual_wage_usd; class from
// abstract_manual, routine), reusing report.csv when present.
void cmd_heatmap(const RunConfig& config, const std::string& x_field, const std::string& y_field,
                 const std::string& class_field, double sigma, std::ostream& log);

}  // namespace skillnet
