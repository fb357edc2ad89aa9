#pragma once

// Joins the computed metrics with wages and labels into analysis tables,
// and prepares plot-ready artifacts: per-job skill spectroscopy and
// Gaussian-smoothed class density grids.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skillnet/core.hpp"

namespace skillnet {

struct ReportRow {
    std::string job_id;
    double fitness = 0.0;
    std::optional<double> average_coherence;
    std::optional<double> annual_wage_usd;
    AbstractManual abstract_manual = AbstractManual::unlabeled;
    Routine routine = Routine::unlabeled;
};

struct WageSummary {
    std::string max_job, min_job;
    double max_wage = 0.0, min_wage = 0.0;
    double ratio = 0.0;  // max_wage / min_wage, full precision
};

struct Report {
    std::vector<ReportRow> rows;                // one per job, id order
    std::optional<WageSummary> wage_summary;    // absent when no wage joined
};

// One row per fitness job; coherence, wage and labels joined by id where
// available. The wage summary reports the extreme wages among joined rows.
Report build_report(const FitnessResult& fitness, const std::map<std::string, double>& coherence,
                    const WageTable& wages, const LabelTable& labels);

struct SpectroscopyRow {
    std::string skill_id;
    double complexity = 0.0;
    double importance = 0.0;
};

// The job's present skills sorted by ascending complexity (ties by skill
// id). Errors if the job is unknown, listing the available ids.
std::vector<SpectroscopyRow> spectroscopy(const std::string& job_id,
                                          const ImportanceTable& importance,
                                          const std::map<std::string, double>& complexity);

struct HeatPoint {
    double x = 0.0, y = 0.0;
    std::string cls;
    double weight = 1.0;
};

struct GridSpec {
    int nx = 512, ny = 512;
    double x0 = 0.0, x1 = 1.0;
    double y0 = 0.0, y1 = 1.0;
};

struct HeatmapGrid {
    GridSpec grid;
    double sigma = 0.0;
    std::vector<double> values;   // row-major, ny rows of nx cells
    std::size_t clamped = 0;      // points outside the range, snapped to the border
};

// Bins each class's points onto the grid and convolves with a truncated
// (4 sigma), normalized Gaussian kernel, separably per axis with zero
// padding; total mass is preserved wherever the kernel footprint stays on
// the grid. sigma is measured in grid cells.
std::map<std::string, HeatmapGrid> smooth_heatmap(const std::vector<HeatPoint>& points,
                                                  const GridSpec& grid, double sigma);

}  // namespace skillnet
