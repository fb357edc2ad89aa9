#include "skillnet/report.hpp"

#include <algorithm>
#include <cmath>

namespace skillnet {

Report build_report(const FitnessResult& fitness, const std::map<std::string, double>& coherence,
                    const WageTable& wages, const LabelTable& labels) {
    Report report;
    report.rows.reserve(fitness.job_ids.size());
    for (std::size_t j = 0; j < fitness.job_ids.size(); ++j) {
        ReportRow row;
        row.job_id = fitness.job_ids[j];
        row.fitness = fitness.fitness[j];
        if (auto it = coherence.find(row.job_id); it != coherence.end())
            row.average_coherence = it->second;
        if (auto it = wages.annual_wage_usd.find(row.job_id); it != wages.annual_wage_usd.end())
            row.annual_wage_usd = it->second;
        const auto l = labels.find(row.job_id);
        row.abstract_manual = l.abstract_manual;
        row.routine = l.routine;
        report.rows.push_back(std::move(row));
    }

    for (const auto& row : report.rows) {
        if (!row.annual_wage_usd) continue;
        const double w = *row.annual_wage_usd;
        if (!report.wage_summary) {
            report.wage_summary = WageSummary{row.job_id, row.job_id, w, w, 1.0};
            continue;
        }
        auto& s = *report.wage_summary;
        if (w > s.max_wage) {
            s.max_wage = w;
            s.max_job = row.job_id;
        }
        if (w < s.min_wage) {
            s.min_wage = w;
            s.min_job = row.job_id;
        }
    }
    if (report.wage_summary)
        report.wage_summary->ratio = report.wage_summary->max_wage / report.wage_summary->min_wage;
    return report;
}

std::vector<SpectroscopyRow> spectroscopy(const std::string& job_id,
                                          const ImportanceTable& importance,
                                          const std::map<std::string, double>& complexity) {
    const auto j = importance.job_index(job_id);
    if (!j) {
        std::string msg = "unknown job '" + job_id + "'; available:";
        for (const auto& id : importance.job_ids) msg += " " + id;
        throw DataError(msg);
    }

    std::vector<SpectroscopyRow> rows;
    for (std::size_t s = 0; s < importance.skill_count(); ++s) {
        if (!importance.present(*j, s)) continue;
        const auto it = complexity.find(importance.skill_ids[s]);
        if (it == complexity.end())
            throw DataError("no complexity available for skill '" + importance.skill_ids[s] + "'");
        rows.push_back({importance.skill_ids[s], it->second, importance.value(*j, s)});
    }
    std::sort(rows.begin(), rows.end(), [](const SpectroscopyRow& a, const SpectroscopyRow& b) {
        if (a.complexity != b.complexity) return a.complexity < b.complexity;
        return a.skill_id < b.skill_id;
    });
    return rows;
}

namespace {

// Separable convolution along x then y with a normalized Gaussian kernel
// truncated at 4 sigma (radius = int(4*sigma + 0.5)), zero-padded at the
// borders.
void gaussian_blur(std::vector<double>& grid, int nx, int ny, double sigma) {
    const int radius = static_cast<int>(4.0 * sigma + 0.5);
    std::vector<double> kernel(2 * radius + 1);
    double total = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-0.5 * (static_cast<double>(i) / sigma) *
                                      (static_cast<double>(i) / sigma));
        total += kernel[i + radius];
    }
    for (double& k : kernel) k /= total;

    std::vector<double> tmp(grid.size(), 0.0);
    for (int y = 0; y < ny; ++y) {
        const double* row = grid.data() + static_cast<std::size_t>(y) * nx;
        double* out = tmp.data() + static_cast<std::size_t>(y) * nx;
        for (int x = 0; x < nx; ++x) {
            const int lo = std::max(-radius, -x), hi = std::min(radius, nx - 1 - x);
            double sum = 0.0;
            for (int i = lo; i <= hi; ++i) sum += row[x + i] * kernel[i + radius];
            out[x] = sum;
        }
    }
    for (int x = 0; x < nx; ++x) {
        for (int y = 0; y < ny; ++y) {
            const int lo = std::max(-radius, -y), hi = std::min(radius, ny - 1 - y);
            double sum = 0.0;
            for (int i = lo; i <= hi; ++i)
                sum += tmp[static_cast<std::size_t>(y + i) * nx + x] * kernel[i + radius];
            grid[static_cast<std::size_t>(y) * nx + x] = sum;
        }
    }
}

}  // namespace

std::map<std::string, HeatmapGrid> smooth_heatmap(const std::vector<HeatPoint>& points,
                                                  const GridSpec& grid, double sigma) {
    if (!(sigma > 0.0)) throw ConfigError("heatmap: sigma must be positive");
    if (grid.nx < 1 || grid.ny < 1) throw ConfigError("heatmap: grid must have at least one cell");
    if (!(grid.x1 > grid.x0) || !(grid.y1 > grid.y0))
        throw ConfigError("heatmap: grid ranges must be non-empty");

    std::map<std::string, HeatmapGrid> out;
    const std::size_t cells = static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny);
    for (const auto& p : points) {
        auto [it, inserted] = out.try_emplace(p.cls);
        if (inserted) {
            it->second.grid = grid;
            it->second.sigma = sigma;
            it->second.values.assign(cells, 0.0);
        }
        auto& h = it->second;
        const bool outside = p.x < grid.x0 || p.x > grid.x1 || p.y < grid.y0 || p.y > grid.y1;
        if (outside) ++h.clamped;
        int ix = static_cast<int>(std::floor((p.x - grid.x0) / (grid.x1 - grid.x0) * grid.nx));
        int iy = static_cast<int>(std::floor((p.y - grid.y0) / (grid.y1 - grid.y0) * grid.ny));
        ix = std::clamp(ix, 0, grid.nx - 1);
        iy = std::clamp(iy, 0, grid.ny - 1);
        h.values[static_cast<std::size_t>(iy) * grid.nx + ix] += p.weight;
    }
    for (auto& [cls, h] : out) gaussian_blur(h.values, grid.nx, grid.ny, sigma);
    return out;
}

}  // namespace skillnet
