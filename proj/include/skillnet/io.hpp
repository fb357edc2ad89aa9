#pragma once

// Serialization of analysis artifacts: CSV writers (and readers where a
// consumer exists), round-trip-exact float formatting, and content
// hashing for the run manifest.

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "skillnet/core.hpp"
#include "skillnet/report.hpp"

namespace skillnet {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

// matrix_<level>.csv: header `job_id,<skill ids...>`, one 0/1 row per job.
void write_matrix_csv(std::ostream& out, const BinaryBipartiteMatrix& m);
BinaryBipartiteMatrix read_matrix_csv(std::istream& in);

// fitness.csv / complexity.csv: `<id_column>,<value_column>,rank` with
// rank 1 for the highest value (ties resolved by id order).
struct ScoredRow {
    std::string id;
    double value = 0.0;
    int rank = 0;
};
void write_scores_csv(std::ostream& out, const std::string& id_column,
                      const std::string& value_column, const std::vector<std::string>& ids,
                      const std::vector<double>& values);
std::vector<ScoredRow> read_scores_csv(std::istream& in, const std::string& id_column,
                                       const std::string& value_column);

// edges_jobs.csv / edges_skills.csv:
// `source,target,weight,survival_fraction,validated`.
struct EdgeRow {
    std::string source, target;
    double weight = 0.0;
    double survival_fraction = 0.0;
    bool validated = false;
};
void write_edges_csv(std::ostream& out, const ValidatedNetwork& network);
std::vector<EdgeRow> read_edges_csv(std::istream& in);

// coherence.csv: `job_id,average_coherence`, only jobs with a defined value.
void write_coherence_csv(std::ostream& out, const std::map<std::string, double>& coherence);

// betweenness.csv: `node_id,betweenness` aligned with the validated network.
void write_betweenness_csv(std::ostream& out, const std::vector<std::string>& node_ids,
                           const std::vector<double>& centrality);

// report.csv: ReportRow columns; missing optionals become empty fields.
void write_report_csv(std::ostream& out, const Report& report);
std::vector<ReportRow> read_report_csv(std::istream& in);

// spectroscopy_<job>.csv: `skill_id,complexity,importance`, ascending complexity.
void write_spectroscopy_csv(std::ostream& out, const std::vector<SpectroscopyRow>& rows);

// heatmap_<class>.csv: header `nx,ny,x0,x1,y0,y1,sigma`, one line of those
// values, then ny grid rows of nx cells each.
void write_heatmap_csv(std::ostream& out, const HeatmapGrid& grid);
HeatmapGrid read_heatmap_csv(std::istream& in);

std::string sha256_hex(std::string_view bytes);
std::string read_file(const std::filesystem::path& path);  // binary, DataError if unreadable
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace skillnet
