#include "skillnet/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "skillnet/csv.hpp"

namespace skillnet {

namespace {

double parse_double_field(const std::string& field, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw DataError(std::string("cannot parse ") + what + " '" + field + "'");
    return v;
}

long long parse_int_field(const std::string& field, const char* what) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw DataError(std::string("cannot parse ") + what + " '" + field + "'");
    return v;
}

std::string header_line(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw DataError(std::string(what) + ": missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

void expect_header(std::istream& in, const std::string& expected, const char* what) {
    const std::string got = header_line(in, what);
    if (lowercase_copy(got) != expected)
        throw DataError(std::string(what) + ": unexpected header '" + got + "' (expected '" +
                        expected + "')");
}

std::vector<int> ranks_by_descending_value(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    std::vector<int> rank(values.size(), 0);
    for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = static_cast<int>(k) + 1;
    return rank;
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 64> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) throw DataError("cannot format value");
    return std::string(buf.data(), ptr);
}

void write_matrix_csv(std::ostream& out, const BinaryBipartiteMatrix& m) {
    out << "job_id";
    for (const auto& s : m.skill_ids) out << ',' << s;
    out << '\n';
    for (std::size_t j = 0; j < m.job_count(); ++j) {
        out << m.job_ids[j];
        for (std::size_t s = 0; s < m.skill_count(); ++s) out << ',' << (m.at(j, s) ? '1' : '0');
        out << '\n';
    }
}

BinaryBipartiteMatrix read_matrix_csv(std::istream& in) {
    const auto head = split_csv_line(header_line(in, "matrix"));
    if (head.empty() || lowercase_copy(head[0]) != "job_id")
        throw DataError("matrix: header must start with job_id");
    std::vector<std::string> skills(head.begin() + 1, head.end());

    std::vector<std::string> jobs;
    std::vector<std::uint8_t> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != skills.size() + 1)
            throw DataError("matrix: row '" + fields[0] + "' has the wrong number of cells");
        jobs.push_back(fields[0]);
        for (std::size_t s = 0; s < skills.size(); ++s) {
            if (fields[s + 1] == "0") entries.push_back(0);
            else if (fields[s + 1] == "1") entries.push_back(1);
            else
                throw DataError("matrix: cell '" + fields[s + 1] + "' is not 0 or 1");
        }
    }
    return BinaryBipartiteMatrix::from_entries(std::move(jobs), std::move(skills),
                                               std::move(entries));
}

void write_scores_csv(std::ostream& out, const std::string& id_column,
                      const std::string& value_column, const std::vector<std::string>& ids,
                      const std::vector<double>& values) {
    const auto ranks = ranks_by_descending_value(values);
    out << id_column << ',' << value_column << ",rank\n";
    for (std::size_t i = 0; i < ids.size(); ++i)
        out << ids[i] << ',' << format_double(values[i]) << ',' << ranks[i] << '\n';
}

std::vector<ScoredRow> read_scores_csv(std::istream& in, const std::string& id_column,
                                       const std::string& value_column) {
    expect_header(in, id_column + "," + value_column + ",rank", "scores");
    std::vector<ScoredRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) throw DataError("scores: malformed row '" + line + "'");
        rows.push_back({fields[0], parse_double_field(fields[1], value_column.c_str()),
                        static_cast<int>(parse_int_field(fields[2], "rank"))});
    }
    return rows;
}

void write_edges_csv(std::ostream& out, const ValidatedNetwork& network) {
    out << "source,target,weight,survival_fraction,validated\n";
    for (const auto& e : network.edges) {
        out << network.node_ids[e.a] << ',' << network.node_ids[e.b] << ','
            << format_double(e.weight) << ',' << format_double(e.survival_fraction) << ','
            << (e.validated ? "true" : "false") << '\n';
    }
}

std::vector<EdgeRow> read_edges_csv(std::istream& in) {
    expect_header(in, "source,target,weight,survival_fraction,validated", "edges");
    std::vector<EdgeRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 5) throw DataError("edges: malformed row '" + line + "'");
        EdgeRow row;
        row.source = fields[0];
        row.target = fields[1];
        row.weight = parse_double_field(fields[2], "weight");
        row.survival_fraction = parse_double_field(fields[3], "survival_fraction");
        if (fields[4] == "true") row.validated = true;
        else if (fields[4] == "false") row.validated = false;
        else
            throw DataError("edges: validated flag '" + fields[4] + "' is not true/false");
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_coherence_csv(std::ostream& out, const std::map<std::string, double>& coherence) {
    out << "job_id,average_coherence\n";
    for (const auto& [id, ac] : coherence) out << id << ',' << format_double(ac) << '\n';
}

void write_betweenness_csv(std::ostream& out, const std::vector<std::string>& node_ids,
                           const std::vector<double>& centrality) {
    out << "node_id,betweenness\n";
    for (std::size_t i = 0; i < node_ids.size(); ++i)
        out << node_ids[i] << ',' << format_double(centrality[i]) << '\n';
}

void write_report_csv(std::ostream& out, const Report& report) {
    out << "job_id,fitness,average_coherence,annual_wage_usd,abstract_manual,routine\n";
    for (const auto& row : report.rows) {
        out << row.job_id << ',' << format_double(row.fitness) << ',';
        if (row.average_coherence) out << format_double(*row.average_coherence);
        out << ',';
        if (row.annual_wage_usd) out << format_double(*row.annual_wage_usd);
        out << ',' << to_string(row.abstract_manual) << ',' << to_string(row.routine) << '\n';
    }
}

std::vector<ReportRow> read_report_csv(std::istream& in) {
    expect_header(in, "job_id,fitness,average_coherence,annual_wage_usd,abstract_manual,routine",
                  "report");
    std::vector<ReportRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 6) throw DataError("report: malformed row '" + line + "'");
        ReportRow row;
        row.job_id = fields[0];
        row.fitness = parse_double_field(fields[1], "fitness");
        if (!fields[2].empty())
            row.average_coherence = parse_double_field(fields[2], "average_coherence");
        if (!fields[3].empty())
            row.annual_wage_usd = parse_double_field(fields[3], "annual_wage_usd");
        const std::string am = lowercase_copy(fields[4]);
        if (am == "abstract") row.abstract_manual = AbstractManual::abstract;
        else if (am == "manual") row.abstract_manual = AbstractManual::manual;
        else if (am == "unlabeled") row.abstract_manual = AbstractManual::unlabeled;
        else
            throw DataError("report: unknown abstract/manual label '" + fields[4] + "'");
        const std::string rt = lowercase_copy(fields[5]);
        if (rt == "routinary") row.routine = Routine::routinary;
        else if (rt == "non-routinary") row.routine = Routine::non_routinary;
        else if (rt == "unlabeled") row.routine = Routine::unlabeled;
        else
            throw DataError("report: unknown routine label '" + fields[5] + "'");
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_spectroscopy_csv(std::ostream& out, const std::vector<SpectroscopyRow>& rows) {
    out << "skill_id,complexity,importance\n";
    for (const auto& row : rows)
        out << row.skill_id << ',' << format_double(row.complexity) << ','
            << format_double(row.importance) << '\n';
}

void write_heatmap_csv(std::ostream& out, const HeatmapGrid& grid) {
    out << "nx,ny,x0,x1,y0,y1,sigma\n";
    out << grid.grid.nx << ',' << grid.grid.ny << ',' << format_double(grid.grid.x0) << ','
        << format_double(grid.grid.x1) << ',' << format_double(grid.grid.y0) << ','
        << format_double(grid.grid.y1) << ',' << format_double(grid.sigma) << '\n';
    for (int y = 0; y < grid.grid.ny; ++y) {
        const double* row = grid.values.data() + static_cast<std::size_t>(y) * grid.grid.nx;
        for (int x = 0; x < grid.grid.nx; ++x) {
            if (x) out << ',';
            out << format_double(row[x]);
        }
        out << '\n';
    }
}

HeatmapGrid read_heatmap_csv(std::istream& in) {
    expect_header(in, "nx,ny,x0,x1,y0,y1,sigma", "heatmap");
    const auto meta = split_csv_line(header_line(in, "heatmap"));
    if (meta.size() != 7) throw DataError("heatmap: malformed parameter row");
    HeatmapGrid grid;
    grid.grid.nx = static_cast<int>(parse_int_field(meta[0], "nx"));
    grid.grid.ny = static_cast<int>(parse_int_field(meta[1], "ny"));
    grid.grid.x0 = parse_double_field(meta[2], "x0");
    grid.grid.x1 = parse_double_field(meta[3], "x1");
    grid.grid.y0 = parse_double_field(meta[4], "y0");
    grid.grid.y1 = parse_double_field(meta[5], "y1");
    grid.sigma = parse_double_field(meta[6], "sigma");
    grid.values.reserve(static_cast<std::size_t>(grid.grid.nx) * grid.grid.ny);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != static_cast<std::size_t>(grid.grid.nx))
            throw DataError("heatmap: grid row has the wrong number of cells");
        for (const auto& f : fields) grid.values.push_back(parse_double_field(f, "cell"));
    }
    if (grid.values.size() != static_cast<std::size_t>(grid.grid.nx) * grid.grid.ny)
        throw DataError("heatmap: grid has the wrong number of rows");
    return grid;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw DataError("sha256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("failed writing '" + path.string() + "'");
}

}  // namespace skillnet
