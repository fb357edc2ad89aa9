#include "skillnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "skillnet/csv.hpp"

namespace skillnet {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

double parse_real(const std::string& field, std::size_t line_no, const char* what) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value))
        throw DataError("line " + std::to_string(line_no) + ": cannot parse " + what + " '" +
                        field + "'");
    return value;
}

// Reads all data rows of a CSV stream after checking the header. Returns
// (fields, line number) pairs; blank lines are skipped.
struct CsvRows {
    std::vector<std::pair<std::vector<std::string>, std::size_t>> rows;
};

CsvRows read_csv(std::istream& in, const std::vector<std::string>& header,
                 std::size_t optional_tail = 0) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty input: missing header row");
    auto head = split_csv_line(line);
    for (auto& h : head) h = lowercase_copy(h);
    const std::size_t required = header.size() - optional_tail;
    bool ok = head.size() >= required && head.size() <= header.size();
    if (ok)
        for (std::size_t i = 0; i < head.size(); ++i) ok = ok && head[i] == header[i];
    if (!ok) {
        std::string expected;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) expected += ',';
            expected += header[i];
        }
        throw DataError("unexpected header '" + line + "' (expected '" + expected + "')");
    }
    CsvRows out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != head.size())
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(head.size()) + " fields, got " +
                            std::to_string(fields.size()));
        for (const auto& f : fields)
            if (f.empty())
                throw DataError("line " + std::to_string(line_no) + ": empty field");
        out.rows.emplace_back(std::move(fields), line_no);
    }
    return out;
}

}  // namespace

ImportanceTable parse_importance_table(std::istream& in) {
    auto csv = read_csv(in, {"job_id", "skill_id", "importance"});

    std::set<std::string> jobs, skills;
    for (const auto& [fields, line_no] : csv.rows) {
        jobs.insert(fields[0]);
        skills.insert(fields[1]);
    }

    ImportanceTable table;
    table.job_ids.assign(jobs.begin(), jobs.end());
    table.skill_ids.assign(skills.begin(), skills.end());
    const std::size_t ns = table.skill_ids.size();
    table.values.assign(table.job_ids.size() * ns, kMissing);

    for (const auto& [fields, line_no] : csv.rows) {
        const double v = parse_real(fields[2], line_no, "importance");
        if (v < 1.0 || v > 5.0)
            throw DataError("line " + std::to_string(line_no) + ": importance " + fields[2] +
                            " outside [1, 5]");
        const std::size_t j = *table.job_index(fields[0]);
        const std::size_t s = *table.skill_index(fields[1]);
        double& slot = table.values[j * ns + s];
        if (!std::isnan(slot))
            throw DataError("duplicate importance pair (" + fields[0] + ", " + fields[1] + ")");
        slot = v;
    }
    return table;
}

OccupationHierarchy parse_hierarchy(std::istream& in) {
    auto csv = read_csv(in, {"detailed_id", "broad_id", "minor_id", "major_id", "weight"},
                        /*optional_tail=*/1);
    OccupationHierarchy h;
    for (const auto& [fields, line_no] : csv.rows) {
        OccupationHierarchy::Entry entry;
        entry.broad = fields[1];
        entry.minor = fields[2];
        entry.major = fields[3];
        if (fields.size() == 5) {
            entry.weight = parse_real(fields[4], line_no, "weight");
            if (entry.weight <= 0.0)
                throw DataError("line " + std::to_string(line_no) +
                                ": aggregation weight must be positive");
        }
        if (!h.detailed.emplace(fields[0], std::move(entry)).second)
            throw DataError("duplicate detailed occupation '" + fields[0] + "' in hierarchy");
    }
    return h;
}

WageTable parse_wages(std::istream& in) {
    auto csv = read_csv(in, {"job_id", "annual_wage_usd"});
    WageTable wages;
    for (const auto& [fields, line_no] : csv.rows) {
        const double w = parse_real(fields[1], line_no, "wage");
        if (w <= 0.0)
            throw DataError("line " + std::to_string(line_no) + ": wage must be positive, got " +
                            fields[1]);
        if (!wages.annual_wage_usd.emplace(fields[0], w).second)
            throw DataError("duplicate wage entry for job '" + fields[0] + "'");
    }
    return wages;
}

LabelTable parse_labels(std::istream& in) {
    auto csv = read_csv(in, {"job_id", "abstract_manual", "routine"});
    LabelTable table;
    for (const auto& [fields, line_no] : csv.rows) {
        LabelTable::Labels labels;
        const std::string am = lowercase_copy(fields[1]);
        if (am == "abstract") labels.abstract_manual = AbstractManual::abstract;
        else if (am == "manual") labels.abstract_manual = AbstractManual::manual;
        else if (am == "unlabeled") labels.abstract_manual = AbstractManual::unlabeled;
        else
            throw DataError("line " + std::to_string(line_no) + ": unknown abstract/manual label '" +
                            fields[1] + "'");
        const std::string rt = lowercase_copy(fields[2]);
        if (rt == "routinary") labels.routine = Routine::routinary;
        else if (rt == "non-routinary") labels.routine = Routine::non_routinary;
        else if (rt == "unlabeled") labels.routine = Routine::unlabeled;
        else
            throw DataError("line " + std::to_string(line_no) + ": unknown routine label '" +
                            fields[2] + "'");
        if (!table.labels.emplace(fields[0], labels).second)
            throw DataError("duplicate label entry for job '" + fields[0] + "'");
    }
    return table;
}

ImportanceTable aggregate_importance(const ImportanceTable& table,
                                     const OccupationHierarchy& hierarchy, Level level) {
    if (level == Level::detailed) return table;

    const auto level_ids = hierarchy.ids_at(level);
    const std::size_t ns = table.skill_count();

    // target id -> list of (source row, weight)
    std::map<std::string, std::vector<std::pair<std::size_t, double>>> groups;
    for (std::size_t j = 0; j < table.job_count(); ++j) {
        const std::string& id = table.job_ids[j];
        if (const auto* entry = hierarchy.find(id)) {
            groups[hierarchy.parent_of(id, level)].emplace_back(j, entry->weight);
        } else if (std::binary_search(level_ids.begin(), level_ids.end(), id)) {
            // Already a target-level id (e.g. re-aggregating an aggregated
            // table): keep it as its own group.
            groups[id].emplace_back(j, 1.0);
        } else {
            throw DataError("job '" + id + "' is neither a detailed occupation nor a " +
                            level_name(level) + "-level id in the hierarchy");
        }
    }

    ImportanceTable out;
    out.skill_ids = table.skill_ids;
    out.job_ids.reserve(groups.size());
    for (const auto& [id, members] : groups) out.job_ids.push_back(id);
    out.values.assign(out.job_ids.size() * ns, kMissing);

    std::size_t k = 0;
    for (const auto& [id, members] : groups) {
        for (std::size_t s = 0; s < ns; ++s) {
            double weighted_sum = 0.0, weight_total = 0.0;
            for (const auto& [j, w] : members) {
                if (!table.present(j, s)) continue;
                weighted_sum += w * table.value(j, s);
                weight_total += w;
            }
            if (weight_total > 0.0) out.values[k * ns + s] = weighted_sum / weight_total;
        }
        ++k;
    }
    return out;
}

BinaryBipartiteMatrix binarize(const ImportanceTable& table) {
    if (table.job_count() == 0 || table.skill_count() == 0)
        throw DataError("cannot binarize an empty importance table");

    const std::size_t nj = table.job_count(), ns = table.skill_count();
    std::vector<std::uint8_t> entries(nj * ns, 0);

    for (std::size_t s = 0; s < ns; ++s) {
        double sum = 0.0, lo = 0.0, hi = 0.0;
        std::size_t count = 0;
        for (std::size_t j = 0; j < nj; ++j) {
            if (!table.present(j, s)) continue;
            const double v = table.value(j, s);
            if (count == 0) lo = hi = v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
            ++count;
        }
        // All-missing and all-equal columns stay zero: with every value at
        // the mean, the strict inequality can never hold (the explicit
        // check avoids rounding in sum/count deciding ties).
        if (count == 0 || lo == hi) continue;
        const double mean = sum / static_cast<double>(count);
        for (std::size_t j = 0; j < nj; ++j)
            if (table.present(j, s) && table.value(j, s) > mean) entries[j * ns + s] = 1;
    }

    return BinaryBipartiteMatrix::from_entries(table.job_ids, table.skill_ids, std::move(entries));
}

}  // namespace skillnet
