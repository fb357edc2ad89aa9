#pragma once

// Shared test fixtures: a small occupation dataset exercising every input
// format (including a missing importance pair and all three hierarchy
// levels above detailed), plus helpers for building matrices and scratch
// directories.

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skillnet/core.hpp"

namespace fixtures {

// 6 detailed occupations x 5 skills; d02 has no s5 record. Binarizes
// without empty rows/columns at the detailed, broad and minor levels.
inline const char* kImportanceCsv =
    "job_id,skill_id,importance\n"
    "d01,s1,5.0\n"
    "d01,s2,4.0\n"
    "d01,s3,1.0\n"
    "d01,s4,1.5\n"
    "d01,s5,2.0\n"
    "d02,s1,4.5\n"
    "d02,s2,3.5\n"
    "d02,s3,1.5\n"
    "d02,s4,2.0\n"
    "d03,s1,2.0\n"
    "d03,s2,4.5\n"
    "d03,s3,4.0\n"
    "d03,s4,2.5\n"
    "d03,s5,3.0\n"
    "d04,s1,1.5\n"
    "d04,s2,5.0\n"
    "d04,s3,3.5\n"
    "d04,s4,2.0\n"
    "d04,s5,3.5\n"
    "d05,s1,1.0\n"
    "d05,s2,1.5\n"
    "d05,s3,4.5\n"
    "d05,s4,4.0\n"
    "d05,s5,4.5\n"
    "d06,s1,1.5\n"
    "d06,s2,2.0\n"
    "d06,s3,5.0\n"
    "d06,s4,4.5\n"
    "d06,s5,5.0\n";

inline const char* kHierarchyCsv =
    "detailed_id,broad_id,minor_id,major_id\n"
    "d01,b1,m1,M1\n"
    "d02,b1,m1,M1\n"
    "d03,b2,m1,M1\n"
    "d04,b2,m1,M1\n"
    "d05,b3,m2,M1\n"
    "d06,b3,m2,M1\n";

// Wages keyed at the broad level (the default fitness level); the values
// are the well-known extremes so ratio arithmetic is easy to eyeball.
inline const char* kWagesCsv =
    "job_id,annual_wage_usd\n"
    "b1,197840\n"
    "b2,61000\n"
    "b3,24540\n";

inline const char* kLabelsCsv =
    "job_id,abstract_manual,routine\n"
    "b1,abstract,non-routinary\n"
    "b2,abstract,routinary\n"
    "b3,manual,routinary\n";

// Builds a binary matrix from literal rows like {"110", "011"} with
// auto-generated ids (j00.., s00..).
inline skillnet::BinaryBipartiteMatrix make_matrix(const std::vector<std::string>& rows) {
    const std::size_t nj = rows.size(), ns = rows.at(0).size();
    std::vector<std::string> jobs, skills;
    for (std::size_t j = 0; j < nj; ++j) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "j%02zu", j);
        jobs.emplace_back(buf);
    }
    for (std::size_t s = 0; s < ns; ++s) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "s%02zu", s);
        skills.emplace_back(buf);
    }
    std::vector<std::uint8_t> entries;
    for (const auto& row : rows)
        for (char c : row) entries.push_back(c == '1' ? 1 : 0);
    return skillnet::BinaryBipartiteMatrix::from_entries(std::move(jobs), std::move(skills),
                                                         std::move(entries));
}

// Random binary matrix with the given density and no empty rows/columns.
inline skillnet::BinaryBipartiteMatrix random_matrix(std::mt19937& rng, std::size_t nj,
                                                     std::size_t ns, double density) {
    std::bernoulli_distribution coin(density);
    std::vector<std::uint8_t> entries(nj * ns, 0);
    std::vector<int> d(nj, 0), u(ns, 0);
    for (std::size_t j = 0; j < nj; ++j)
        for (std::size_t s = 0; s < ns; ++s)
            if (coin(rng)) {
                entries[j * ns + s] = 1;
                ++d[j];
                ++u[s];
            }
    // Repair empty margins deterministically.
    std::uniform_int_distribution<std::size_t> pick_s(0, ns - 1), pick_j(0, nj - 1);
    for (std::size_t j = 0; j < nj; ++j)
        while (d[j] == 0) {
            const std::size_t s = pick_s(rng);
            entries[j * ns + s] = 1;
            ++d[j];
            ++u[s];
        }
    for (std::size_t s = 0; s < ns; ++s)
        while (u[s] == 0) {
            const std::size_t j = pick_j(rng);
            if (entries[j * ns + s]) continue;
            entries[j * ns + s] = 1;
            ++d[j];
            ++u[s];
        }
    std::vector<std::string> jobs, skills;
    for (std::size_t j = 0; j < nj; ++j) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "j%03zu", j);
        jobs.emplace_back(buf);
    }
    for (std::size_t s = 0; s < ns; ++s) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "s%03zu", s);
        skills.emplace_back(buf);
    }
    return skillnet::BinaryBipartiteMatrix::from_entries(std::move(jobs), std::move(skills),
                                                         std::move(entries));
}

// Strictly nested (triangular) matrix: row j requires the first n-j skills.
inline skillnet::BinaryBipartiteMatrix nested_matrix(std::size_t n) {
    std::vector<std::string> rows;
    for (std::size_t j = 0; j < n; ++j) rows.push_back(std::string(n - j, '1') + std::string(j, '0'));
    return make_matrix(rows);
}

// Scratch directory with the fixture CSVs and a pipeline config written
// into it; removed on destruction.
struct ScratchDataset {
    std::filesystem::path dir;
    std::filesystem::path config_path;

    explicit ScratchDataset(const std::string& tag, int sample_count = 400,
                            std::uint64_t seed = 7, const std::string& extra_config = "") {
        dir = std::filesystem::temp_directory_path() / ("skillnet_test_" + tag);
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir);
        write(dir / "importance.csv", kImportanceCsv);
        write(dir / "hierarchy.csv", kHierarchyCsv);
        write(dir / "wages.csv", kWagesCsv);
        write(dir / "labels.csv", kLabelsCsv);
        std::ostringstream config;
        config << "{\n"
               << "  \"importance_csv\": \"" << (dir / "importance.csv").string() << "\",\n"
               << "  \"hierarchy_csv\": \"" << (dir / "hierarchy.csv").string() << "\",\n"
               << "  \"wages_csv\": \"" << (dir / "wages.csv").string() << "\",\n"
               << "  \"labels_csv\": \"" << (dir / "labels.csv").string() << "\",\n"
               << "  \"output_dir\": \"" << (dir / "out").string() << "\",\n"
               << "  \"validation\": {\"sample_count\": " << sample_count << ", \"seed\": " << seed
               << "}" << (extra_config.empty() ? "" : ",\n  " + extra_config) << "\n}\n";
        config_path = dir / "run.json";
        write(config_path, config.str());
    }
    ~ScratchDataset() {
        std::error_code ec;
        std::filesystem::remove_all(dir, ec);
    }

    static void write(const std::filesystem::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
};

}  // namespace fixtures
