#include "skillnet/core.hpp"

#include <algorithm>
#include <cctype>

namespace skillnet {

const char* level_name(Level level) {
    switch (level) {
        case Level::detailed: return "detailed";
        case Level::broad: return "broad";
        case Level::minor: return "minor";
        case Level::major: return "major";
    }
    return "detailed";
}

Level parse_level(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "detailed") return Level::detailed;
    if (lower == "broad") return Level::broad;
    if (lower == "minor") return Level::minor;
    if (lower == "major") return Level::major;
    throw ConfigError("unknown hierarchy level '" + std::string(name) +
                      "' (expected detailed, broad, minor or major)");
}

const char* to_string(AbstractManual v) {
    switch (v) {
        case AbstractManual::abstract: return "abstract";
        case AbstractManual::manual: return "manual";
        case AbstractManual::unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

const char* to_string(Routine v) {
    switch (v) {
        case Routine::routinary: return "routinary";
        case Routine::non_routinary: return "non-routinary";
        case Routine::unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

namespace {

std::optional<std::size_t> sorted_index(const std::vector<std::string>& ids, std::string_view id) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - ids.begin());
}

}  // namespace

std::optional<std::size_t> ImportanceTable::job_index(std::string_view id) const {
    return sorted_index(job_ids, id);
}

std::optional<std::size_t> ImportanceTable::skill_index(std::string_view id) const {
    return sorted_index(skill_ids, id);
}

BinaryBipartiteMatrix BinaryBipartiteMatrix::from_entries(std::vector<std::string> jobs,
                                                          std::vector<std::string> skills,
                                                          std::vector<std::uint8_t> entries) {
    const std::size_t nj = jobs.size(), ns = skills.size();
    if (entries.size() != nj * ns)
        throw DataError("binary matrix entries do not match its dimensions");
    BinaryBipartiteMatrix m;
    m.job_ids = std::move(jobs);
    m.skill_ids = std::move(skills);
    m.entries = std::move(entries);
    m.diversification.assign(nj, 0);
    m.ubiquity.assign(ns, 0);
    for (std::size_t j = 0; j < nj; ++j) {
        for (std::size_t s = 0; s < ns; ++s) {
            const std::uint8_t e = m.entries[j * ns + s];
            if (e > 1) throw DataError("binary matrix entry is neither 0 nor 1");
            m.diversification[j] += e;
            m.ubiquity[s] += e;
        }
    }
    return m;
}

BinaryBipartiteMatrix BinaryBipartiteMatrix::transposed() const {
    const std::size_t nj = job_count(), ns = skill_count();
    std::vector<std::uint8_t> t(entries.size());
    for (std::size_t j = 0; j < nj; ++j)
        for (std::size_t s = 0; s < ns; ++s) t[s * nj + j] = entries[j * ns + s];
    return from_entries(skill_ids, job_ids, std::move(t));
}

const OccupationHierarchy::Entry* OccupationHierarchy::find(const std::string& detailed_id) const {
    auto it = detailed.find(detailed_id);
    return it == detailed.end() ? nullptr : &it->second;
}

const std::string& OccupationHierarchy::parent_of(const std::string& detailed_id, Level level) const {
    auto it = detailed.find(detailed_id);
    if (it == detailed.end())
        throw DataError("occupation '" + detailed_id + "' is missing from the hierarchy");
    switch (level) {
        case Level::detailed: return it->first;
        case Level::broad: return it->second.broad;
        case Level::minor: return it->second.minor;
        case Level::major: return it->second.major;
    }
    return it->first;
}

std::vector<std::string> OccupationHierarchy::ids_at(Level level) const {
    std::vector<std::string> ids;
    ids.reserve(detailed.size());
    for (const auto& [id, entry] : detailed) {
        switch (level) {
            case Level::detailed: ids.push_back(id); break;
            case Level::broad: ids.push_back(entry.broad); break;
            case Level::minor: ids.push_back(entry.minor); break;
            case Level::major: ids.push_back(entry.major); break;
        }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

LabelTable::Labels LabelTable::find(const std::string& job_id) const {
    auto it = labels.find(job_id);
    return it == labels.end() ? Labels{} : it->second;
}

namespace {

// Ranking helper: indices sorted by value descending, ties kept in id
// order (ids are sorted, so index order == id order).
std::vector<std::size_t> descending_ranking(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return order;
}

}  // namespace

std::vector<std::size_t> FitnessResult::fitness_ranking() const {
    return descending_ranking(fitness);
}

std::vector<std::size_t> FitnessResult::complexity_ranking() const {
    return descending_ranking(complexity);
}

}  // namespace skillnet
