#pragma once

// Core domain types shared across the pipeline: the job-skill importance
// table, its binarized form, the occupation hierarchy, and the result
// containers produced by the fitness/relatedness computations.

#include <cstdint>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace skillnet {

// Error taxonomy. The CLI maps these onto distinct exit codes, so library
// code should pick the category that matches the root cause:
//   ConfigError    -> bad run configuration / unusable flags      (exit 2)
//   DataError      -> malformed or inconsistent input data        (exit 3)
//   NumericalError -> a solver failed to reach its tolerance      (exit 4)
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Aggregation levels of the occupation hierarchy, finest to coarsest.
enum class Level { detailed, broad, minor, major };

const char* level_name(Level level);
Level parse_level(std::string_view name);  // case-insensitive, ConfigError on unknown

// Dense job x skill table of raw importance scores. Missing pairs are
// stored as NaN. Ids are unique and lexicographically sorted so that
// every downstream ordering is reproducible.
struct ImportanceTable {
    std::vector<std::string> job_ids;
    std::vector<std::string> skill_ids;
    std::vector<double> values;  // row-major, job_count x skill_count, NaN = missing

    std::size_t job_count() const { return job_ids.size(); }
    std::size_t skill_count() const { return skill_ids.size(); }

    double value(std::size_t j, std::size_t s) const { return values[j * skill_ids.size() + s]; }
    bool present(std::size_t j, std::size_t s) const { return !std::isnan(value(j, s)); }

    std::optional<std::size_t> job_index(std::string_view id) const;
    std::optional<std::size_t> skill_index(std::string_view id) const;
};

// Binary job x skill matrix together with its margins: diversification
// d_j (row sums) and ubiquity u_s (column sums). The margins are always
// recomputed from the entries by from_entries(), never trusted from input.
struct BinaryBipartiteMatrix {
    std::vector<std::string> job_ids;
    std::vector<std::string> skill_ids;
    std::vector<std::uint8_t> entries;  // row-major, values 0/1
    std::vector<int> diversification;   // d_j, one per job
    std::vector<int> ubiquity;          // u_s, one per skill

    static BinaryBipartiteMatrix from_entries(std::vector<std::string> jobs,
                                              std::vector<std::string> skills,
                                              std::vector<std::uint8_t> entries);

    std::size_t job_count() const { return job_ids.size(); }
    std::size_t skill_count() const { return skill_ids.size(); }
    bool at(std::size_t j, std::size_t s) const { return entries[j * skill_ids.size() + s] != 0; }

    // Same matrix with the two roles swapped (jobs become skills and vice
    // versa); handy wherever an operation is defined "dually".
    BinaryBipartiteMatrix transposed() const;
};

// Maps a detailed occupation id to its ancestors at every coarser level,
// plus an optional aggregation weight (1 when the source data has none).
struct OccupationHierarchy {
    struct Entry {
        std::string broad;
        std::string minor;
        std::string major;
        double weight = 1.0;
    };
    std::map<std::string, Entry> detailed;

    const Entry* find(const std::string& detailed_id) const;
    // Parent id of `detailed_id` at `level` (the id itself for Level::detailed).
    const std::string& parent_of(const std::string& detailed_id, Level level) const;
    // All ids that exist at a given level (sorted, unique).
    std::vector<std::string> ids_at(Level level) const;
};

struct WageTable {
    std::map<std::string, double> annual_wage_usd;  // job id -> wage, strictly positive
};

enum class AbstractManual { abstract, manual, unlabeled };
enum class Routine { routinary, non_routinary, unlabeled };

const char* to_string(AbstractManual v);
const char* to_string(Routine v);

struct LabelTable {
    struct Labels {
        AbstractManual abstract_manual = AbstractManual::unlabeled;
        Routine routine = Routine::unlabeled;
    };
    std::map<std::string, Labels> labels;

    Labels find(const std::string& job_id) const;  // unlabeled/unlabeled when absent
};

// Which side of the bipartite matrix a one-mode projection lives on.
enum class NetworkKind { jobs, skills };

// Dense symmetric relatedness matrix over one side of the bipartite
// system. The diagonal is populated by the projection formula but is not
// meaningful; consumers must skip it (average_coherence and the edge
// exports do).
struct RelatednessMatrix {
    NetworkKind kind = NetworkKind::jobs;
    std::vector<std::string> node_ids;
    std::vector<double> weights;  // row-major, node_count x node_count

    std::size_t node_count() const { return node_ids.size(); }
    double weight(std::size_t a, std::size_t b) const { return weights[a * node_ids.size() + b]; }
};

// Output of the fitness/complexity iteration. `fitness` and `complexity`
// are aligned with job_ids/skill_ids and normalized to mean one. The
// history holds one entry per convergence checkpoint.
struct FitnessResult {
    std::vector<std::string> job_ids;
    std::vector<std::string> skill_ids;
    std::vector<double> fitness;
    std::vector<double> complexity;
    int iterations = 0;
    bool converged = false;

    struct Checkpoint {
        int iteration = 0;
        double min_crossing = 0.0;        // estimated first rank-crossing iteration
        std::vector<double> fitness;      // snapshot at this checkpoint
    };
    std::vector<Checkpoint> history;

    // Jobs whose fitness fell below 1e-9: their value is still reported but
    // should be read as "indistinguishable from zero at double precision".
    std::vector<std::string> near_zero_jobs;

    std::vector<std::size_t> fitness_ranking() const;     // indices, best first
    std::vector<std::size_t> complexity_ranking() const;  // indices, most complex first
};

// Maximum-entropy null model for a binary bipartite matrix: Lagrange
// multipliers per entity and the resulting independent-Bernoulli edge
// probabilities. Degenerate entities (empty or full rows/columns) carry
// infinite multipliers and probabilities pinned to exactly 0 or 1.
struct BicmSolution {
    std::vector<std::string> job_ids;
    std::vector<std::string> skill_ids;
    std::vector<double> theta;          // per job, +inf when the row is empty, -inf when full
    std::vector<double> mu;             // per skill, same convention
    std::vector<double> probabilities;  // row-major p_js in [0,1]
    double residual = 0.0;              // max constraint violation actually achieved

    std::size_t job_count() const { return job_ids.size(); }
    std::size_t skill_count() const { return skill_ids.size(); }
    double p(std::size_t j, std::size_t s) const { return probabilities[j * skill_ids.size() + s]; }
};

// One-mode network with per-edge survival statistics from the null-model
// test. Edges are stored once with a < b and sorted by (a, b); only pairs
// with positive observed weight appear.
struct ValidatedNetwork {
    struct Edge {
        std::size_t a = 0, b = 0;       // indices into node_ids, a < b
        double weight = 0.0;            // observed relatedness
        double survival_fraction = 0.0; // share of null samples the edge beat
        bool validated = false;
    };

    NetworkKind kind = NetworkKind::jobs;
    std::vector<std::string> node_ids;
    std::vector<Edge> edges;
    double threshold = 0.95;
    int sample_count = 0;
    std::uint64_t seed = 0;
};

}  // namespace skillnet
