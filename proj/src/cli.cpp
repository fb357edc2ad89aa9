#include "skillnet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "skillnet/ingest.hpp"
#include "skillnet/io.hpp"
#include "skillnet/projection.hpp"
#include "skillnet/report.hpp"

namespace skillnet {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : object.items())
        if (!known.count(key))
            throw ConfigError("config: unknown key '" + key + "' in " + where);
}

double require_number(const json& j, const std::string& key) {
    if (!j.is_number()) throw ConfigError("config: '" + key + "' must be a number");
    return j.get<double>();
}

int require_int(const json& j, const std::string& key) {
    if (!j.is_number_integer()) throw ConfigError("config: '" + key + "' must be an integer");
    return j.get<int>();
}

std::string require_string(const json& j, const std::string& key) {
    if (!j.is_string()) throw ConfigError("config: '" + key + "' must be a string");
    return j.get<std::string>();
}

bool require_bool(const json& j, const std::string& key) {
    if (!j.is_boolean()) throw ConfigError("config: '" + key + "' must be true or false");
    return j.get<bool>();
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
    std::string raw;
    try {
        raw = read_file(path);
    } catch (const DataError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    json j;
    try {
        j = json::parse(raw);
    } catch (const json::exception& e) {
        throw ConfigError("config: '" + path.string() + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

    reject_unknown_keys(j, {"importance_csv", "hierarchy_csv", "wages_csv", "labels_csv",
                            "fitness_level", "jobs_projection_level", "skills_projection_level",
                            "binarize_before_aggregate", "coherence_uses_validated", "efc",
                            "validation", "output_dir"},
                        "the top level");

    RunConfig config;
    if (!j.contains("importance_csv") || !j.contains("hierarchy_csv"))
        throw ConfigError("config: importance_csv and hierarchy_csv are required");
    config.importance_csv = require_string(j["importance_csv"], "importance_csv");
    config.hierarchy_csv = require_string(j["hierarchy_csv"], "hierarchy_csv");
    if (j.contains("wages_csv"))
        config.wages_csv = require_string(j["wages_csv"], "wages_csv");
    if (j.contains("labels_csv"))
        config.labels_csv = require_string(j["labels_csv"], "labels_csv");
    if (j.contains("output_dir"))
        config.output_dir = require_string(j["output_dir"], "output_dir");
    if (j.contains("fitness_level"))
        config.fitness_level = parse_level(require_string(j["fitness_level"], "fitness_level"));
    if (j.contains("jobs_projection_level"))
        config.jobs_projection_level =
            parse_level(require_string(j["jobs_projection_level"], "jobs_projection_level"));
    if (j.contains("skills_projection_level"))
        config.skills_projection_level =
            parse_level(require_string(j["skills_projection_level"], "skills_projection_level"));
    if (j.contains("binarize_before_aggregate"))
        config.binarize_before_aggregate =
            require_bool(j["binarize_before_aggregate"], "binarize_before_aggregate");
    if (j.contains("coherence_uses_validated"))
        config.coherence_uses_validated =
            require_bool(j["coherence_uses_validated"], "coherence_uses_validated");

    if (j.contains("efc")) {
        const json& e = j["efc"];
        if (!e.is_object()) throw ConfigError("config: 'efc' must be an object");
        reject_unknown_keys(
            e, {"mci_stop", "max_iterations", "checkpoint_stride", "initial_complexity"}, "efc");
        if (e.contains("mci_stop")) config.efc.mci_stop = require_number(e["mci_stop"], "mci_stop");
        if (e.contains("max_iterations"))
            config.efc.max_iterations = require_int(e["max_iterations"], "max_iterations");
        if (e.contains("checkpoint_stride"))
            config.efc.checkpoint_stride = require_int(e["checkpoint_stride"], "checkpoint_stride");
        if (e.contains("initial_complexity")) {
            const json& init = e["initial_complexity"];
            if (!init.is_object())
                throw ConfigError("config: 'initial_complexity' must map skill ids to numbers");
            for (const auto& [skill, value] : init.items())
                config.efc.initial_complexity[skill] = require_number(value, skill);
        }
    }
    if (j.contains("validation")) {
        const json& v = j["validation"];
        if (!v.is_object()) throw ConfigError("config: 'validation' must be an object");
        reject_unknown_keys(v, {"sample_count", "threshold", "seed"}, "validation");
        if (v.contains("sample_count"))
            config.validation.sample_count = require_int(v["sample_count"], "sample_count");
        if (v.contains("threshold"))
            config.validation.threshold = require_number(v["threshold"], "threshold");
        if (v.contains("seed")) {
            if (!v["seed"].is_number_unsigned() && !v["seed"].is_number_integer())
                throw ConfigError("config: 'seed' must be a non-negative integer");
            config.validation.seed = v["seed"].get<std::uint64_t>();
        }
    }
    return config;
}

namespace {

void require_inputs_exist(const RunConfig& config) {
    auto check = [](const std::filesystem::path& p, const char* what) {
        if (!std::filesystem::exists(p))
            throw ConfigError(std::string("config: ") + what + " '" + p.string() +
                              "' does not exist");
    };
    check(config.importance_csv, "importance table");
    check(config.hierarchy_csv, "hierarchy");
    if (config.wages_csv) check(*config.wages_csv, "wage table");
    if (config.labels_csv) check(*config.labels_csv, "label table");
}

struct Inputs {
    ImportanceTable importance;
    OccupationHierarchy hierarchy;
    WageTable wages;
    LabelTable labels;
};

Inputs load_inputs(const RunConfig& config) {
    Inputs inputs;
    {
        std::istringstream in(read_file(config.importance_csv));
        inputs.importance = parse_importance_table(in);
    }
    {
        std::istringstream in(read_file(config.hierarchy_csv));
        inputs.hierarchy = parse_hierarchy(in);
    }
    if (config.wages_csv) {
        std::istringstream in(read_file(*config.wages_csv));
        inputs.wages = parse_wages(in);
    }
    if (config.labels_csv) {
        std::istringstream in(read_file(*config.labels_csv));
        inputs.labels = parse_labels(in);
    }
    return inputs;
}

// A 0/1 matrix viewed as an importance table so it can run through
// aggregate_importance (the binarize-first order).
ImportanceTable to_table(const BinaryBipartiteMatrix& m) {
    ImportanceTable table;
    table.job_ids = m.job_ids;
    table.skill_ids = m.skill_ids;
    table.values.resize(m.entries.size());
    for (std::size_t i = 0; i < m.entries.size(); ++i)
        table.values[i] = static_cast<double>(m.entries[i]);
    return table;
}

BinaryBipartiteMatrix matrix_at_level(const Inputs& inputs, const RunConfig& config, Level level) {
    if (level == Level::detailed || !config.binarize_before_aggregate)
        return binarize(aggregate_importance(inputs.importance, inputs.hierarchy, level));
    // Binarize-first: threshold at detailed, aggregate the 0/1 values into
    // per-category shares, then threshold those shares the same way.
    const auto detailed = binarize(inputs.importance);
    return binarize(aggregate_importance(to_table(detailed), inputs.hierarchy, level));
}

RelatednessMatrix validated_relatedness(const ValidatedNetwork& net) {
    RelatednessMatrix b;
    b.kind = net.kind;
    b.node_ids = net.node_ids;
    b.weights.assign(net.node_ids.size() * net.node_ids.size(), 0.0);
    const std::size_t n = net.node_ids.size();
    for (const auto& e : net.edges) {
        if (!e.validated) continue;
        b.weights[e.a * n + e.b] = e.weight;
        b.weights[e.b * n + e.a] = e.weight;
    }
    return b;
}

std::string sanitize_for_filename(std::string id) {
    for (char& c : id)
        if (c == '/' || c == '\\') c = '_';
    return id;
}

json config_as_json(const RunConfig& config) {
    json j;
    j["importance_csv"] = config.importance_csv.string();
    j["hierarchy_csv"] = config.hierarchy_csv.string();
    j["wages_csv"] = config.wages_csv ? json(config.wages_csv->string()) : json(nullptr);
    j["labels_csv"] = config.labels_csv ? json(config.labels_csv->string()) : json(nullptr);
    j["fitness_level"] = level_name(config.fitness_level);
    j["jobs_projection_level"] = level_name(config.jobs_projection_level);
    j["skills_projection_level"] = level_name(config.skills_projection_level);
    j["binarize_before_aggregate"] = config.binarize_before_aggregate;
    j["coherence_uses_validated"] = config.coherence_uses_validated;
    j["efc"] = {{"mci_stop", config.efc.mci_stop},
                {"max_iterations", config.efc.max_iterations},
                {"checkpoint_stride", config.efc.checkpoint_stride},
                {"initial_complexity", json(config.efc.initial_complexity)}};
    j["validation"] = {{"sample_count", config.validation.sample_count},
                       {"threshold", config.validation.threshold},
                       {"seed", config.validation.seed}};
    // output_dir is deliberately not part of the manifest: results must
    // hash identically wherever they are written.
    return j;
}

void write_outputs(const RunConfig& config,
                   const std::vector<std::pair<std::string, std::string>>& outputs,
                   std::ostream& log) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec)
        throw ConfigError("config: cannot create output directory '" +
                          config.output_dir.string() + "': " + ec.message());

    std::vector<fs::path> written;
    try {
        for (const auto& [name, content] : outputs) {
            const fs::path target = config.output_dir / name;
            write_file(target, content);
            written.push_back(target);
        }
    } catch (...) {
        for (const auto& p : written) fs::remove(p, ec);
        throw;
    }
    log << "wrote " << outputs.size() << " files to " << config.output_dir.string() << "\n";
}

std::string fixed_decimals(double v, int places) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    return buf;
}

}  // namespace

void cmd_pipeline(const RunConfig& config, std::ostream& log) {
    require_inputs_exist(config);
    const Inputs inputs = load_inputs(config);

    // Matrices (and the expensive BiCM solves) are shared between stages
    // that run at the same level.
    std::map<Level, BinaryBipartiteMatrix> matrices;
    auto matrix_for = [&](Level level) -> const BinaryBipartiteMatrix& {
        auto it = matrices.find(level);
        if (it == matrices.end())
            it = matrices.emplace(level, matrix_at_level(inputs, config, level)).first;
        return it->second;
    };
    std::map<Level, BicmSolution> solutions;
    auto solution_for = [&](Level level) -> const BicmSolution& {
        auto it = solutions.find(level);
        if (it == solutions.end()) it = solutions.emplace(level, solve_bicm(matrix_for(level))).first;
        return it->second;
    };

    const BinaryBipartiteMatrix& fitness_matrix = matrix_for(config.fitness_level);
    log << "efc: running on the " << level_name(config.fitness_level) << " matrix ("
        << fitness_matrix.job_count() << " jobs x " << fitness_matrix.skill_count()
        << " skills)\n";
    const FitnessResult fitness = run_efc(fitness_matrix, config.efc);
    if (!fitness.converged)
        log << "efc: warning: rank stability horizon not reached after " << fitness.iterations
            << " iterations; results still reflect the last stable state\n";
    if (!fitness.near_zero_jobs.empty()) {
        log << "efc: warning: " << fitness.near_zero_jobs.size()
            << " job(s) with fitness below 1e-9:";
        for (const auto& id : fitness.near_zero_jobs) log << ' ' << id;
        log << "\n";
    }

    log << "nullmodel: validating the jobs projection at the "
        << level_name(config.jobs_projection_level) << " level\n";
    const ValidatedNetwork jobs_net =
        validate_projection(matrix_for(config.jobs_projection_level), NetworkKind::jobs,
                            config.validation, solution_for(config.jobs_projection_level));
    log << "nullmodel: validating the skills projection at the "
        << level_name(config.skills_projection_level) << " level\n";
    const ValidatedNetwork skills_net =
        validate_projection(matrix_for(config.skills_projection_level), NetworkKind::skills,
                            config.validation, solution_for(config.skills_projection_level));

    const RelatednessMatrix skill_relatedness =
        config.coherence_uses_validated
            ? validated_relatedness(skills_net)
            : project_skills(matrix_for(config.skills_projection_level));
    const std::map<std::string, double> coherence =
        average_coherence(fitness_matrix, skill_relatedness);

    const std::vector<double> jobs_betweenness = betweenness(jobs_net);
    const Report report = build_report(fitness, coherence, inputs.wages, inputs.labels);
    if (report.wage_summary) {
        const auto& w = *report.wage_summary;
        log << "report: wage ratio " << fixed_decimals(w.ratio, 2) << " (" << w.max_job << " "
            << format_double(w.max_wage) << " / " << w.min_job << " " << format_double(w.min_wage)
            << ")\n";
    }

    // Render everything before touching the filesystem so a failure never
    // leaves a partial tree behind.
    std::vector<std::pair<std::string, std::string>> outputs;
    auto render = [&outputs](const std::string& name, auto&& writer) {
        std::ostringstream out;
        writer(out);
        outputs.emplace_back(name, std::move(out).str());
    };

    std::set<Level> levels = {config.fitness_level, config.jobs_projection_level,
                              config.skills_projection_level};
    for (Level level : levels)
        render(std::string("matrix_") + level_name(level) + ".csv",
               [&](std::ostream& out) { write_matrix_csv(out, matrix_for(level)); });
    render("fitness.csv", [&](std::ostream& out) {
        write_scores_csv(out, "job_id", "fitness", fitness.job_ids, fitness.fitness);
    });
    render("complexity.csv", [&](std::ostream& out) {
        write_scores_csv(out, "skill_id", "complexity", fitness.skill_ids, fitness.complexity);
    });
    render("edges_jobs.csv", [&](std::ostream& out) { write_edges_csv(out, jobs_net); });
    render("edges_skills.csv", [&](std::ostream& out) { write_edges_csv(out, skills_net); });
    render("coherence.csv", [&](std::ostream& out) { write_coherence_csv(out, coherence); });
    render("betweenness.csv", [&](std::ostream& out) {
        write_betweenness_csv(out, jobs_net.node_ids, jobs_betweenness);
    });
    render("report.csv", [&](std::ostream& out) { write_report_csv(out, report); });

    json manifest;
    manifest["config"] = config_as_json(config);
    manifest["seed"] = config.validation.seed;
    manifest["inputs"] = json::object();
    manifest["inputs"][config.importance_csv.string()] =
        sha256_hex(read_file(config.importance_csv));
    manifest["inputs"][config.hierarchy_csv.string()] = sha256_hex(read_file(config.hierarchy_csv));
    if (config.wages_csv)
        manifest["inputs"][config.wages_csv->string()] = sha256_hex(read_file(*config.wages_csv));
    if (config.labels_csv)
        manifest["inputs"][config.labels_csv->string()] = sha256_hex(read_file(*config.labels_csv));
    manifest["outputs"] = json::object();
    for (const auto& [name, content] : outputs) manifest["outputs"][name] = sha256_hex(content);
    outputs.emplace_back("manifest.json", manifest.dump(2) + "\n");

    write_outputs(config, outputs, log);
}

namespace {

std::map<std::string, double> complexity_map(const RunConfig& config, const Inputs& inputs,
                                             std::ostream& log) {
    const std::filesystem::path cached = config.output_dir / "complexity.csv";
    std::map<std::string, double> complexity;
    if (std::filesystem::exists(cached)) {
        log << "reusing " << cached.string() << "\n";
        std::istringstream in(read_file(cached));
        for (const auto& row : read_scores_csv(in, "skill_id", "complexity"))
            complexity[row.id] = row.value;
        return complexity;
    }
    const FitnessResult fitness = run_efc(matrix_at_level(inputs, config, config.fitness_level),
                                          config.efc);
    for (std::size_t s = 0; s < fitness.skill_ids.size(); ++s)
        complexity[fitness.skill_ids[s]] = fitness.complexity[s];
    return complexity;
}

}  // namespace

void cmd_spectroscopy(const RunConfig& config, const std::string& job_id, std::ostream& log) {
    require_inputs_exist(config);
    const Inputs inputs = load_inputs(config);
    const ImportanceTable table =
        aggregate_importance(inputs.importance, inputs.hierarchy, config.fitness_level);
    const auto rows = spectroscopy(job_id, table, complexity_map(config, inputs, log));

    std::ostringstream out;
    write_spectroscopy_csv(out, rows);
    std::vector<std::pair<std::string, std::string>> outputs;
    outputs.emplace_back("spectroscopy_" + sanitize_for_filename(job_id) + ".csv",
                         std::move(out).str());
    write_outputs(config, outputs, log);
}

void cmd_heatmap(const RunConfig& config, const std::string& x_field, const std::string& y_field,
                 const std::string& class_field, double sigma, std::ostream& log) {
    if (!(sigma > 0.0)) throw ConfigError("heatmap: sigma must be positive");
    auto axis_of = [](const std::string& field) -> int {
        if (field == "fitness") return 0;
        if (field == "average_coherence") return 1;
        if (field == "annual_wage_usd") return 2;
        throw ConfigError("heatmap: unknown field '" + field +
                          "' (valid: fitness, average_coherence, annual_wage_usd)");
    };
    const int x_axis = axis_of(x_field), y_axis = axis_of(y_field);
    if (class_field != "abstract_manual" && class_field != "routine")
        throw ConfigError("heatmap: unknown class field '" + class_field +
                          "' (valid: abstract_manual, routine)");

    std::vector<ReportRow> rows;
    const std::filesystem::path cached = config.output_dir / "report.csv";
    if (std::filesystem::exists(cached)) {
        log << "reusing " << cached.string() << "\n";
        std::istringstream in(read_file(cached));
        rows = read_report_csv(in);
    } else {
        require_inputs_exist(config);
        const Inputs inputs = load_inputs(config);
        const BinaryBipartiteMatrix fitness_matrix =
            matrix_at_level(inputs, config, config.fitness_level);
        const FitnessResult fitness = run_efc(fitness_matrix, config.efc);
        const RelatednessMatrix skill_relatedness =
            project_skills(matrix_at_level(inputs, config, config.skills_projection_level));
        rows = build_report(fitness, average_coherence(fitness_matrix, skill_relatedness),
                            inputs.wages, inputs.labels)
                   .rows;
    }

    std::vector<HeatPoint> points;
    for (const auto& row : rows) {
        const std::optional<double> coords[3] = {row.fitness, row.average_coherence,
                                                 row.annual_wage_usd};
        if (!coords[x_axis] || !coords[y_axis]) continue;
        std::string cls = class_field == "abstract_manual" ? to_string(row.abstract_manual)
                                                           : to_string(row.routine);
        if (cls == "unlabeled") continue;
        points.push_back({*coords[x_axis], *coords[y_axis], std::move(cls), 1.0});
    }
    if (points.empty())
        throw DataError("heatmap: no labeled points with both '" + x_field + "' and '" + y_field +
                        "' present");

    GridSpec grid;
    double x_lo = points[0].x, x_hi = points[0].x, y_lo = points[0].y, y_hi = points[0].y;
    for (const auto& p : points) {
        x_lo = std::min(x_lo, p.x);
        x_hi = std::max(x_hi, p.x);
        y_lo = std::min(y_lo, p.y);
        y_hi = std::max(y_hi, p.y);
    }
    const double x_pad = x_hi > x_lo ? 0.05 * (x_hi - x_lo) : 1.0;
    const double y_pad = y_hi > y_lo ? 0.05 * (y_hi - y_lo) : 1.0;
    grid.nx = grid.ny = 512;
    grid.x0 = x_lo - x_pad;
    grid.x1 = x_hi + x_pad;
    grid.y0 = y_lo - y_pad;
    grid.y1 = y_hi + y_pad;

    const auto grids = smooth_heatmap(points, grid, sigma);
    std::vector<std::pair<std::string, std::string>> outputs;
    for (const auto& [cls, heat] : grids) {
        if (heat.clamped > 0)
            log << "heatmap: warning: " << heat.clamped << " point(s) clamped to the grid border\n";
        std::ostringstream out;
        write_heatmap_csv(out, heat);
        outputs.emplace_back("heatmap_" + sanitize_for_filename(cls) + ".csv",
                             std::move(out).str());
    }
    write_outputs(config, outputs, log);
}

}  // namespace skillnet
