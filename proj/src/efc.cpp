#include "skillnet/efc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace skillnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_no_empty_margins(const BinaryBipartiteMatrix& m) {
    for (std::size_t j = 0; j < m.job_count(); ++j)
        if (m.diversification[j] == 0)
            throw DataError("job '" + m.job_ids[j] +
                            "' requires no skills; drop empty rows before running the map");
    for (std::size_t s = 0; s < m.skill_count(); ++s)
        if (m.ubiquity[s] == 0)
            throw DataError("skill '" + m.skill_ids[s] +
                            "' is required by no job; drop empty columns before running the map");
}

double normalize_to_mean_one(std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    for (double& x : v) x /= mean;
    return mean;
}

// Unchecked single step, shared by efc_step and run_efc. Writes the
// normalized next state into (f, q).
void step_in_place(const BinaryBipartiteMatrix& m, std::vector<double>& f, std::vector<double>& q) {
    const std::size_t nj = m.job_count(), ns = m.skill_count();

    for (std::size_t j = 0; j < nj; ++j) {
        double sum = 0.0;
        const std::uint8_t* row = m.entries.data() + j * ns;
        for (std::size_t s = 0; s < ns; ++s)
            if (row[s]) sum += q[s];
        f[j] = sum;
    }
    normalize_to_mean_one(f);

    // Q at this step uses the F just computed above.
    for (std::size_t s = 0; s < ns; ++s) {
        double inv_sum = 0.0;
        for (std::size_t j = 0; j < nj; ++j)
            if (m.entries[j * ns + s]) inv_sum += 1.0 / f[j];
        q[s] = 1.0 / inv_sum;
    }
    normalize_to_mean_one(q);
}

bool all_positive_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x) && x > 0.0; });
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> efc_step(const BinaryBipartiteMatrix& m,
                                                             const std::vector<double>& fitness,
                                                             const std::vector<double>& complexity) {
    if (fitness.size() != m.job_count() || complexity.size() != m.skill_count())
        throw std::invalid_argument("efc_step: vector sizes do not match the matrix");
    if (!all_positive_finite(fitness) || !all_positive_finite(complexity))
        throw std::invalid_argument("efc_step: fitness and complexity must be strictly positive");
    require_no_empty_margins(m);

    std::vector<double> f = fitness, q = complexity;
    step_in_place(m, f, q);
    return {std::move(f), std::move(q)};
}

double growth_rate(double f_at_n, double f_at_n_minus_2, int n) {
    if (n <= 2) throw std::invalid_argument("growth_rate: n must be at least 3");
    if (!(f_at_n > 0.0) || !(f_at_n_minus_2 > 0.0))
        throw std::invalid_argument("growth_rate: fitness values must be strictly positive");
    return (std::log(f_at_n) - std::log(f_at_n_minus_2)) /
           (std::log(static_cast<double>(n)) - std::log(static_cast<double>(n - 2)));
}

double minimum_crossing_iteration(std::span<const double> fitness_desc,
                                  std::span<const double> alpha, int n) {
    if (fitness_desc.size() != alpha.size())
        throw std::invalid_argument("minimum_crossing_iteration: size mismatch");
    double mci = kInf;
    for (std::size_t c = 0; c + 1 < fitness_desc.size(); ++c) {
        if (fitness_desc[c] < fitness_desc[c + 1])
            throw std::invalid_argument("minimum_crossing_iteration: fitness not sorted descending");
        const double gap = alpha[c + 1] - alpha[c];
        if (gap <= 0.0) continue;  // the pair never crosses
        const double ci =
            static_cast<double>(n) * std::pow(fitness_desc[c] / fitness_desc[c + 1], 1.0 / gap);
        mci = std::min(mci, ci);
    }
    return mci;
}

FitnessResult run_efc(const BinaryBipartiteMatrix& m, const EfcConfig& config) {
    if (config.mci_stop <= 0.0) throw ConfigError("efc: mci_stop must be positive");
    if (config.max_iterations <= 0) throw ConfigError("efc: max_iterations must be positive");
    if (config.checkpoint_stride < 2)
        throw ConfigError("efc: checkpoint_stride must be at least 2");
    require_no_empty_margins(m);

    const std::size_t nj = m.job_count(), ns = m.skill_count();

    std::vector<double> q(ns, 1.0);
    for (const auto& [id, value] : config.initial_complexity) {
        auto it = std::lower_bound(m.skill_ids.begin(), m.skill_ids.end(), id);
        if (it == m.skill_ids.end() || *it != id)
            throw ConfigError("efc: initial complexity for unknown skill '" + id + "'");
        if (!(value > 0.0) || !std::isfinite(value))
            throw ConfigError("efc: initial complexity for '" + id + "' must be positive");
        q[static_cast<std::size_t>(it - m.skill_ids.begin())] = value;
    }

    FitnessResult result;
    result.job_ids = m.job_ids;
    result.skill_ids = m.skill_ids;

    std::vector<double> f(nj, 1.0);
    std::vector<double> f_prev1, f_prev2;  // F at n-1 and n-2
    std::vector<double> alpha(nj), sorted_f(nj), sorted_alpha(nj);
    std::vector<std::size_t> order(nj);

    int n = 0;
    while (n < config.max_iterations) {
        ++n;
        std::vector<double> f_next = f, q_next = q;
        step_in_place(m, f_next, q_next);

        if (!all_positive_finite(f_next) || !all_positive_finite(q_next)) {
            // A fitness value underflowed to zero (or blew up); keep the
            // last healthy state rather than poisoning the output with
            // infinities. The caller sees converged=false.
            --n;
            break;
        }
        // Roll the two-step window: after this, f_prev2 = F(n-1) becomes
        // F((n+1)-2) for the next iteration's growth rates.
        f_prev2 = std::move(f_prev1);
        f_prev1 = f;  // still F(n-1) here; f is assigned next
        f = std::move(f_next);
        q = std::move(q_next);

        if (n % config.checkpoint_stride != 0 || n < 3) continue;

        for (std::size_t j = 0; j < nj; ++j) alpha[j] = growth_rate(f[j], f_prev2[j], n);

        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });
        for (std::size_t c = 0; c < nj; ++c) {
            sorted_f[c] = f[order[c]];
            sorted_alpha[c] = alpha[order[c]];
        }
        const double mci = minimum_crossing_iteration(sorted_f, sorted_alpha, n);

        result.history.push_back({n, mci, f});
        if (mci >= config.mci_stop) {
            result.converged = true;
            break;
        }
    }

    result.iterations = n;
    result.fitness = std::move(f);
    result.complexity = std::move(q);
    for (std::size_t j = 0; j < nj; ++j)
        if (result.fitness[j] < 1e-9) result.near_zero_jobs.push_back(result.job_ids[j]);
    return result;
}

}  // namespace skillnet
