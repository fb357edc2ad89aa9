#include "skillnet/nullmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <thread>
#include <vector>

#include "skillnet/projection.hpp"

namespace skillnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix64(std::uint64_t z) {
    // SplitMix64 finalizer: full-period avalanche of a 64-bit word.
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

enum class Pin : std::uint8_t { active, zero, one };

// Fixed-point/bisection solve of the reduced degree-class system. x and y
// are the exponentiated multipliers (x = e^-theta per job class,
// y = e^-mu per skill class), so every quantity stays positive and the
// per-class constraint sum_t g_t x y/(1+x y) is monotone in each unknown.
struct ClassSystem {
    std::vector<double> job_degree, skill_degree;  // effective degrees per class
    std::vector<double> job_mult, skill_mult;      // class multiplicities
    std::vector<double> x, y;

    double job_sum(double xr) const {
        double sum = 0.0;
        for (std::size_t t = 0; t < y.size(); ++t) {
            const double xy = xr * y[t];
            sum += skill_mult[t] * xy / (1.0 + xy);
        }
        return sum;
    }
    double skill_sum(double yt) const {
        double sum = 0.0;
        for (std::size_t r = 0; r < x.size(); ++r) {
            const double xy = x[r] * yt;
            sum += job_mult[r] * xy / (1.0 + xy);
        }
        return sum;
    }
    double residual() const {
        double worst = 0.0;
        for (std::size_t r = 0; r < x.size(); ++r)
            worst = std::max(worst, std::abs(job_sum(x[r]) - job_degree[r]));
        for (std::size_t t = 0; t < y.size(); ++t)
            worst = std::max(worst, std::abs(skill_sum(y[t]) - skill_degree[t]));
        return worst;
    }

    // Monotone 1D root solve for one unknown, given the other side fixed.
    // f(v) runs from 0 (v=0) to the total multiplicity (v->inf) and the
    // target lies strictly between, so doubling + bisection always lands.
    template <typename SumFn>
    static double bisect(double target, double start, SumFn&& sum) {
        double hi = std::max(start, 1e-12);
        while (sum(hi) < target && hi < 1e300) hi *= 2.0;
        double lo = hi;
        while (sum(lo) > target && lo > 1e-300) lo *= 0.5;
        for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            (sum(mid) < target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    // Returns the residual reached. Plain damped fixed-point sweeps first;
    // if the residual stops shrinking, coordinate-wise bisection finishes
    // the job (each 1D problem is monotone).
    double solve(double tolerance, int max_sweeps) {
        if (x.empty() && y.empty()) return 0.0;
        double best = residual();
        double checkpoint = best;
        for (int sweep = 0; sweep < max_sweeps && best > tolerance; ++sweep) {
            for (std::size_t r = 0; r < x.size(); ++r) {
                double denom = 0.0;
                for (std::size_t t = 0; t < y.size(); ++t)
                    denom += skill_mult[t] * y[t] / (1.0 + x[r] * y[t]);
                x[r] = job_degree[r] / denom;
            }
            for (std::size_t t = 0; t < y.size(); ++t) {
                double denom = 0.0;
                for (std::size_t r = 0; r < x.size(); ++r)
                    denom += job_mult[r] * x[r] / (1.0 + x[r] * y[t]);
                y[t] = skill_degree[t] / denom;
            }
            best = std::min(best, residual());
            if (sweep % 200 == 199) {
                // Stalled if 200 sweeps bought less than a 20% reduction.
                if (best > 0.8 * checkpoint) break;
                checkpoint = best;
            }
        }
        for (int round = 0; round < 200 && best > tolerance; ++round) {
            for (std::size_t r = 0; r < x.size(); ++r)
                x[r] = bisect(job_degree[r], x[r], [&](double v) { return job_sum(v); });
            for (std::size_t t = 0; t < y.size(); ++t)
                y[t] = bisect(skill_degree[t], y[t], [&](double v) { return skill_sum(v); });
            best = residual();
        }
        return best;
    }
};

}  // namespace

BicmSolution solve_bicm(const BinaryBipartiteMatrix& m, double tolerance) {
    if (!(tolerance > 0.0)) throw ConfigError("bicm: tolerance must be positive");
    const std::size_t nj = m.job_count(), ns = m.skill_count();
    if (nj == 0 || ns == 0) throw DataError("bicm: matrix has no jobs or no skills");

    std::vector<Pin> job_pin(nj, Pin::active), skill_pin(ns, Pin::active);
    std::vector<int> eff_d(m.diversification), eff_u(m.ubiquity);
    std::vector<double> p(nj * ns, -1.0);

    // Degeneracy cascade: empty entities take probability 0, saturated
    // ones probability 1; each pinned row/column shrinks the problem the
    // rest must solve, which can make further entities degenerate.
    std::size_t active_jobs = nj, active_skills = ns;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t j = 0; j < nj && !changed; ++j) {
            if (job_pin[j] != Pin::active) continue;
            const bool empty = eff_d[j] == 0;
            const bool full = eff_d[j] == static_cast<int>(active_skills);
            if (!empty && !full) continue;
            job_pin[j] = empty ? Pin::zero : Pin::one;
            --active_jobs;
            for (std::size_t s = 0; s < ns; ++s) {
                if (skill_pin[s] != Pin::active) continue;
                p[j * ns + s] = empty ? 0.0 : 1.0;
                if (full) --eff_u[s];
            }
            changed = true;
        }
        for (std::size_t s = 0; s < ns && !changed; ++s) {
            if (skill_pin[s] != Pin::active) continue;
            const bool empty = eff_u[s] == 0;
            const bool full = eff_u[s] == static_cast<int>(active_jobs);
            if (!empty && !full) continue;
            skill_pin[s] = empty ? Pin::zero : Pin::one;
            --active_skills;
            for (std::size_t j = 0; j < nj; ++j) {
                if (job_pin[j] != Pin::active) continue;
                p[j * ns + s] = empty ? 0.0 : 1.0;
                if (full) --eff_d[j];
            }
            changed = true;
        }
    }

    // Group the surviving entities into degree classes; equal effective
    // degree implies an identical constraint equation, hence one shared
    // multiplier.
    std::map<int, double> job_classes, skill_classes;
    for (std::size_t j = 0; j < nj; ++j)
        if (job_pin[j] == Pin::active) job_classes[eff_d[j]] += 1.0;
    for (std::size_t s = 0; s < ns; ++s)
        if (skill_pin[s] == Pin::active) skill_classes[eff_u[s]] += 1.0;

    ClassSystem sys;
    double total_degree = 0.0;
    for (const auto& [deg, count] : job_classes) {
        sys.job_degree.push_back(deg);
        sys.job_mult.push_back(count);
        total_degree += deg * count;
    }
    for (const auto& [deg, count] : skill_classes) {
        sys.skill_degree.push_back(deg);
        sys.skill_mult.push_back(count);
    }
    const double scale = std::sqrt(std::max(total_degree, 1.0));
    for (double deg : sys.job_degree) sys.x.push_back(deg / scale);
    for (double deg : sys.skill_degree) sys.y.push_back(deg / scale);

    // The class residual bounds the full residual: all members of a class
    // share one equation. Solve slightly tighter to absorb the final
    // re-evaluation against the original margins.
    const double reached = sys.solve(0.5 * tolerance, 20000);
    if (reached > 0.5 * tolerance) {
        std::ostringstream msg;
        msg << "bicm: solver exhausted its budget at residual " << reached << " (tolerance "
            << tolerance << ")";
        throw NumericalError(msg.str());
    }

    // Scatter class multipliers back to entities and fill the active block.
    std::vector<double> xj(nj, 0.0), ys(ns, 0.0);
    for (std::size_t j = 0; j < nj; ++j) {
        if (job_pin[j] != Pin::active) continue;
        const auto it = job_classes.find(eff_d[j]);
        const std::size_t r = static_cast<std::size_t>(std::distance(job_classes.begin(), it));
        xj[j] = sys.x[r];
    }
    for (std::size_t s = 0; s < ns; ++s) {
        if (skill_pin[s] != Pin::active) continue;
        const auto it = skill_classes.find(eff_u[s]);
        const std::size_t t = static_cast<std::size_t>(std::distance(skill_classes.begin(), it));
        ys[s] = sys.y[t];
    }
    for (std::size_t j = 0; j < nj; ++j) {
        if (job_pin[j] != Pin::active) continue;
        for (std::size_t s = 0; s < ns; ++s) {
            if (skill_pin[s] != Pin::active) continue;
            const double xy = xj[j] * ys[s];
            p[j * ns + s] = xy / (1.0 + xy);
        }
    }

    BicmSolution solution;
    solution.job_ids = m.job_ids;
    solution.skill_ids = m.skill_ids;
    solution.probabilities = std::move(p);
    solution.theta.resize(nj);
    solution.mu.resize(ns);
    for (std::size_t j = 0; j < nj; ++j)
        solution.theta[j] = job_pin[j] == Pin::active ? -std::log(xj[j])
                            : job_pin[j] == Pin::zero ? kInf
                                                      : -kInf;
    for (std::size_t s = 0; s < ns; ++s)
        solution.mu[s] = skill_pin[s] == Pin::active ? -std::log(ys[s])
                         : skill_pin[s] == Pin::zero ? kInf
                                                     : -kInf;

    // Verify every original margin, not just the reduced system.
    double worst = 0.0;
    for (std::size_t j = 0; j < nj; ++j) {
        double sum = 0.0;
        for (std::size_t s = 0; s < ns; ++s) sum += solution.p(j, s);
        worst = std::max(worst, std::abs(sum - m.diversification[j]));
    }
    for (std::size_t s = 0; s < ns; ++s) {
        double sum = 0.0;
        for (std::size_t j = 0; j < nj; ++j) sum += solution.p(j, s);
        worst = std::max(worst, std::abs(sum - m.ubiquity[s]));
    }
    solution.residual = worst;
    if (worst > tolerance) {
        std::ostringstream msg;
        msg << "bicm: solution violates the margins with residual " << worst << " (tolerance "
            << tolerance << ")";
        throw NumericalError(msg.str());
    }
    return solution;
}

double cell_uniform(std::uint64_t seed, std::uint64_t sample_index, std::uint64_t j,
                    std::uint64_t s) {
    // Chain the key words through the finalizer so each coordinate
    // perturbs the whole state before the next is absorbed.
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ sample_index);
    h = mix64(h ^ j);
    h = mix64(h ^ s);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

namespace {

// Sample one matrix into caller-owned buffers (no id copies); shared by
// sample_bipartite and the validation loop.
void sample_entries(const BicmSolution& solution, std::uint64_t sample_index, std::uint64_t seed,
                    std::vector<std::uint8_t>& entries, std::vector<int>& d, std::vector<int>& u) {
    const std::size_t nj = solution.job_count(), ns = solution.skill_count();
    entries.assign(nj * ns, 0);
    d.assign(nj, 0);
    u.assign(ns, 0);
    for (std::size_t j = 0; j < nj; ++j) {
        for (std::size_t s = 0; s < ns; ++s) {
            if (cell_uniform(seed, sample_index, j, s) < solution.p(j, s)) {
                entries[j * ns + s] = 1;
                ++d[j];
                ++u[s];
            }
        }
    }
}

}  // namespace

BinaryBipartiteMatrix sample_bipartite(const BicmSolution& solution, std::uint64_t sample_index,
                                       std::uint64_t seed) {
    std::vector<std::uint8_t> entries;
    std::vector<int> d, u;
    sample_entries(solution, sample_index, seed, entries, d, u);
    return BinaryBipartiteMatrix::from_entries(solution.job_ids, solution.skill_ids,
                                               std::move(entries));
}

ValidatedNetwork validate_projection(const BinaryBipartiteMatrix& m, NetworkKind kind,
                                     const ValidationConfig& config) {
    return validate_projection(m, kind, config, solve_bicm(m, 1e-8));
}

ValidatedNetwork validate_projection(const BinaryBipartiteMatrix& m, NetworkKind kind,
                                     const ValidationConfig& config,
                                     const BicmSolution& solution) {
    if (config.sample_count <= 0) throw ConfigError("validation: sample_count must be positive");
    if (!(config.threshold > 0.0) || !(config.threshold < 1.0))
        throw ConfigError("validation: threshold must lie strictly between 0 and 1");
    if (solution.job_ids != m.job_ids || solution.skill_ids != m.skill_ids)
        throw DataError("validation: null-model solution belongs to a different matrix");

    const RelatednessMatrix observed =
        kind == NetworkKind::jobs ? project_jobs(m) : project_skills(m);
    const std::size_t n = observed.node_count();

    struct Pair {
        std::size_t a, b;
        double weight;
    };
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (observed.weight(a, b) > 0.0) pairs.push_back({a, b, observed.weight(a, b)});

    const std::size_t samples = static_cast<std::size_t>(config.sample_count);
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t workers = std::min({hw, samples, std::size_t{8}});

    // Each worker owns a contiguous block of sample indices and its own
    // integer survival counters; integer merging makes the result
    // independent of the worker count.
    std::vector<std::vector<long long>> counts(workers,
                                               std::vector<long long>(pairs.size(), 0));
    auto run_block = [&](std::size_t worker, std::size_t begin, std::size_t end) {
        std::vector<std::uint8_t> entries;
        std::vector<int> d, u;
        std::vector<double> b_sample(n * n);
        auto& local = counts[worker];
        for (std::size_t i = begin; i < end; ++i) {
            sample_entries(solution, i, config.seed, entries, d, u);
            detail::co_occurrence_weights(entries, m.job_count(), m.skill_count(), d, u, kind,
                                          b_sample);
            for (std::size_t k = 0; k < pairs.size(); ++k)
                if (pairs[k].weight > b_sample[pairs[k].a * n + pairs[k].b]) ++local[k];
        }
    };

    if (workers == 1) {
        run_block(0, 0, samples);
    } else {
        std::vector<std::thread> threads;
        const std::size_t block = (samples + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * block, end = std::min(samples, begin + block);
            threads.emplace_back(run_block, w, begin, end);
        }
        for (auto& t : threads) t.join();
    }

    ValidatedNetwork net;
    net.kind = kind;
    net.node_ids = observed.node_ids;
    net.threshold = config.threshold;
    net.sample_count = config.sample_count;
    net.seed = config.seed;
    net.edges.reserve(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        long long survived = 0;
        for (std::size_t w = 0; w < workers; ++w) survived += counts[w][k];
        ValidatedNetwork::Edge e;
        e.a = pairs[k].a;
        e.b = pairs[k].b;
        e.weight = pairs[k].weight;
        e.survival_fraction = static_cast<double>(survived) / static_cast<double>(samples);
        e.validated = e.survival_fraction >= config.threshold;
        net.edges.push_back(e);
    }
    return net;
}

}  // namespace skillnet
