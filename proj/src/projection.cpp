#include "skillnet/projection.hpp"

#include <algorithm>
#include <queue>

namespace skillnet {

namespace detail {

void co_occurrence_weights(std::span<const std::uint8_t> entries, std::size_t job_count,
                           std::size_t skill_count, std::span<const int> diversification,
                           std::span<const int> ubiquity, NetworkKind kind,
                           std::span<double> out) {
    const bool over_jobs = (kind == NetworkKind::jobs);
    const std::size_t n = over_jobs ? job_count : skill_count;      // projected side
    const std::size_t k = over_jobs ? skill_count : job_count;      // summed-over side
    std::span<const int> node_degree = over_jobs ? diversification : ubiquity;
    std::span<const int> other_degree = over_jobs ? ubiquity : diversification;

    std::fill(out.begin(), out.end(), 0.0);

    // Accumulate sum_t M_at M_bt / deg(t) by walking each t's incidence
    // list once; both (a,b) and (b,a) receive identical addends in the
    // same order, so the result is bitwise symmetric.
    std::vector<std::size_t> hits;
    for (std::size_t t = 0; t < k; ++t) {
        if (other_degree[t] == 0) continue;  // no co-occurrences through t
        const double w = 1.0 / static_cast<double>(other_degree[t]);
        hits.clear();
        for (std::size_t a = 0; a < n; ++a) {
            const bool set = over_jobs ? entries[a * skill_count + t] : entries[t * skill_count + a];
            if (set) hits.push_back(a);
        }
        for (std::size_t a : hits) {
            double* row = out.data() + a * n;
            for (std::size_t b : hits) row[b] += w;
        }
    }

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const int denom = std::max(node_degree[a], node_degree[b]);
            double& v = out[a * n + b];
            // denom = 0 means both rows/columns are empty in a sampled
            // matrix; their relatedness is 0 by convention.
            v = denom > 0 ? v / static_cast<double>(denom) : 0.0;
            // Guard against accumulated rounding nudging a saturated pair
            // a few ulps past the mathematical bound of 1.
            if (v > 1.0) v = 1.0;
        }
    }
}

}  // namespace detail

namespace {

RelatednessMatrix project(const BinaryBipartiteMatrix& m, NetworkKind kind) {
    for (std::size_t j = 0; j < m.job_count(); ++j)
        if (m.diversification[j] == 0)
            throw DataError("job '" + m.job_ids[j] + "' has no skills; cannot project");
    for (std::size_t s = 0; s < m.skill_count(); ++s)
        if (m.ubiquity[s] == 0)
            throw DataError("skill '" + m.skill_ids[s] + "' has no jobs; cannot project");

    RelatednessMatrix b;
    b.kind = kind;
    b.node_ids = (kind == NetworkKind::jobs) ? m.job_ids : m.skill_ids;
    b.weights.resize(b.node_ids.size() * b.node_ids.size());
    detail::co_occurrence_weights(m.entries, m.job_count(), m.skill_count(), m.diversification,
                                  m.ubiquity, kind, b.weights);
    return b;
}

}  // namespace

RelatednessMatrix project_jobs(const BinaryBipartiteMatrix& m) {
    return project(m, NetworkKind::jobs);
}

RelatednessMatrix project_skills(const BinaryBipartiteMatrix& m) {
    return project(m, NetworkKind::skills);
}

std::map<std::string, double> average_coherence(const BinaryBipartiteMatrix& m,
                                                const RelatednessMatrix& skill_relatedness) {
    if (skill_relatedness.kind != NetworkKind::skills)
        throw DataError("average coherence needs a skill-skill relatedness matrix");

    const auto& b_ids = skill_relatedness.node_ids;
    // Map each matrix skill to its row in B (or npos when B does not know
    // the skill; intentionally tolerated, B may come from another level).
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> to_b(m.skill_count(), npos);
    for (std::size_t s = 0; s < m.skill_count(); ++s) {
        auto it = std::lower_bound(b_ids.begin(), b_ids.end(), m.skill_ids[s]);
        if (it != b_ids.end() && *it == m.skill_ids[s])
            to_b[s] = static_cast<std::size_t>(it - b_ids.begin());
    }

    std::map<std::string, double> ac;
    std::vector<std::size_t> required;
    for (std::size_t j = 0; j < m.job_count(); ++j) {
        required.clear();
        for (std::size_t s = 0; s < m.skill_count(); ++s)
            if (m.at(j, s) && to_b[s] != npos) required.push_back(to_b[s]);
        if (required.size() < 2) continue;  // coherence undefined

        double sum = 0.0;
        for (std::size_t i = 0; i < required.size(); ++i)
            for (std::size_t l = i + 1; l < required.size(); ++l)
                sum += skill_relatedness.weight(required[i], required[l]);
        const double pairs = 0.5 * static_cast<double>(required.size()) *
                             static_cast<double>(required.size() - 1);
        ac[m.job_ids[j]] = sum / pairs;
    }
    return ac;
}

std::vector<double> betweenness(const ValidatedNetwork& network) {
    const std::size_t n = network.node_ids.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : network.edges) {
        if (!e.validated) continue;
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());

    // Brandes' accumulation: one BFS per source, dependencies propagated
    // backwards along the shortest-path DAG.
    std::vector<double> centrality(n, 0.0);
    std::vector<long long> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<std::size_t> order;
    order.reserve(n);

    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        order.clear();

        dist[s] = 0;
        sigma[s] = 1.0;
        std::queue<std::size_t> queue;
        queue.push(s);
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop();
            order.push_back(v);
            for (std::size_t w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const std::size_t w = *it;
            for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) centrality[w] += delta[w];
        }
    }

    // Each unordered pair was counted from both endpoints.
    for (double& c : centrality) c /= 2.0;
    return centrality;
}

}  // namespace skillnet
