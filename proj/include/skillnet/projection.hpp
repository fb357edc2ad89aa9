#pragma once

// One-mode projections of the bipartite matrix (job-job and skill-skill
// relatedness), the per-job average coherence of required skills, and
// betweenness centrality on validated networks.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "skillnet/core.hpp"

namespace skillnet {

// B_jj' = (1/max(d_j, d_j')) * sum_s M_js M_j's / u_s. Symmetric, entries
// in [0,1], diagonal included (consumers skip it). Rejects matrices with
// empty rows or columns.
RelatednessMatrix project_jobs(const BinaryBipartiteMatrix& m);

// Dual of project_jobs with jobs and skills exchanged:
// B_ss' = (1/max(u_s, u_s')) * sum_j M_js M_js' / d_j.
RelatednessMatrix project_skills(const BinaryBipartiteMatrix& m);

// Mean pairwise relatedness of each job's required skills, using distinct
// pairs only (the diagonal never contributes). Skills are matched to
// skill_relatedness by id, so B may come from a different (typically
// finer-grained) matrix than m. Jobs with fewer than two matched skills
// have no defined coherence and are absent from the result.
std::map<std::string, double> average_coherence(const BinaryBipartiteMatrix& m,
                                                const RelatednessMatrix& skill_relatedness);

// Unnormalized shortest-path betweenness over the validated edges of the
// network (unweighted, undirected, unordered pairs). Aligned with
// network.node_ids; isolated nodes get 0.
std::vector<double> betweenness(const ValidatedNetwork& network);

namespace detail {

// Projection weights written into `out` (node_count^2 doubles, row-major)
// without the empty-margin precondition: columns with u_s = 0 contribute
// nothing and node pairs with max degree 0 get weight 0. This is the form
// the null-model sampler needs, where sampled matrices may have empty
// rows/columns.
void co_occurrence_weights(std::span<const std::uint8_t> entries, std::size_t job_count,
                           std::size_t skill_count, std::span<const int> diversification,
                           std::span<const int> ubiquity, NetworkKind kind,
                           std::span<double> out);

}  // namespace detail

}  // namespace skillnet
