#pragma once

// Maximum-entropy null model for the bipartite matrix (the BiCM) and the
// Monte-Carlo validation of projection links against it.

#include <cstdint>

#include "skillnet/core.hpp"

namespace skillnet {

struct ValidationConfig {
    int sample_count = 1000;
    double threshold = 0.95;      // in (0,1); an edge survives iff fraction >= threshold
    std::uint64_t seed = 0;
    // Comparison is fixed to strict B_obs > B_sample: ties count against
    // the edge.
};

// Solves for the Lagrange multipliers of the degree-constrained
// maximum-entropy ensemble, so that the cell probabilities
// p_js = 1/(exp(theta_j + mu_s) + 1) reproduce every diversification and
// ubiquity within `tolerance`. Degenerate rows/columns (empty or full)
// are pinned to exact 0/1 probabilities, and entities with equal degree
// share a multiplier. Throws NumericalError when the iteration budget is
// exhausted before reaching the tolerance.
BicmSolution solve_bicm(const BinaryBipartiteMatrix& m, double tolerance = 1e-8);

// Draws one matrix from the ensemble: cell (j,s) is 1 with probability
// p_js, decided by a counter-based random stream keyed on
// (seed, sample_index, j, s). The same key always produces the same
// matrix, so sampling can be distributed freely without changing results.
BinaryBipartiteMatrix sample_bipartite(const BicmSolution& solution, std::uint64_t sample_index,
                                       std::uint64_t seed);

// Uniform double in [0,1) for one cell of one sample; the primitive
// behind sample_bipartite, exposed for statistical tests.
double cell_uniform(std::uint64_t seed, std::uint64_t sample_index, std::uint64_t j,
                    std::uint64_t s);

// Computes the observed projection of `m`, then re-projects
// config.sample_count null samples and keeps, per node pair, the fraction
// of samples the observed weight strictly exceeds. Pairs with zero
// observed weight are omitted (they can never validate). The overload
// without a solution solves the BiCM at tolerance 1e-8 first; passing a
// solution explicitly lets callers reuse a solve or substitute custom
// probabilities.
ValidatedNetwork validate_projection(const BinaryBipartiteMatrix& m, NetworkKind kind,
                                     const ValidationConfig& config);
ValidatedNetwork validate_projection(const BinaryBipartiteMatrix& m, NetworkKind kind,
                                     const ValidationConfig& config, const BicmSolution& solution);

}  // namespace skillnet
