#pragma once

// The fitness/complexity iteration: a coupled non-linear map on the binary
// job-skill matrix, run to rank stability. Convergence is monitored through
// per-job growth rates and the projected iteration at which two adjacently
// ranked jobs would swap places (the minimum crossing iteration, MCI); the
// run stops once that projection exceeds a large horizon.

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skillnet/core.hpp"

namespace skillnet {

struct EfcConfig {
    double mci_stop = 1e6;          // stop once MCI >= this horizon
    int max_iterations = 10000;
    int checkpoint_stride = 2;      // MCI evaluated every this many steps (>= 2)
    // Initial Q per skill id; skills not listed start at 1. Empty = all ones.
    std::map<std::string, double> initial_complexity;
};

// One application of the map. F' is the mean-normalized weighted skill sum;
// Q' is computed from the *just-updated* normalized F', then normalized
// itself. Inputs must be strictly positive and match M's dimensions.
std::pair<std::vector<double>, std::vector<double>> efc_step(const BinaryBipartiteMatrix& m,
                                                             const std::vector<double>& fitness,
                                                             const std::vector<double>& complexity);

// Iterates efc_step from the configured initial condition until the MCI
// reaches config.mci_stop or max_iterations is exhausted (the latter yields
// converged=false, not an error). Rejects matrices with empty rows/columns.
FitnessResult run_efc(const BinaryBipartiteMatrix& m, const EfcConfig& config = {});

// Per-entity growth rate between iterations n-2 and n:
// (log F(n) - log F(n-2)) / (log n - log(n-2)). Requires n >= 3.
double growth_rate(double f_at_n, double f_at_n_minus_2, int n);

// Minimum over adjacent pairs of the projected crossing iteration
// CI_c = n * (F_c / F_{c+1})^(1 / (alpha_{c+1} - alpha_c)), considering
// only pairs whose growth-rate gap is positive (the trailing entity is
// catching up). F must be sorted descending. +infinity when no pair
// projects a crossing.
double minimum_crossing_iteration(std::span<const double> fitness_desc,
                                  std::span<const double> alpha, int n);

}  // namespace skillnet
