#pragma once

// CSV ingestion and preprocessing: raw importance tables, the occupation
// hierarchy, wage and label joins, plus aggregation up the hierarchy and
// binarization into the bipartite matrix.

#include <istream>

#include "skillnet/core.hpp"

namespace skillnet {

// Long-format CSV `job_id,skill_id,importance`, one row per present pair.
// Importance must parse as a real in [1, 5]; duplicate pairs are rejected.
ImportanceTable parse_importance_table(std::istream& in);

// CSV `detailed_id,broad_id,minor_id,major_id` with an optional trailing
// `weight` column (aggregation weight, default 1, strictly positive).
OccupationHierarchy parse_hierarchy(std::istream& in);

// CSV `job_id,annual_wage_usd`; wages must be strictly positive.
WageTable parse_wages(std::istream& in);

// CSV `job_id,abstract_manual,routine`; tokens are matched
// case-insensitively against {abstract, manual, unlabeled} and
// {routinary, non-routinary, unlabeled}.
LabelTable parse_labels(std::istream& in);

// Replaces each job row by its parent category at `level`, averaging
// importance over member occupations with a present value (weighted by the
// hierarchy's aggregation weights; missing values are excluded, not
// zeroed). Ids already at the target level pass through unchanged, which
// makes the operation idempotent; ids known to neither side are an error.
ImportanceTable aggregate_importance(const ImportanceTable& table,
                                     const OccupationHierarchy& hierarchy, Level level);

// M_js = 1 iff the importance is present and strictly greater than the
// column mean over present values. Entirely-missing and all-equal columns
// come out all-zero.
BinaryBipartiteMatrix binarize(const ImportanceTable& table);

}  // namespace skillnet
