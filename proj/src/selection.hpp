#pragma once

#include <utility>
#include <vector>

#include "projection.hpp"

namespace pspca {

enum class SelectionMethod { forward, backward, threshold, exhaustive, full };

const char* selection_method_name(SelectionMethod m);

struct SelectionPolicy {
  SelectionMethod method = SelectionMethod::forward;
  double alpha = 0.95;        // target projection R^2 in [0, 1]
  Index max_cardinality = 0;  // 0 = unlimited
  Index min_cardinality = 1;
};

void validate_policy(const SelectionPolicy& policy);

enum class Termination { alpha_reached, cardinality_cap, rank_exhausted, exhausted_all };

const char* termination_name(Termination t);

struct SelectionStep {
  enum class Action { add, remove };
  Action action = Action::add;
  Index index = 0;
  double r2_after = 0.0;
};

struct SelectionTrace {
  std::vector<SelectionStep> steps;
  Termination terminated_by = Termination::rank_exhausted;
};

struct SelectionResult {
  IndexSet support;
  SelectionTrace trace;
};

// Greedy forward selection toward the alpha target. Each step adds the
// variable with the largest R^2 gain (ties broken by lowest index),
// maintained incrementally from residualized columns in O(n p) per step.
// Before declaring alpha_reached, the R^2 is re-verified with the exact
// normal-equation statistic that project_loadings reports, so a returned
// alpha_reached support always satisfies the guarantee.
SelectionResult forward_select(const CenteredData& cd, const Vector& t,
                               const SelectionPolicy& policy);

// Starts from all variables and repeatedly removes the one whose removal
// keeps R^2 maximal (ties broken by removing the highest index), while the
// result stays >= alpha and above min_cardinality. alpha_infeasible when even
// the full set falls short.
SelectionResult backward_eliminate(const CenteredData& cd, const Vector& t,
                                   const SelectionPolicy& policy);

// Indices of the k largest |v_j|; ties broken by lowest index. The naive
// baseline the projection methods are benchmarked against.
IndexSet threshold_select(const Vector& v, Index k);

// Best cardinality-card subset by exhaustive enumeration, evaluated with the
// same projection_r2 statistic the other selectors report. Guarded to p <= 25.
std::pair<IndexSet, double> exhaustive_best(const CenteredData& cd,
                                            const Vector& t, Index card);

}  // namespace pspca
