#include "selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace pspca {

const char* selection_method_name(SelectionMethod m) {
  switch (m) {
    case SelectionMethod::forward: return "forward";
    case SelectionMethod::backward: return "backward";
    case SelectionMethod::threshold: return "threshold";
    case SelectionMethod::exhaustive: return "exhaustive";
    case SelectionMethod::full: return "full";
  }
  return "unknown";
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::alpha_reached: return "alpha_reached";
    case Termination::cardinality_cap: return "cardinality_cap";
    case Termination::rank_exhausted: return "rank_exhausted";
    case Termination::exhausted_all: return "exhausted_all";
  }
  return "unknown";
}

void validate_policy(const SelectionPolicy& policy) {
  if (!(policy.alpha >= 0.0 && policy.alpha <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "policy: alpha must be in [0, 1]");
  }
  if (policy.max_cardinality < 0 || policy.min_cardinality < 1) {
    throw Error(ErrorCode::invalid_argument,
                "policy: cardinality bounds out of range");
  }
  if (policy.max_cardinality > 0 &&
      policy.min_cardinality > policy.max_cardinality) {
    throw Error(ErrorCode::invalid_argument,
                "policy: min_cardinality exceeds max_cardinality");
  }
}

namespace {

IndexSet sorted_set(std::vector<Index> indices) {
  std::sort(indices.begin(), indices.end());
  return IndexSet{std::move(indices)};
}

// Exact normal-equation R^2 for the alpha stop check; matches the value
// project_loadings will report for the same subset bit-for-bit. Subsets the
// solver rejects simply fail the check.
bool alpha_certified(const CenteredData& cd, const Vector& t,
                     const IndexSet& j, double alpha, double* r2_exact) {
  try {
    const ProjectionSolve solve = solve_projection(cd, t, j);
    *r2_exact = solve.r2;
    return solve.r2 >= alpha;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::singular_submatrix) return false;
    throw;
  }
}

}  // namespace

SelectionResult forward_select(const CenteredData& cd, const Vector& t,
                               const SelectionPolicy& policy) {
  validate_policy(policy);
  const Index n = cd.n();
  const Index p = cd.p();
  if (t.size() != n) {
    throw Error(ErrorCode::invalid_argument,
                "forward_select: score length does not match data");
  }
  const double t2 = t.squaredNorm();
  if (t2 == 0.0) {
    throw Error(ErrorCode::invalid_argument, "forward_select: score is zero");
  }
  const Index max_card =
      policy.max_cardinality > 0 ? std::min(policy.max_cardinality, p) : p;

  Matrix z = cd.x;             // columns residualized against the chosen basis
  Vector z2(p);                // current squared column norms
  Vector z2_orig(p);
  for (Index j = 0; j < p; ++j) {
    z2[j] = z.col(j).squaredNorm();
    z2_orig[j] = z2[j];
  }
  Vector r = t;                // target residual
  std::vector<bool> in_set(static_cast<size_t>(p), false);

  SelectionResult result;
  double r2 = 0.0;
  while (true) {
    Index best = -1;
    double best_gain = 0.0;
    for (Index j = 0; j < p; ++j) {
      if (in_set[static_cast<size_t>(j)]) continue;
      // Collinearity guard: residual norm below 1e-12 of the original norm.
      if (std::sqrt(z2[j]) <= 1e-12 * std::sqrt(z2_orig[j])) continue;
      const double c = z.col(j).dot(r);
      const double gain = (c * c) / (z2[j] * t2);
      if (gain > best_gain) {
        best_gain = gain;
        best = j;
      }
    }
    if (best < 0 || best_gain <= 1e-12) {
      const Index in_count = result.support.size();
      result.trace.terminated_by = (in_count == p) ? Termination::exhausted_all
                                                   : Termination::rank_exhausted;
      break;
    }

    in_set[static_cast<size_t>(best)] = true;
    result.support.indices.push_back(best);
    r2 += best_gain;
    result.trace.steps.push_back(
        SelectionStep{SelectionStep::Action::add, best, r2});

    const Vector q = z.col(best) / std::sqrt(z2[best]);
    r -= q.dot(r) * q;
    for (Index j = 0; j < p; ++j) {
      if (in_set[static_cast<size_t>(j)]) continue;
      z.col(j) -= q.dot(z.col(j)) * q;
      z2[j] = z.col(j).squaredNorm();
    }
    z.col(best).setZero();
    z2[best] = 0.0;

    const Index card = result.support.size();
    if (r2 >= policy.alpha && card >= policy.min_cardinality) {
      IndexSet candidate = sorted_set(result.support.indices);
      double r2_exact = 0.0;
      if (alpha_certified(cd, t, candidate, policy.alpha, &r2_exact)) {
        result.support = std::move(candidate);
        result.trace.terminated_by = Termination::alpha_reached;
        return result;
      }
    }
    if (card >= max_card) {
      result.trace.terminated_by = (card == p) ? Termination::exhausted_all
                                               : Termination::cardinality_cap;
      break;
    }
  }

  result.support = sorted_set(result.support.indices);
  return result;
}

SelectionResult backward_eliminate(const CenteredData& cd, const Vector& t,
                                   const SelectionPolicy& policy) {
  validate_policy(policy);
  const Index p = cd.p();
  if (t.size() != cd.n()) {
    throw Error(ErrorCode::invalid_argument,
                "backward_eliminate: score length does not match data");
  }
  if (t.squaredNorm() == 0.0) {
    throw Error(ErrorCode::invalid_argument, "backward_eliminate: score is zero");
  }

  IndexSet current = full_index_set(p);

  // Binding R^2 for a subset: the exact normal-equation value when the subset
  // is solvable (this is what project_loadings reports), the basis-dropping
  // value otherwise. Using it for every accept decision keeps the alpha
  // guarantee bit-consistent with the reported component.
  const auto binding_r2 = [&](const IndexSet& j) -> double {
    try {
      return solve_projection(cd, t, j).r2;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::singular_submatrix) throw;
      return projection_r2(cd, t, j);
    }
  };

  {
    const double entry = binding_r2(current);
    if (entry < policy.alpha) {
      throw Error(ErrorCode::alpha_infeasible,
                  "backward_eliminate: full set reaches R^2 = " +
                      std::to_string(entry) + " < alpha = " +
                      std::to_string(policy.alpha));
    }
  }

  SelectionResult result;
  while (current.size() > policy.min_cardinality) {
    // Candidate removal keeping R^2 maximal; ties drop the highest index.
    Index best_pos = -1;
    double best_r2 = -1.0;
    for (Index pos = 0; pos < current.size(); ++pos) {
      IndexSet trial = current;
      trial.indices.erase(trial.indices.begin() + pos);
      const double r2 = projection_r2(cd, t, trial);
      if (r2 >= best_r2) {
        best_r2 = r2;
        best_pos = pos;
      }
    }

    IndexSet trial = current;
    trial.indices.erase(trial.indices.begin() + best_pos);
    const double accept_r2 = binding_r2(trial);
    if (accept_r2 < policy.alpha) {
      result.trace.terminated_by = Termination::alpha_reached;
      result.support = std::move(current);
      return result;
    }
    result.trace.steps.push_back(SelectionStep{
        SelectionStep::Action::remove,
        current.indices[static_cast<size_t>(best_pos)], accept_r2});
    current = std::move(trial);
  }

  result.trace.terminated_by = Termination::cardinality_cap;
  result.support = std::move(current);
  return result;
}

IndexSet threshold_select(const Vector& v, Index k) {
  const Index p = v.size();
  if (k < 1 || k > p) {
    throw Error(ErrorCode::invalid_argument,
                "threshold_select: k must be in [1, p]");
  }
  std::vector<Index> order(static_cast<size_t>(p));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double ma = std::abs(v[a]);
    const double mb = std::abs(v[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });
  order.resize(static_cast<size_t>(k));
  return IndexSet{[&] {
    std::sort(order.begin(), order.end());
    return order;
  }()};
}

std::pair<IndexSet, double> exhaustive_best(const CenteredData& cd,
                                            const Vector& t, Index card) {
  const Index p = cd.p();
  if (p > 25) {
    throw Error(ErrorCode::too_large,
                "exhaustive_best: p = " + std::to_string(p) +
                    " exceeds the combinatorial guard (25)");
  }
  if (card < 1 || card > p) {
    throw Error(ErrorCode::invalid_argument,
                "exhaustive_best: cardinality must be in [1, p]");
  }

  // Lexicographic enumeration; strict improvement keeps the first winner.
  std::vector<Index> comb(static_cast<size_t>(card));
  std::iota(comb.begin(), comb.end(), Index{0});
  IndexSet best_set;
  double best_r2 = -1.0;
  while (true) {
    IndexSet j{comb};
    const double r2 = projection_r2(cd, t, j);
    if (r2 > best_r2) {
      best_r2 = r2;
      best_set = std::move(j);
    }
    // Advance to the next combination.
    Index i = card - 1;
    while (i >= 0 && comb[static_cast<size_t>(i)] == p - card + i) --i;
    if (i < 0) break;
    ++comb[static_cast<size_t>(i)];
    for (Index m = i + 1; m < card; ++m) {
      comb[static_cast<size_t>(m)] = comb[static_cast<size_t>(m - 1)] + 1;
    }
  }
  return {std::move(best_set), best_r2};
}

}  // namespace pspca
