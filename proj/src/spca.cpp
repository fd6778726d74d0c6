#include "spca.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace pspca {

const char* deflation_mode_name(DeflationMode m) {
  switch (m) {
    case DeflationMode::projection: return "projection";
    case DeflationMode::none: return "none";
  }
  return "unknown";
}

namespace {

// Trace for the non-greedy selectors: record the chosen variables in
// selection order with the R^2 of each prefix.
SelectionTrace prefix_trace(const CenteredData& cd, const Vector& t,
                            const std::vector<Index>& order,
                            Termination terminated_by) {
  SelectionTrace trace;
  trace.terminated_by = terminated_by;
  IndexSet prefix;
  for (Index idx : order) {
    prefix.indices.push_back(idx);
    std::sort(prefix.indices.begin(), prefix.indices.end());
    trace.steps.push_back(SelectionStep{SelectionStep::Action::add, idx,
                                        projection_r2(cd, t, prefix)});
  }
  return trace;
}

SelectionResult select_support(const CenteredData& cd, const GramLeading& pc,
                               const SelectionPolicy& policy) {
  switch (policy.method) {
    case SelectionMethod::forward:
      return forward_select(cd, pc.score, policy);
    case SelectionMethod::backward:
      return backward_eliminate(cd, pc.score, policy);
    case SelectionMethod::threshold: {
      if (policy.max_cardinality < 1) {
        throw Error(ErrorCode::invalid_argument,
                    "threshold selection requires a cardinality");
      }
      const Index card = std::min(policy.max_cardinality, cd.p());
      IndexSet j = threshold_select(pc.pair.vector, card);
      // Selection order for the trace: decreasing |loading|.
      std::vector<Index> order = j.indices;
      std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        const double ma = std::abs(pc.pair.vector[a]);
        const double mb = std::abs(pc.pair.vector[b]);
        if (ma != mb) return ma > mb;
        return a < b;
      });
      SelectionResult res;
      res.support = std::move(j);
      res.trace = prefix_trace(cd, pc.score, order, Termination::cardinality_cap);
      return res;
    }
    case SelectionMethod::exhaustive: {
      if (policy.max_cardinality < 1) {
        throw Error(ErrorCode::invalid_argument,
                    "exhaustive selection requires a cardinality");
      }
      const Index card = std::min(policy.max_cardinality, cd.p());
      auto [j, r2] = exhaustive_best(cd, pc.score, card);
      (void)r2;
      SelectionResult res;
      res.trace =
          prefix_trace(cd, pc.score, j.indices, Termination::cardinality_cap);
      res.support = std::move(j);
      return res;
    }
    case SelectionMethod::full: {
      SelectionResult res;
      res.support = full_index_set(cd.p());
      res.trace =
          prefix_trace(cd, pc.score, res.support.indices, Termination::exhausted_all);
      return res;
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown selection method");
}

}  // namespace

SpcaFit fit_spca(const CenteredData& cd, long k, const SelectionPolicy& policy,
                 const SpcaConfig& config) {
  if (k < 1) {
    throw Error(ErrorCode::invalid_argument, "fit_spca: k must be >= 1");
  }
  validate_policy(policy);

  SpcaFit fit;
  fit.deflation_mode = config.deflation;
  fit.policy = policy;
  fit.power = config.power;
  fit.k_requested = k;
  fit.n = cd.n();
  fit.p = cd.p();
  fit.scaled = cd.scaled;
  fit.total_variance = total_variance(cd);

  CenteredData current = cd;
  for (long i = 0; i < k; ++i) {
    if (total_variance(current) <= 1e-10 * fit.total_variance) {
      break;  // residual variance exhausted
    }
    try {
      const GramLeading pc = leading_pc(current, config.power);

      SelectionPolicy step_policy = policy;
      const size_t step = static_cast<size_t>(i);
      if (step < config.cardinality_schedule.size()) {
        const Index c = std::max<Index>(config.cardinality_schedule[step], 1);
        if (policy.method == SelectionMethod::backward) {
          step_policy.min_cardinality = c;  // backward's knob is the floor
        } else {
          step_policy.max_cardinality = c;
          step_policy.min_cardinality = std::min(step_policy.min_cardinality, c);
        }
      }
      SelectionResult sel = select_support(current, pc, step_policy);

      SparseComponent comp = project_loadings(current, pc.score, sel.support);
      comp.parent_index = i;

      if (config.deflation == DeflationMode::projection) {
        current = deflate(current, comp.score);
      }
      fit.components.push_back(std::move(comp));
      fit.traces.push_back(std::move(sel.trace));
      fit.parent_eigenvalues.push_back(pc.pair.value);
    } catch (const NoConvergenceError& e) {
      throw NoConvergenceError(config.power.max_iter, e.best, i);
    } catch (const Error& e) {
      throw Error(e.code(),
                  "component " + std::to_string(i) + ": " + e.what());
    }
  }

  Matrix scores(fit.n, static_cast<Index>(fit.components.size()));
  for (Index c = 0; c < scores.cols(); ++c) {
    scores.col(c) = fit.components[static_cast<size_t>(c)].score;
  }
  fit.adjusted_cumulative_vexp = adjusted_vexp(cd, scores);
  return fit;
}

}  // namespace pspca
