#include "basso/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "basso/gp.hpp"

namespace basso {
namespace {

constexpr double kCdfFloor = 1e-6;  // keeps strategy c from locking out a cell

SubregionProbabilities normalized(std::vector<double> weights, StrategyKind tag) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::logic_error("strategy produced a negative weight");
    total += w;
  }
  if (total <= 0.0) throw std::logic_error("strategy produced an all-zero weight vector");
  for (double& w : weights) w /= total;
  return {std::move(weights), tag};
}

SubregionProbabilities volume_proportional(std::span<const Subregion> subs,
                                           StrategyKind tag) {
  std::vector<double> w(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) w[i] = subs[i].box.volume();
  return normalized(std::move(w), tag);
}

}  // namespace

StrategyKind strategy_from_string(const std::string& key) {
  if (key == "a") return StrategyKind::a_observed_best;
  if (key == "b") return StrategyKind::b_sample_variance;
  if (key == "c") return StrategyKind::c_gp_range;
  if (key == "d") return StrategyKind::d_confidence_bounds;
  throw std::invalid_argument("unknown strategy key: " + key + " (expected a|b|c|d)");
}

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::a_observed_best: return "a";
    case StrategyKind::b_sample_variance: return "b";
    case StrategyKind::c_gp_range: return "c";
    case StrategyKind::d_confidence_bounds: return "d";
  }
  return "?";
}

SubregionProbabilities strategy_a_observed_best(std::span<const Subregion> subs,
                                                double t) {
  if (subs.empty()) throw std::invalid_argument("strategy a: no subregions");
  std::vector<double> w(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i].samples.empty()) {
      throw std::invalid_argument("strategy a: subregion without samples");
    }
    w[i] = 1.0 / std::max(subs[i].best_value - t + 1.0, 1.0);
  }
  return normalized(std::move(w), StrategyKind::a_observed_best);
}

SubregionProbabilities strategy_b_sample_variance(std::span<const Subregion> subs,
                                                  int iteration) {
  if (subs.empty()) throw std::invalid_argument("strategy b: no subregions");
  if (iteration < 1) throw std::invalid_argument("strategy b: iteration must be >= 1");
  if (iteration == 1) {
    return volume_proportional(subs, StrategyKind::b_sample_variance);
  }
  std::vector<double> w(subs.size());
  bool any_positive = false;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    w[i] = subs[i].sample_variance();  // throws below 2 samples
    any_positive = any_positive || w[i] > 0.0;
  }
  if (!any_positive) {
    // every archive is value-constant; fall back to the exploratory rule
    return volume_proportional(subs, StrategyKind::b_sample_variance);
  }
  return normalized(std::move(w), StrategyKind::b_sample_variance);
}

SubregionProbabilities strategy_c_gp_range(std::span<const Subregion> subs,
                                           double query_value) {
  if (subs.empty()) throw std::invalid_argument("strategy c: no subregions");
  std::vector<double> w(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i].samples.size() < 2) {
      throw std::invalid_argument("strategy c: subregion with fewer than 2 samples");
    }
    std::vector<double> values;
    values.reserve(subs[i].samples.size());
    for (const auto& s : subs[i].samples) values.push_back(s.value);
    const GpModel cdf = GpModel::fit_range_cdf(values);
    w[i] = std::clamp(cdf.predict_cdf(query_value), kCdfFloor, 1.0);
  }
  return normalized(std::move(w), StrategyKind::c_gp_range);
}

SubregionProbabilities strategy_d_confidence_bounds(std::span<const Subregion> subs,
                                                    double t,
                                                    std::size_t incumbent_sub) {
  if (subs.empty()) throw std::invalid_argument("strategy d: no subregions");
  if (incumbent_sub >= subs.size()) {
    throw std::invalid_argument("strategy d: incumbent subregion out of range");
  }
  const double ub = t + std::sqrt(subs[incumbent_sub].sample_variance());
  std::vector<double> w(subs.size());
  bool any = false;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const double lb = subs[i].best_value - std::sqrt(subs[i].sample_variance());
    w[i] = lb >= ub ? 0.0 : ub - lb;
    any = any || w[i] > 0.0;
  }
  if (!any) {
    throw std::logic_error(
        "strategy d: every subregion excluded; the incumbent subregion must "
        "have positive value spread");
  }
  return normalized(std::move(w), StrategyKind::d_confidence_bounds);
}

bool check_assumption_1_3(double lhs_ratio, double rhs_ratio, double tolerance) {
  if (lhs_ratio < 0.0 || lhs_ratio > 1.0 || rhs_ratio < 0.0 || rhs_ratio > 1.0) {
    throw std::invalid_argument("check_assumption_1_3: ratios must lie in [0, 1]");
  }
  return lhs_ratio >= rhs_ratio - tolerance;
}

double range_query_value(std::span<const double> sorted_values, double incumbent,
                         double t, int rank) {
  if (static_cast<int>(sorted_values.size()) < rank) {
    throw std::invalid_argument("range_query_value: fewer values than the query rank");
  }
  const double kth_lowest = sorted_values[static_cast<std::size_t>(rank) - 1];
  return kth_lowest + (t - incumbent);
}

SubregionProbabilities compute_strategy_at(const StrategyContext& ctx,
                                           std::span<const Subregion> subs,
                                           double incumbent,
                                           std::span<const double> sorted_values,
                                           std::size_t incumbent_sub, double t) {
  switch (ctx.kind) {
    case StrategyKind::a_observed_best:
      return strategy_a_observed_best(subs, t);
    case StrategyKind::b_sample_variance:
      return strategy_b_sample_variance(subs, ctx.iteration);
    case StrategyKind::c_gp_range: {
      if (static_cast<int>(sorted_values.size()) < ctx.range_query_rank) {
        return volume_proportional(subs, StrategyKind::c_gp_range);
      }
      const double q =
          range_query_value(sorted_values, incumbent, t, ctx.range_query_rank);
      return strategy_c_gp_range(subs, q);
    }
    case StrategyKind::d_confidence_bounds:
      return strategy_d_confidence_bounds(subs, t, incumbent_sub);
  }
  throw std::logic_error("unknown strategy kind");
}

}  // namespace basso
