#ifndef BASSO_STRATEGIES_HPP
#define BASSO_STRATEGIES_HPP

#include <span>
#include <string>
#include <vector>

#include "basso/domain.hpp"

namespace basso {

enum class StrategyKind { a_observed_best, b_sample_variance, c_gp_range, d_confidence_bounds };

StrategyKind strategy_from_string(const std::string& key);  // "a" | "b" | "c" | "d"
std::string to_string(StrategyKind kind);

/// A probability vector over the current subregions. Every strategy output
/// has entries in [0,1] summing to 1 within 1e-9.
struct SubregionProbabilities {
  std::vector<double> probs;
  StrategyKind strategy_tag;
};

/// Observed best function value: weight 1 / (y_i^* - t + 1), normalized.
/// `t` is the incumbent during normal operation, so every denominator term
/// is >= 1; when re-parameterized above the incumbent (ratio audits) the
/// term is floored at 1 to keep weights bounded and positive.
SubregionProbabilities strategy_a_observed_best(std::span<const Subregion> subs,
                                                double t);

/// Sample variance: volume-proportional on the first iteration, afterwards
/// proportional to each subregion's sample variance (>= 2 samples required).
SubregionProbabilities strategy_b_sample_variance(std::span<const Subregion> subs,
                                                  int iteration);

/// Gaussian process on the range distribution: per subregion, fit a 1-d GP
/// to the empirical CDF of its values and evaluate it at query_value (the
/// fifth-lowest globally observed value during normal operation), clamped to
/// [1e-6, 1], then normalize.
SubregionProbabilities strategy_c_gp_range(std::span<const Subregion> subs,
                                           double query_value);

/// Confidence bounds: zero weight when LB_i >= UB, otherwise proportional to
/// UB - LB_i, with LB_i = y_i^* - s(sigma_i) and UB = t + s(incumbent's
/// subregion). Throws if every subregion is excluded (cannot happen while the
/// incumbent's subregion has positive value spread).
SubregionProbabilities strategy_d_confidence_bounds(std::span<const Subregion> subs,
                                                    double t,
                                                    std::size_t incumbent_sub);

/// The ratio condition on two conditional-improvement ratios: satisfied iff
/// lhs >= rhs - tolerance. Both arguments must lie in [0, 1].
bool check_assumption_1_3(double lhs_ratio, double rhs_ratio, double tolerance = 0.0);

/// How strategy c turns an incumbent parameter into its CDF query value:
/// the k-th lowest globally observed value, shifted along with the parameter.
double range_query_value(std::span<const double> sorted_values, double incumbent,
                         double t, int rank = 5);

struct StrategyContext {
  StrategyKind kind = StrategyKind::a_observed_best;
  int iteration = 1;          // strategy b's k
  int range_query_rank = 5;   // strategy c's "fifth lowest"
};

/// Dispatches to the configured strategy with the incumbent parameter
/// replaced by t (t = incumbent reproduces normal operation). Falls back to
/// volume-proportional probabilities when strategy c has fewer than
/// range_query_rank global values.
SubregionProbabilities compute_strategy_at(const StrategyContext& ctx,
                                           std::span<const Subregion> subs,
                                           double incumbent,
                                           std::span<const double> sorted_values,
                                           std::size_t incumbent_sub, double t);

inline SubregionProbabilities compute_strategy(
    const StrategyContext& ctx, std::span<const Subregion> subs, double incumbent,
    std::span<const double> sorted_values, std::size_t incumbent_sub) {
  return compute_strategy_at(ctx, subs, incumbent, sorted_values, incumbent_sub,
                             incumbent);
}

}  // namespace basso

#endif  // BASSO_STRATEGIES_HPP
