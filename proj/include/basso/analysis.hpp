#ifndef BASSO_ANALYSIS_HPP
#define BASSO_ANALYSIS_HPP

#include <utility>
#include <vector>

#include "basso/domain.hpp"
#include "basso/gp.hpp"
#include "basso/strategies.hpp"

namespace basso {

/// One row of the ratio-condition audit: lhs is the conditional-improvement
/// ratio under the live probabilities (parameter = incumbent y), rhs the same
/// ratio with the strategy re-parameterized at the 20% value quantile z.
struct RatioAuditRow {
  int eval_index = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double y = 0.0;  // incumbent (numerator level)
  double z = 0.0;  // 20% quantile (denominator level)
  bool violated = false;      // lhs < rhs
  bool indeterminate = false; // zero denominator mass
};

/// 20% quantile with linear interpolation between order statistics.
double quantile20(const std::vector<double>& sorted_values);

/// Computes an audit row from live state. Both ratios estimate the level-set
/// fractions by Monte Carlo (improving_volume_fraction); the two levels per
/// subregion replay the same stream state so the paired counts are monotone.
/// Requires at least 5 observed values.
RatioAuditRow audit_assumption_1_3(const PartitionState& state,
                                   const SubregionProbabilities& live_probs,
                                   const StrategyContext& ctx,
                                   const Problem& problem, int mc_points,
                                   RngStream& rng);

/// Probability of improvement below y under a GP posterior at x:
/// Phi((y - mean) / sd), degrading to a step when sd = 0.
double pi_gp(const GpModel& model, const Point& x, double y);

/// Histogram and empirical CDF of a value sample.
struct RangeDistribution {
  struct Bin {
    double lo;
    double hi;
    int count;
  };
  std::vector<Bin> bins;
  /// (distinct sorted value, cumulative fraction <= value) pairs, ending at 1.
  std::vector<std::pair<double, double>> cdf;
};

RangeDistribution range_distribution(std::vector<double> values, int bin_count = 20);

/// Fixed two-sample-set instance for the probability-of-improvement
/// experiment: a 1-d objective over three equal subregions, four points per
/// subregion, the two archives coinciding except for each subregion's best
/// point (strictly better in better_sets).
struct Assumption2Setup {
  Problem problem;
  std::vector<BoxDomain> subregions;
  std::vector<std::vector<Sample>> base_sets;
  std::vector<std::vector<Sample>> better_sets;
  double threshold_y = 0.0;  // 5th lowest value of the pooled archives
};

/// The default construction (1-d centered sinusoidal on [0, 180], cells of
/// width 60). threshold_y is computed from the pooled archives.
Assumption2Setup make_assumption2_setup();

/// Five probability rows, one entry per subregion: uniform improving-volume
/// fraction, GP probability of improvement at the expected-improvement
/// argmax (base and better archives), and quadratic-regression probability
/// of improvement at the model minimizer (base and better archives).
struct Assumption2Table {
  std::vector<double> uniform;
  std::vector<double> gp_base;
  std::vector<double> gp_better;
  std::vector<double> quad_base;
  std::vector<double> quad_better;
};

Assumption2Table assumption2_experiment(const Assumption2Setup& setup,
                                        int mc_points, RngStream& rng);

}  // namespace basso

#endif  // BASSO_ANALYSIS_HPP
