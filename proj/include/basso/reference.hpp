#ifndef BASSO_REFERENCE_HPP
#define BASSO_REFERENCE_HPP

#include <functional>
#include <span>
#include <vector>

#include "basso/domain.hpp"

namespace basso {

/// Hesitant adaptive search with uniform underlying sampling: on each
/// iteration, with probability b(Y_k) the next point is drawn uniformly from
/// the improving set {x : f(x) < Y_k}, otherwise the chain holds.
struct HasPrimeConfig {
  double bettering_floor = 1.0;                  // constant B in (0, 1]
  std::function<double(double)> bettering_fn;    // overrides the constant when set
  long rejection_cap = 1'000'000;

  double bettering(double y) const {
    return bettering_fn ? bettering_fn(y) : bettering_floor;
  }
  void validate() const;
};

/// Runs the chain for `budget` records (record 1 is the initial uniform
/// draw). Improving draws use the problem's exact improving sampler when
/// present, otherwise rejection against the box; exceeding the rejection cap
/// truncates the trace and sets its `truncated` flag.
RunTrace has_prime_run(const Problem& problem, const HasPrimeConfig& config,
                       int budget, RngStream& rng);

/// f(x) = sum of coordinates over `box`, with an exact sampler of the
/// uniform distribution on its improving level sets.
Problem make_linear_sum_problem(const BoxDomain& box);

/// Monte Carlo mean of the evaluations a uniform-improving record process
/// needs to first hit the minimum of an injective objective on the lattice
/// {1..k}^d. Guarded at k^d <= 1e7.
double lattice_expected_record_evals(int k_per_dim, int d, int trials,
                                     RngStream& rng);

/// Inputs of the continuous-domain evaluation bound.
struct LinearityBound {
  double lipschitz;        // L
  double diameter;         // D
  double epsilon;          // target gap
  double bettering_floor;  // B
};

/// 1 + d * (1/B) * ln(L*D / epsilon). Requires L*D > epsilon.
double corollary1_bound(const LinearityBound& bound, int d);

/// Empirical stochastic-dominance comparison of two trace populations at a
/// set of record checkpoints: A dominates B when P(Y_A <= y) >= P(Y_B <= y)
/// everywhere up to two-sigma binomial noise.
struct DominanceCell {
  int checkpoint;  // 1-based record index
  double y;
  double p_a;
  double p_b;
  double diff;   // p_b - p_a; positive means B looks better here
  double sigma;  // binomial standard error of diff
  bool violated; // diff > 2 sigma
};

struct DominanceReport {
  std::vector<DominanceCell> cells;
  double max_violation = 0.0;  // max signed diff across cells
  bool pass = true;            // no cell violated
};

DominanceReport dominance_check(std::span<const RunTrace> traces_a,
                                std::span<const RunTrace> traces_b,
                                std::span<const double> y_grid,
                                std::span<const int> checkpoints);

/// {1, 2, 5, 10, 20, 50, budget} clipped to the budget.
std::vector<int> default_dominance_checkpoints(int budget);

/// Pooled quantile grid over the checkpointed incumbents of both
/// populations; a convenient y_grid for dominance_check.
std::vector<double> pooled_quantile_grid(std::span<const RunTrace> traces_a,
                                         std::span<const RunTrace> traces_b,
                                         std::span<const int> checkpoints,
                                         int points = 19);

}  // namespace basso

#endif  // BASSO_REFERENCE_HPP
