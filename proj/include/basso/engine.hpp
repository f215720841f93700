#ifndef BASSO_ENGINE_HPP
#define BASSO_ENGINE_HPP

#include <cstdint>
#include <vector>

#include "basso/analysis.hpp"
#include "basso/domain.hpp"
#include "basso/samplers.hpp"
#include "basso/strategies.hpp"

namespace basso {

struct InstrumentationConfig {
  bool assumption1_audit = false;
  int mc_points = 10000;
};

struct BassoConfig {
  StrategyKind strategy = StrategyKind::a_observed_best;
  SamplerConfig sampler;
  int max_stall_evals = 50;
  int budget_evals = 0;
  double branch_fraction = 0.1;
  std::uint64_t seed = 0;
  std::uint64_t replication = 0;
  int range_query_rank = 5;
  InstrumentationConfig instrumentation;

  void validate(std::size_t problem_dim) const;
};

struct RunResult {
  RunTrace trace;
  std::vector<RatioAuditRow> audit;
  int final_subregion_count = 0;
  int final_iteration = 0;
};

/// The main loop: Step 0 initialize, Step 1 sample until the incumbent
/// improves (or the stall cap / budget hits), Step 2 branch, Step 3 update
/// the subregion probabilities, Step 4 stop on budget exhaustion. Every
/// objective evaluation — including branch-time top-ups — counts against the
/// budget and lands in the trace.
///
/// One engine owns one run; replications use independent engines whose
/// rng streams derive from (seed, replication).
class BassoEngine {
 public:
  BassoEngine(const Problem& problem, const BassoConfig& config);

  /// Step 0: the whole domain as one subregion, one uniform evaluation,
  /// selection probability vector [1].
  void initialize();

  /// Step 1. Returns false when the budget ran out during the episode.
  bool step1_sample_until_improvement();

  /// Step 2: branch the best-value and largest-volume subregion groups, then
  /// top every subregion up to at least two samples (budget permitting).
  void step2_branch();

  /// Step 3: recompute the probabilities through the configured strategy;
  /// appends a ratio-audit row when instrumentation is on.
  const SubregionProbabilities& step3_update_probabilities();

  /// Steps 0-4 until the evaluation budget is spent.
  RunResult run();

  const PartitionState& state() const { return state_; }
  const RunTrace& trace() const { return trace_; }
  const SubregionProbabilities& probabilities() const { return probs_; }

 private:
  bool budget_left() const;
  std::size_t pick_subregion();
  /// Evaluates, archives, advances the incumbent, and appends to the trace.
  double evaluate_and_record(Point x, std::size_t sub_index, bool via_selection);

  const Problem& problem_;
  BassoConfig config_;
  StrategyContext strategy_ctx_;

  RngStream select_rng_;
  RngStream point_rng_;
  RngStream mc_rng_;

  PartitionState state_;
  SubregionProbabilities probs_;
  RunTrace trace_;
  std::vector<RatioAuditRow> audit_;
  bool initialized_ = false;
};

RunResult run_basso(const Problem& problem, const BassoConfig& config);

}  // namespace basso

#endif  // BASSO_ENGINE_HPP
