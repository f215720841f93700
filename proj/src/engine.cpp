#include "basso/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace basso {

void BassoConfig::validate(std::size_t problem_dim) const {
  if (budget_evals < 1) {
    throw std::invalid_argument("BassoConfig: budget_evals must be >= 1");
  }
  if (!(branch_fraction > 0.0 && branch_fraction <= 1.0)) {
    throw std::invalid_argument("BassoConfig: branch_fraction must be in (0, 1]");
  }
  if (max_stall_evals < 1) {
    throw std::invalid_argument("BassoConfig: max_stall_evals must be >= 1");
  }
  if (instrumentation.mc_points < 1) {
    throw std::invalid_argument("BassoConfig: mc_points must be >= 1");
  }
  if (range_query_rank < 1) {
    throw std::invalid_argument("BassoConfig: range_query_rank must be >= 1");
  }
  sampler.validate();
  if (sampler.kind == SamplerKind::B_gp_ei &&
      problem_dim > static_cast<std::size_t>(sampler.max_dim_for_B)) {
    throw std::invalid_argument(
        "BassoConfig: sampler B is limited to max_dim_for_B dimensions");
  }
}

BassoEngine::BassoEngine(const Problem& problem, const BassoConfig& config)
    : problem_(problem),
      config_(config),
      select_rng_(make_stream(config.seed, config.replication,
                              RngConsumer::subregion_selection)),
      point_rng_(make_stream(config.seed, config.replication,
                             RngConsumer::point_generation)),
      mc_rng_(make_stream(config.seed, config.replication,
                          RngConsumer::mc_estimation)),
      probs_{{}, config.strategy} {
  config_.validate(problem.box.dim());
  strategy_ctx_.kind = config_.strategy;
  strategy_ctx_.range_query_rank = config_.range_query_rank;
}

bool BassoEngine::budget_left() const {
  return state_.eval_count < config_.budget_evals;
}

double BassoEngine::evaluate_and_record(Point x, std::size_t sub_index,
                                        bool via_selection) {
  const double value = problem_.evaluate(x);
  state_.eval_count += 1;

  Subregion& sub = state_.subregions[sub_index];
  sub.add_sample(x, value);
  if (state_.eval_count == 1 || value < state_.incumbent_value) {
    state_.incumbent_value = value;
    state_.incumbent_point = x;
  }

  std::optional<std::vector<double>> snapshot;
  if (config_.instrumentation.assumption1_audit && via_selection) {
    snapshot = probs_.probs;
  }
  trace_.append(std::move(x), value, state_.incumbent_value, sub.id,
                std::move(snapshot));
  return value;
}

void BassoEngine::initialize() {
  state_ = PartitionState{};
  state_.subregions.emplace_back(1, problem_.box, 0);
  state_.next_subregion_id = 2;
  probs_ = SubregionProbabilities{{1.0}, config_.strategy};
  trace_ = RunTrace{};
  audit_.clear();
  initialized_ = true;

  evaluate_and_record(uniform_point(problem_.box, point_rng_), 0, true);
}

std::size_t BassoEngine::pick_subregion() {
  const double u = select_rng_.next_double();
  double cum = 0.0;
  for (std::size_t i = 0; i < probs_.probs.size(); ++i) {
    cum += probs_.probs[i];
    if (u < cum) return i;
  }
  return probs_.probs.size() - 1;  // guard against rounding in the tail
}

bool BassoEngine::step1_sample_until_improvement() {
  if (!initialized_) throw std::logic_error("engine not initialized");
  int episode_evals = 0;
  while (episode_evals < config_.max_stall_evals && budget_left()) {
    const std::size_t i = pick_subregion();
    SampleOutcome out = generate_point(state_.subregions[i], point_rng_,
                                       config_.sampler);
    if (out.fell_back_to_uniform) trace_.fallback_to_uniform_count += 1;

    const double before = state_.incumbent_value;
    const double value = evaluate_and_record(std::move(out.x), i, true);
    ++episode_evals;
    if (value < before) break;
  }
  return budget_left();
}

void BassoEngine::step2_branch() {
  const std::size_t m = state_.subregions.size();
  const std::size_t n_branch = static_cast<std::size_t>(
      std::ceil(config_.branch_fraction * static_cast<double>(m)));

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& sa = state_.subregions[a];
    const auto& sb = state_.subregions[b];
    if (sa.best_value != sb.best_value) return sa.best_value < sb.best_value;
    return sa.id < sb.id;
  });

  std::vector<std::size_t> chosen(order.begin(),
                                  order.begin() + std::min(n_branch, m));
  std::vector<std::size_t> remaining(order.begin() + chosen.size(), order.end());
  std::sort(remaining.begin(), remaining.end(),
            [&](std::size_t a, std::size_t b) {
              const double va = state_.subregions[a].box.volume();
              const double vb = state_.subregions[b].box.volume();
              if (va != vb) return va > vb;
              return state_.subregions[a].id < state_.subregions[b].id;
            });
  for (std::size_t i = 0; i < std::min(n_branch, remaining.size()); ++i) {
    chosen.push_back(remaining[i]);
  }

  // split in storage order so ids are assigned deterministically
  std::sort(chosen.begin(), chosen.end());
  std::vector<Subregion> next;
  next.reserve(m + chosen.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (cursor < chosen.size() && chosen[cursor] == i) {
      auto [lo, hi] = split_halve_longest(state_.subregions[i],
                                          state_.next_subregion_id);
      state_.next_subregion_id += 2;
      next.push_back(std::move(lo));
      next.push_back(std::move(hi));
      ++cursor;
    } else {
      next.push_back(std::move(state_.subregions[i]));
    }
  }
  state_.subregions = std::move(next);

  // top every thin cell up to two observations
  for (std::size_t i = 0; i < state_.subregions.size() && budget_left(); ++i) {
    while (state_.subregions[i].sample_count() < 2 && budget_left()) {
      evaluate_and_record(uniform_point(state_.subregions[i].box, point_rng_), i,
                          false);
    }
  }

  const double total = state_.total_volume();
  const double domain = problem_.box.volume();
  if (std::abs(total - domain) > 1e-9 * std::max(1.0, domain)) {
    throw std::logic_error("step2_branch: partition volume drifted from the domain");
  }
}

const SubregionProbabilities& BassoEngine::step3_update_probabilities() {
  strategy_ctx_.iteration = state_.iteration + 1;
  const auto values = state_.sorted_observed_values();
  probs_ = compute_strategy(strategy_ctx_, state_.subregions,
                            state_.incumbent_value, values,
                            state_.incumbent_subregion_index());

  if (config_.instrumentation.assumption1_audit &&
      values.size() >= static_cast<std::size_t>(config_.range_query_rank)) {
    audit_.push_back(audit_assumption_1_3(state_, probs_, strategy_ctx_,
                                          problem_,
                                          config_.instrumentation.mc_points,
                                          mc_rng_));
  }
  return probs_;
}

RunResult BassoEngine::run() {
  initialize();
  while (budget_left()) {
    if (!step1_sample_until_improvement()) break;
    step2_branch();
    if (!budget_left()) break;
    step3_update_probabilities();
    state_.iteration += 1;
  }
  RunResult result;
  result.trace = std::move(trace_);
  result.audit = std::move(audit_);
  result.final_subregion_count = static_cast<int>(state_.subregions.size());
  result.final_iteration = state_.iteration;
  return result;
}

RunResult run_basso(const Problem& problem, const BassoConfig& config) {
  BassoEngine engine(problem, config);
  return engine.run();
}

}  // namespace basso
