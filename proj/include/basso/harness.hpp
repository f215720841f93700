#ifndef BASSO_HARNESS_HPP
#define BASSO_HARNESS_HPP

#include <span>
#include <string>
#include <vector>

#include "basso/engine.hpp"

namespace basso {

/// Runs n_reps independent replications; replication r derives its streams
/// from (config.seed, r), so solver variants sharing a seed share their
/// per-replication base randomness (common random numbers). Thread count 1
/// runs serially; results are ordered by replication either way.
std::vector<RunResult> run_replications(const Problem& problem,
                                        BassoConfig config, int n_reps,
                                        int threads = 1);

/// The profile convergence test: f(x0) - f_s >= (1 - tau) * (f(x0) - f_L).
bool convergence_test(double f_x0, double f_s, double f_L, double tau);

/// Mean-over-replications record data for one (problem, solver) cell.
struct SolverRecordCurve {
  std::string problem;
  std::string solver;
  double f_x0 = 0.0;                // mean starting value
  std::vector<double> mean_record;  // mean incumbent at evaluation K (1-based)
  int replications = 0;
};

SolverRecordCurve make_record_curve(std::string problem, std::string solver,
                                    std::span<const RunTrace> traces);

struct ProfilePoint {
  int k;
  std::string solver;
  double d_s;
};

/// Fraction of problems each solver "solves" within K evaluations at
/// tolerance tau, where f_L per (problem, K) is the best mean value among
/// solvers. Every problem must carry the same solver set and budget.
std::vector<ProfilePoint> performance_profile(
    std::span<const SolverRecordCurve> curves, double tau,
    std::span<const int> k_grid);

/// Up to n_points log-spaced integer checkpoints in [1, budget].
std::vector<int> default_k_grid(int budget, int n_points = 50);

}  // namespace basso

#endif  // BASSO_HARNESS_HPP
