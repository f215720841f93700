#ifndef BASSO_DOMAIN_HPP
#define BASSO_DOMAIN_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "basso/rng.hpp"

namespace basso {

using Point = std::vector<double>;

/// Axis-aligned box with strictly positive width in every coordinate.
class BoxDomain {
 public:
  BoxDomain(std::vector<double> lower, std::vector<double> upper);

  std::size_t dim() const { return lower_.size(); }
  double lower(std::size_t j) const { return lower_[j]; }
  double upper(std::size_t j) const { return upper_[j]; }
  double width(std::size_t j) const { return upper_[j] - lower_[j]; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

  double volume() const;
  bool contains(const Point& x) const;  // closed-box membership
  Point center() const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Finite domain {1,...,k}^d. Only used by the lattice record oracle; kept as
/// a first-class type so problem metadata can state which case applies.
struct LatticeDomain {
  int k_per_dim;
  int d;

  LatticeDomain(int k, int d_);
  /// k^d as a double (may exceed integer range for large d).
  double point_count() const;
};

/// A deterministic objective over a box, with optional optimum metadata for
/// benchmarks. `evaluate` enforces the metadata floor: no value may fall more
/// than 1e-9 below a declared optimum.
struct Problem {
  std::string name;
  BoxDomain box;
  std::function<double(const Point&)> objective;
  std::optional<double> optimum_value;  // y_*
  std::optional<Point> optimum_point;   // x_*
  std::optional<double> max_value_hint; // y^*

  /// Exact sampler of the uniform distribution on {x : f(x) < level}, when
  /// one is known analytically (reference oracles only). Returns nullopt if
  /// the level set is empty.
  std::function<std::optional<Point>(double, RngStream&)> improving_sampler;

  double evaluate(const Point& x) const;
};

struct Sample {
  Point x;
  double value;
};

/// One cell of the current partition together with its sample archive.
struct Subregion {
  int id = 0;
  BoxDomain box;
  std::vector<Sample> samples;
  double best_value;  // min over samples; meaningless while samples empty
  int level = 0;      // branching depth

  Subregion(int id_, BoxDomain box_, int level_ = 0);

  void add_sample(Point x, double value);
  std::size_t sample_count() const { return samples.size(); }
  /// Unbiased sample variance of archived values; requires >= 2 samples.
  double sample_variance() const;
};

/// The mutually exclusive, exhaustive collection of subregions plus
/// incumbent bookkeeping. Mutated only by the engine thread that owns a run.
struct PartitionState {
  std::vector<Subregion> subregions;
  int iteration = 0;  // k
  double incumbent_value = 0.0;
  Point incumbent_point;
  int eval_count = 0;
  int next_subregion_id = 1;

  /// Index of the subregion whose best value equals the incumbent
  /// (lowest id on ties).
  std::size_t incumbent_subregion_index() const;
  double total_volume() const;
  /// All archived objective values, ascending.
  std::vector<double> sorted_observed_values() const;
};

struct TraceRecord {
  int eval_index = 0;  // contiguous from 1
  Point x;
  double value = 0.0;
  double incumbent_after = 0.0;
  int subregion_id = 0;
  /// Subregion-selection probabilities in effect when this evaluation's
  /// subregion was chosen; recorded only when instrumentation is on.
  std::optional<std::vector<double>> probs_snapshot;
};

/// Per-evaluation log of a run. Enables profiles and assumption audits
/// without re-evaluating the objective.
struct RunTrace {
  std::vector<TraceRecord> records;
  int fallback_to_uniform_count = 0;
  bool truncated = false;  // set by reference oracles on rejection-cap hits

  void append(Point x, double value, double incumbent_after, int subregion_id,
              std::optional<std::vector<double>> probs = std::nullopt);
  double final_incumbent() const;
  /// Incumbent after the record with eval_index i (1-based).
  double incumbent_at(int eval_index) const;
};

/// Uniform draw over a box; coordinates are drawn independently in index
/// order so the consumption pattern is reproducible.
Point uniform_point(const BoxDomain& box, RngStream& rng);

/// Halve a subregion along its longest dimension (ties break to the lowest
/// coordinate index). Children get ids next_id and next_id+1, inherit the
/// parent's samples by containment (a sample exactly on the split plane goes
/// to the lower child), and sit one level deeper.
std::pair<Subregion, Subregion> split_halve_longest(const Subregion& sub,
                                                    int next_id);

/// Monte Carlo estimate of the improving-volume fraction
/// v_sigma(y) / v_sigma = P(f(X) <= y) for X uniform on sub.box.
/// Analysis-only: evaluations here never count against an engine budget.
double improving_volume_fraction(const Subregion& sub, double y,
                                 const Problem& problem, int n_mc,
                                 RngStream& rng);

/// Partition sanity: volumes of the cells sum to the domain volume within
/// 1e-9 relative, and a random-point probe lands in exactly one cell
/// interior. Used by tests and engine assertions.
bool partition_is_valid(const std::vector<Subregion>& subregions,
                        const BoxDomain& domain, RngStream& rng,
                        int probe_points = 64);

}  // namespace basso

#endif  // BASSO_DOMAIN_HPP
