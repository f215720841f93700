#include "basso/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace basso {

void HasPrimeConfig::validate() const {
  if (!(bettering_floor > 0.0 && bettering_floor <= 1.0)) {
    throw std::invalid_argument("HasPrimeConfig: bettering_floor must be in (0, 1]");
  }
  if (rejection_cap < 1) {
    throw std::invalid_argument("HasPrimeConfig: rejection_cap must be positive");
  }
}

RunTrace has_prime_run(const Problem& problem, const HasPrimeConfig& config,
                       int budget, RngStream& rng) {
  config.validate();
  if (budget < 1) throw std::invalid_argument("has_prime_run: budget must be >= 1");

  RunTrace trace;
  Point x = uniform_point(problem.box, rng);
  double y = problem.evaluate(x);
  trace.append(x, y, y, 0);

  while (static_cast<int>(trace.records.size()) < budget) {
    const double b = config.bettering(y);
    if (rng.next_double() < b) {
      bool improved = false;
      if (problem.improving_sampler) {
        if (auto drawn = problem.improving_sampler(y, rng)) {
          x = std::move(*drawn);
          improved = true;
        }
        // an empty improving set (incumbent at the minimum) holds forever
      } else {
        long proposals = 0;
        while (proposals < config.rejection_cap) {
          Point candidate = uniform_point(problem.box, rng);
          ++proposals;
          if (problem.evaluate(candidate) < y) {
            x = std::move(candidate);
            improved = true;
            break;
          }
        }
        if (!improved) {
          trace.truncated = true;
          return trace;
        }
      }
      if (improved) y = problem.evaluate(x);
    }
    trace.append(x, y, y, 0);
  }
  return trace;
}

Problem make_linear_sum_problem(const BoxDomain& box) {
  Problem p{/*name=*/"linear_sum",
            /*box=*/box,
            /*objective=*/{},
            /*optimum_value=*/std::nullopt,
            /*optimum_point=*/std::nullopt,
            /*max_value_hint=*/std::nullopt,
            /*improving_sampler=*/{}};
  p.objective = [](const Point& x) {
    return std::accumulate(x.begin(), x.end(), 0.0);
  };
  double lo_sum = 0.0;
  double hi_sum = 0.0;
  for (std::size_t j = 0; j < box.dim(); ++j) {
    lo_sum += box.lower(j);
    hi_sum += box.upper(j);
  }
  p.optimum_value = lo_sum;
  p.optimum_point = box.lower();
  p.max_value_hint = hi_sum;

  p.improving_sampler = [box, lo_sum](double level,
                                      RngStream& rng) -> std::optional<Point> {
    const double t = level - lo_sum;  // improving set is {sum of offsets < t}
    if (t <= 0.0) return std::nullopt;
    const std::size_t d = box.dim();
    double min_width = box.width(0);
    for (std::size_t j = 1; j < d; ++j) min_width = std::min(min_width, box.width(j));

    Point x(d);
    if (t <= min_width) {
      // corner simplex: t * Dirichlet(1,...,1) spacings are uniform on
      // {z >= 0, sum z <= t}, which lies inside the box here
      std::vector<double> u(d);
      for (double& v : u) v = rng.next_double();
      std::sort(u.begin(), u.end());
      double prev = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        x[j] = box.lower(j) + t * (u[j] - prev);
        prev = u[j];
      }
      return x;
    }
    // the slab cuts the box; rejection is cheap because the improving
    // fraction is at least vol(corner simplex at min_width) / vol(box)
    for (long i = 0; i < 1'000'000; ++i) {
      Point candidate = uniform_point(box, rng);
      double sum = std::accumulate(candidate.begin(), candidate.end(), 0.0);
      if (sum < level) return candidate;
    }
    throw std::runtime_error("linear_sum improving sampler: rejection cap exceeded");
  };
  return p;
}

double lattice_expected_record_evals(int k_per_dim, int d, int trials,
                                     RngStream& rng) {
  if (k_per_dim < 1 || d < 1) {
    throw std::invalid_argument("lattice_expected_record_evals: k and d must be positive");
  }
  if (trials < 1) {
    throw std::invalid_argument("lattice_expected_record_evals: trials must be positive");
  }
  const double count = std::pow(static_cast<double>(k_per_dim), d);
  if (count > 1e7) {
    throw std::invalid_argument("lattice_expected_record_evals: k^d exceeds the 1e7 guard");
  }
  const std::size_t n = static_cast<std::size_t>(std::llround(count));

  // An injective objective (sum of coordinates with a lexicographic
  // perturbation) orders the lattice totally, so a uniform draw from the
  // improving set of the rank-r point is a uniform draw over ranks below r.
  long long total_evals = 0;
  for (int trial = 0; trial < trials; ++trial) {
    std::size_t rank = rng.uniform_index(n) + 1;
    long long evals = 1;
    while (rank > 1) {
      rank = rng.uniform_index(rank - 1) + 1;
      ++evals;
    }
    total_evals += evals;
  }
  return static_cast<double>(total_evals) / static_cast<double>(trials);
}

double corollary1_bound(const LinearityBound& bound, int d) {
  if (bound.lipschitz <= 0.0 || bound.diameter <= 0.0 || bound.epsilon <= 0.0 ||
      bound.bettering_floor <= 0.0) {
    throw std::invalid_argument("corollary1_bound: all inputs must be positive");
  }
  const double arg = bound.lipschitz * bound.diameter / bound.epsilon;
  if (arg <= 1.0) {
    throw std::invalid_argument("corollary1_bound: L*D must exceed epsilon");
  }
  return 1.0 + static_cast<double>(d) * (1.0 / bound.bettering_floor) * std::log(arg);
}

DominanceReport dominance_check(std::span<const RunTrace> traces_a,
                                std::span<const RunTrace> traces_b,
                                std::span<const double> y_grid,
                                std::span<const int> checkpoints) {
  if (traces_a.empty() || traces_a.size() != traces_b.size()) {
    throw std::invalid_argument("dominance_check: trace sets must be non-empty and equal sized");
  }
  const std::size_t budget = traces_a.front().records.size();
  for (const auto& t : traces_a) {
    if (t.records.size() != budget) {
      throw std::invalid_argument("dominance_check: unequal budgets in set A");
    }
  }
  for (const auto& t : traces_b) {
    if (t.records.size() != budget) {
      throw std::invalid_argument("dominance_check: unequal budgets in set B");
    }
  }

  const double n_a = static_cast<double>(traces_a.size());
  const double n_b = static_cast<double>(traces_b.size());

  DominanceReport report;
  for (int k : checkpoints) {
    if (k < 1 || static_cast<std::size_t>(k) > budget) continue;
    for (double y : y_grid) {
      double hits_a = 0.0;
      double hits_b = 0.0;
      for (const auto& t : traces_a) {
        if (t.incumbent_at(k) <= y) hits_a += 1.0;
      }
      for (const auto& t : traces_b) {
        if (t.incumbent_at(k) <= y) hits_b += 1.0;
      }
      const double p_a = hits_a / n_a;
      const double p_b = hits_b / n_b;
      const double sigma =
          std::sqrt(p_a * (1.0 - p_a) / n_a + p_b * (1.0 - p_b) / n_b);
      DominanceCell cell{k, y, p_a, p_b, p_b - p_a, sigma,
                         (p_b - p_a) > 2.0 * sigma};
      report.max_violation = std::max(report.max_violation, cell.diff);
      report.pass = report.pass && !cell.violated;
      report.cells.push_back(cell);
    }
  }
  return report;
}

std::vector<int> default_dominance_checkpoints(int budget) {
  std::vector<int> base = {1, 2, 5, 10, 20, 50, budget};
  std::vector<int> out;
  for (int k : base) {
    if (k >= 1 && k <= budget) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> pooled_quantile_grid(std::span<const RunTrace> traces_a,
                                         std::span<const RunTrace> traces_b,
                                         std::span<const int> checkpoints,
                                         int points) {
  std::vector<double> pooled;
  for (int k : checkpoints) {
    for (const auto& t : traces_a) pooled.push_back(t.incumbent_at(k));
    for (const auto& t : traces_b) pooled.push_back(t.incumbent_at(k));
  }
  std::sort(pooled.begin(), pooled.end());
  std::vector<double> grid;
  for (int i = 1; i <= points; ++i) {
    const double q = static_cast<double>(i) / static_cast<double>(points + 1);
    const double h = q * static_cast<double>(pooled.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    const double v = lo + 1 < pooled.size()
                         ? pooled[lo] + frac * (pooled[lo + 1] - pooled[lo])
                         : pooled.back();
    grid.push_back(v);
  }
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace basso
