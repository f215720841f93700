#include "basso/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace basso {

BoxDomain::BoxDomain(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw std::invalid_argument("BoxDomain: bounds must be non-empty and of equal size");
  }
  for (std::size_t j = 0; j < lower_.size(); ++j) {
    if (!(lower_[j] < upper_[j])) {
      throw std::invalid_argument("BoxDomain: lower bound must be strictly below upper");
    }
  }
}

double BoxDomain::volume() const {
  double v = 1.0;
  for (std::size_t j = 0; j < dim(); ++j) v *= width(j);
  return v;
}

bool BoxDomain::contains(const Point& x) const {
  if (x.size() != dim()) return false;
  for (std::size_t j = 0; j < dim(); ++j) {
    if (x[j] < lower_[j] || x[j] > upper_[j]) return false;
  }
  return true;
}

Point BoxDomain::center() const {
  Point c(dim());
  for (std::size_t j = 0; j < dim(); ++j) c[j] = 0.5 * (lower_[j] + upper_[j]);
  return c;
}

LatticeDomain::LatticeDomain(int k, int d_) : k_per_dim(k), d(d_) {
  if (k < 1 || d_ < 1) {
    throw std::invalid_argument("LatticeDomain: k and d must be positive");
  }
}

double LatticeDomain::point_count() const {
  return std::pow(static_cast<double>(k_per_dim), d);
}

double Problem::evaluate(const Point& x) const {
  const double value = objective(x);
  if (optimum_value && value < *optimum_value - 1e-9) {
    throw std::logic_error("Problem '" + name +
                           "': evaluation fell below the declared optimum");
  }
  return value;
}

Subregion::Subregion(int id_, BoxDomain box_, int level_)
    : id(id_),
      box(std::move(box_)),
      best_value(std::numeric_limits<double>::infinity()),
      level(level_) {}

void Subregion::add_sample(Point x, double value) {
  best_value = samples.empty() ? value : std::min(best_value, value);
  samples.push_back(Sample{std::move(x), value});
}

double Subregion::sample_variance() const {
  const std::size_t n = samples.size();
  if (n < 2) {
    throw std::logic_error("Subregion::sample_variance requires >= 2 samples");
  }
  double mean = 0.0;
  for (const auto& s : samples) mean += s.value;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (const auto& s : samples) {
    const double d = s.value - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(n - 1);
}

std::size_t PartitionState::incumbent_subregion_index() const {
  if (subregions.empty()) {
    throw std::logic_error("PartitionState: no subregions");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < subregions.size(); ++i) {
    if (subregions[i].best_value < subregions[best].best_value) best = i;
  }
  return best;
}

double PartitionState::total_volume() const {
  double v = 0.0;
  for (const auto& s : subregions) v += s.box.volume();
  return v;
}

std::vector<double> PartitionState::sorted_observed_values() const {
  std::vector<double> values;
  for (const auto& sub : subregions) {
    for (const auto& s : sub.samples) values.push_back(s.value);
  }
  std::sort(values.begin(), values.end());
  return values;
}

void RunTrace::append(Point x, double value, double incumbent_after,
                      int subregion_id, std::optional<std::vector<double>> probs) {
  TraceRecord rec;
  rec.eval_index = static_cast<int>(records.size()) + 1;
  rec.x = std::move(x);
  rec.value = value;
  rec.incumbent_after = incumbent_after;
  rec.subregion_id = subregion_id;
  rec.probs_snapshot = std::move(probs);
  records.push_back(std::move(rec));
}

double RunTrace::final_incumbent() const {
  if (records.empty()) {
    throw std::logic_error("RunTrace: empty trace");
  }
  return records.back().incumbent_after;
}

double RunTrace::incumbent_at(int eval_index) const {
  if (eval_index < 1 || eval_index > static_cast<int>(records.size())) {
    throw std::out_of_range("RunTrace::incumbent_at: index outside trace");
  }
  return records[static_cast<std::size_t>(eval_index) - 1].incumbent_after;
}

Point uniform_point(const BoxDomain& box, RngStream& rng) {
  Point x(box.dim());
  for (std::size_t j = 0; j < box.dim(); ++j) {
    x[j] = rng.uniform(box.lower(j), box.upper(j));
  }
  return x;
}

std::pair<Subregion, Subregion> split_halve_longest(const Subregion& sub,
                                                    int next_id) {
  const BoxDomain& box = sub.box;
  std::size_t axis = 0;
  for (std::size_t j = 1; j < box.dim(); ++j) {
    if (box.width(j) > box.width(axis)) axis = j;  // ties keep the lowest index
  }
  const double mid = box.lower(axis) + 0.5 * box.width(axis);

  std::vector<double> lo_upper = box.upper();
  lo_upper[axis] = mid;
  std::vector<double> hi_lower = box.lower();
  hi_lower[axis] = mid;

  Subregion lower_child(next_id, BoxDomain(box.lower(), lo_upper), sub.level + 1);
  Subregion upper_child(next_id + 1, BoxDomain(hi_lower, box.upper()), sub.level + 1);

  for (const auto& s : sub.samples) {
    // a sample exactly on the split plane goes to the lower child
    if (s.x[axis] <= mid) {
      lower_child.add_sample(s.x, s.value);
    } else {
      upper_child.add_sample(s.x, s.value);
    }
  }
  return {std::move(lower_child), std::move(upper_child)};
}

double improving_volume_fraction(const Subregion& sub, double y,
                                 const Problem& problem, int n_mc,
                                 RngStream& rng) {
  if (n_mc < 1) {
    throw std::invalid_argument("improving_volume_fraction: n_mc must be >= 1");
  }
  long hits = 0;
  for (int i = 0; i < n_mc; ++i) {
    const Point x = uniform_point(sub.box, rng);
    if (problem.evaluate(x) <= y) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n_mc);
}

bool partition_is_valid(const std::vector<Subregion>& subregions,
                        const BoxDomain& domain, RngStream& rng,
                        int probe_points) {
  double vol = 0.0;
  for (const auto& s : subregions) vol += s.box.volume();
  const double dv = domain.volume();
  if (std::abs(vol - dv) > 1e-9 * std::max(1.0, dv)) return false;

  for (int p = 0; p < probe_points; ++p) {
    const Point x = uniform_point(domain, rng);
    int containing = 0;
    for (const auto& s : subregions) {
      if (s.box.contains(x)) ++containing;
    }
    // a probe on a shared face may land in two closures; zero is a hole
    if (containing == 0 || containing > 2) return false;
  }
  return true;
}

}  // namespace basso
