#include "basso/samplers.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "basso/quadreg.hpp"

namespace basso {
namespace {

constexpr double kGuard = 1e12;

double normal_cdf(double z) {
  static const boost::math::normal_distribution<double> unit;
  return boost::math::cdf(unit, z);
}

double normal_pdf(double z) {
  static const boost::math::normal_distribution<double> unit;
  return boost::math::pdf(unit, z);
}

GpConfig subregion_gp_config(const Subregion& sub) {
  GpConfig config;
  config.lengthscales.resize(sub.box.dim());
  for (std::size_t j = 0; j < sub.box.dim(); ++j) {
    config.lengthscales[j] = 0.3 * sub.box.width(j);
  }
  return config;
}

}  // namespace

SamplerKind sampler_from_string(const std::string& key) {
  if (key == "A") return SamplerKind::A_uniform;
  if (key == "B") return SamplerKind::B_gp_ei;
  if (key == "C") return SamplerKind::C_quadreg;
  throw std::invalid_argument("unknown sampler key: " + key + " (expected A|B|C)");
}

std::string to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::A_uniform: return "A";
    case SamplerKind::B_gp_ei: return "B";
    case SamplerKind::C_quadreg: return "C";
  }
  return "?";
}

void SamplerConfig::validate() const {
  if (ei_grid_per_dim < 2) {
    throw std::invalid_argument("SamplerConfig: ei_grid_per_dim must be >= 2");
  }
  if (ei_grid_cap < 1) {
    throw std::invalid_argument("SamplerConfig: ei_grid_cap must be positive");
  }
  if (max_dim_for_B < 1) {
    throw std::invalid_argument("SamplerConfig: max_dim_for_B must be positive");
  }
}

double expected_improvement(double mean, double sd, double best,
                            EiFormula formula) {
  const double gap = best - mean;
  if (formula == EiFormula::standard) {
    if (sd <= 0.0) return std::max(gap, 0.0);
    const double u = gap / sd;
    return std::max(gap * normal_cdf(u) + sd * normal_pdf(u), 0.0);
  }
  // literal form: u + s * Phi(u)
  if (sd <= 0.0) {
    return gap > 0.0 ? kGuard : (gap < 0.0 ? -kGuard : 0.0);
  }
  const double u = gap / sd;
  return u + sd * normal_cdf(u);
}

double expected_improvement(const GpModel& model, const Point& x, double best,
                            EiFormula formula) {
  const auto p = model.predict(x);
  return expected_improvement(p.mean, std::sqrt(p.variance), best, formula);
}

Point sample_uniform(const Subregion& sub, RngStream& rng) {
  return uniform_point(sub.box, rng);
}

SampleOutcome sample_gp_ei(const Subregion& sub, RngStream& rng,
                           const SamplerConfig& config) {
  config.validate();
  if (sub.samples.size() < 2 ||
      sub.box.dim() > static_cast<std::size_t>(config.max_dim_for_B)) {
    return {sample_uniform(sub, rng), true};
  }

  GpModel model;
  try {
    std::vector<Point> inputs;
    std::vector<double> targets;
    inputs.reserve(sub.samples.size());
    targets.reserve(sub.samples.size());
    for (const auto& s : sub.samples) {
      inputs.push_back(s.x);
      targets.push_back(s.value);
    }
    model = GpModel::fit(inputs, targets, subregion_gp_config(sub));
  } catch (const GpFitError&) {
    return {sample_uniform(sub, rng), true};
  }

  const std::size_t d = sub.box.dim();
  const std::size_t g = static_cast<std::size_t>(config.ei_grid_per_dim);
  const auto grid_coord = [&](std::size_t axis, std::size_t idx) {
    return sub.box.lower(axis) +
           sub.box.width(axis) * static_cast<double>(idx) /
               static_cast<double>(g - 1);
  };

  double total = 1.0;
  bool overflow = false;
  for (std::size_t j = 0; j < d; ++j) {
    total *= static_cast<double>(g);
    if (total > static_cast<double>(config.ei_grid_cap)) {
      overflow = true;
      break;
    }
  }

  Point best_point;
  double best_ei = -std::numeric_limits<double>::infinity();
  Point x(d);
  if (!overflow) {
    // full lattice in lexicographic order; strict > keeps the first maximum
    std::vector<std::size_t> idx(d, 0);
    const std::size_t count = static_cast<std::size_t>(total);
    for (std::size_t flat = 0; flat < count; ++flat) {
      for (std::size_t j = 0; j < d; ++j) x[j] = grid_coord(j, idx[j]);
      const double ei = expected_improvement(model, x, sub.best_value,
                                             config.ei_formula);
      if (ei > best_ei) {
        best_ei = ei;
        best_point = x;
      }
      for (std::size_t j = d; j-- > 0;) {
        if (++idx[j] < g) break;
        idx[j] = 0;
      }
    }
  } else {
    for (std::size_t draw = 0; draw < config.ei_grid_cap; ++draw) {
      for (std::size_t j = 0; j < d; ++j) x[j] = grid_coord(j, rng.uniform_index(g));
      const double ei = expected_improvement(model, x, sub.best_value,
                                             config.ei_formula);
      if (ei > best_ei) {
        best_ei = ei;
        best_point = x;
      }
    }
  }
  return {std::move(best_point), false};
}

SampleOutcome sample_quadreg(const Subregion& sub, RngStream& rng) {
  if (sub.samples.size() < 2) {
    return {sample_uniform(sub, rng), true};
  }
  try {
    const double lambda = select_lambda(sub.samples);
    const QuadModel model = fit_quadreg(sub.samples, lambda);
    return {minimize_quad_in_box(model, sub.box, rng), false};
  } catch (const std::exception&) {
    return {sample_uniform(sub, rng), true};
  }
}

SampleOutcome generate_point(const Subregion& sub, RngStream& rng,
                             const SamplerConfig& config) {
  SampleOutcome out;
  switch (config.kind) {
    case SamplerKind::A_uniform:
      out = {sample_uniform(sub, rng), false};
      break;
    case SamplerKind::B_gp_ei:
      out = sample_gp_ei(sub, rng, config);
      break;
    case SamplerKind::C_quadreg:
      out = sample_quadreg(sub, rng);
      break;
  }
  if (!sub.box.contains(out.x)) {
    throw std::logic_error("sampler produced a point outside the subregion");
  }
  return out;
}

}  // namespace basso
