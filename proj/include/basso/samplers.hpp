#ifndef BASSO_SAMPLERS_HPP
#define BASSO_SAMPLERS_HPP

#include <string>

#include "basso/domain.hpp"
#include "basso/gp.hpp"

namespace basso {

enum class SamplerKind { A_uniform, B_gp_ei, C_quadreg };
enum class EiFormula {
  standard,       // (y*-g) Phi(u) + s phi(u), u = (y*-g)/s
  paper_literal,  // u + s Phi(u) exactly as printed
};

SamplerKind sampler_from_string(const std::string& key);  // "A" | "B" | "C"
std::string to_string(SamplerKind kind);

struct SamplerConfig {
  SamplerKind kind = SamplerKind::A_uniform;
  int ei_grid_per_dim = 11;  // >= 2
  EiFormula ei_formula = EiFormula::standard;
  int max_dim_for_B = 50;
  std::size_t ei_grid_cap = 10000;  // above this, the grid is subsampled

  void validate() const;
};

/// Expected improvement below `best` for a posterior N(mean, sd^2).
/// The standard form is clamped at 0 and degrades to max(best - mean, 0)
/// when sd = 0; the literal form keeps the printed expression, guarding the
/// sd = 0 limit at +/-1e12.
double expected_improvement(double mean, double sd, double best,
                            EiFormula formula = EiFormula::standard);
double expected_improvement(const GpModel& model, const Point& x, double best,
                            EiFormula formula = EiFormula::standard);

struct SampleOutcome {
  Point x;
  bool fell_back_to_uniform = false;
};

/// Uniform draw over the subregion's box.
Point sample_uniform(const Subregion& sub, RngStream& rng);

/// Fit a GP to the subregion's archive and return the EI-argmax over a grid
/// (ei_grid_per_dim points per axis, subsampled through rng above
/// ei_grid_cap total points; ties go to the lowest lexicographic grid
/// index). Falls back to a uniform draw when the fit is impossible.
SampleOutcome sample_gp_ei(const Subregion& sub, RngStream& rng,
                           const SamplerConfig& config);

/// Fit a regularized quadratic regression (lambda from select_lambda) and
/// return its approximate minimizer over the subregion's box. Falls back to
/// a uniform draw when the fit is impossible.
SampleOutcome sample_quadreg(const Subregion& sub, RngStream& rng);

/// Dispatch on config.kind. The returned point always lies in sub.box.
SampleOutcome generate_point(const Subregion& sub, RngStream& rng,
                             const SamplerConfig& config);

}  // namespace basso

#endif  // BASSO_SAMPLERS_HPP
