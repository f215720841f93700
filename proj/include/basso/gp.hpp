#ifndef BASSO_GP_HPP
#define BASSO_GP_HPP

#include <stdexcept>
#include <vector>

#include "basso/domain.hpp"

namespace basso {

struct GpFitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GpConfig {
  /// Per-dimension squared-exponential lengthscales. Empty means
  /// 0.3 * data range per dimension (0.3 * box width when the caller fits
  /// over a subregion and passes the widths).
  std::vector<double> lengthscales;
  /// Kernel signal variance; non-positive means "use the sample variance of
  /// the targets".
  double signal_variance = -1.0;
  double noise_jitter = 1e-8;
};

/// Gaussian-process regressor with a squared-exponential kernel. Targets are
/// mean-centered internally; no hyperparameter optimization is performed, so
/// fitting is deterministic. Fitted models are immutable and safe for
/// concurrent prediction.
class GpModel {
 public:
  struct Prediction {
    double mean;
    double variance;  // clamped at 0
  };

  /// Requires >= 2 samples of equal dimension. Cholesky factorization
  /// escalates an additive jitter from 1e-10 to 1e-4 before giving up with
  /// GpFitError.
  static GpModel fit(const std::vector<Point>& inputs,
                     const std::vector<double>& targets,
                     const GpConfig& config = {});

  /// 1-d model of the empirical cumulative range distribution: training
  /// pairs are (y_j, F(y_j)) with F(y_j) = #{values <= y_j} / N. When all
  /// values coincide the GP is bypassed and predict_cdf evaluates the step
  /// CDF directly.
  static GpModel fit_range_cdf(const std::vector<double>& values,
                               const GpConfig& config = {});

  Prediction predict(const Point& x) const;

  /// Range-CDF convenience: predicted mean at scalar y clamped to [0, 1].
  double predict_cdf(double y) const;

  bool degenerate_cdf() const { return degenerate_cdf_; }
  std::size_t input_dim() const { return input_dim_; }
  std::size_t train_count() const { return inputs_.size(); }
  const std::vector<double>& lengthscales() const { return lengthscales_; }
  double noise_jitter() const { return effective_jitter_; }

 private:
  GpModel() = default;

  double kernel(const Point& a, const Point& b) const;

  std::size_t input_dim_ = 0;
  std::vector<Point> inputs_;
  std::vector<double> lengthscales_;
  double signal_variance_ = 1.0;
  double effective_jitter_ = 0.0;
  double target_mean_ = 0.0;

  // Cholesky factor L of K + jitter*I (row-major lower triangle) and
  // alpha = K^{-1} (y - mean).
  std::vector<double> chol_;
  std::vector<double> alpha_;

  bool degenerate_cdf_ = false;
  double degenerate_value_ = 0.0;
};

}  // namespace basso

#endif  // BASSO_GP_HPP
