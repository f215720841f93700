#include "basso/gp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace basso {
namespace {

double sample_variance(const std::vector<double>& v) {
  const std::size_t n = v.size();
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
}

}  // namespace

double GpModel::kernel(const Point& a, const Point& b) const {
  double q = 0.0;
  for (std::size_t j = 0; j < input_dim_; ++j) {
    const double d = (a[j] - b[j]) / lengthscales_[j];
    q += d * d;
  }
  return signal_variance_ * std::exp(-0.5 * q);
}

GpModel GpModel::fit(const std::vector<Point>& inputs,
                     const std::vector<double>& targets,
                     const GpConfig& config) {
  const std::size_t n = inputs.size();
  if (n < 2 || targets.size() != n) {
    throw std::invalid_argument("GpModel::fit requires >= 2 input/target pairs");
  }
  const std::size_t d = inputs.front().size();
  for (const auto& x : inputs) {
    if (x.size() != d) {
      throw std::invalid_argument("GpModel::fit: inputs of mixed dimension");
    }
  }

  GpModel m;
  m.input_dim_ = d;
  m.inputs_ = inputs;

  if (!config.lengthscales.empty()) {
    if (config.lengthscales.size() != d) {
      throw std::invalid_argument("GpModel::fit: lengthscale count != dimension");
    }
    m.lengthscales_ = config.lengthscales;
  } else {
    // default: 0.3 * observed data range per dimension
    m.lengthscales_.assign(d, 1.0);
    for (std::size_t j = 0; j < d; ++j) {
      double lo = inputs[0][j], hi = inputs[0][j];
      for (const auto& x : inputs) {
        lo = std::min(lo, x[j]);
        hi = std::max(hi, x[j]);
      }
      m.lengthscales_[j] = std::max(0.3 * (hi - lo), 1e-12);
    }
  }
  for (double& l : m.lengthscales_) l = std::max(l, 1e-12);

  m.signal_variance_ = config.signal_variance > 0.0
                           ? config.signal_variance
                           : std::max(sample_variance(targets), 1e-12);

  double mean = 0.0;
  for (double y : targets) mean += y;
  m.target_mean_ = mean / static_cast<double>(n);

  Eigen::MatrixXd K(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double k = m.kernel(inputs[i], inputs[j]);
      K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = k;
      K(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = k;
    }
  }

  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y(static_cast<Eigen::Index>(i)) = targets[i] - m.target_mean_;
  }

  // Cholesky with jitter escalation: configured jitter first, then
  // 1e-10, 1e-9, ..., 1e-4 added on top.
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = std::max(config.noise_jitter, 0.0);
  bool ok = false;
  double extra = 0.0;
  for (int attempt = 0; attempt <= 7; ++attempt) {
    Eigen::MatrixXd Kj = K;
    Kj.diagonal().array() += jitter + extra;
    llt.compute(Kj);
    if (llt.info() == Eigen::Success) {
      ok = true;
      break;
    }
    extra = (extra == 0.0) ? 1e-10 : extra * 10.0;
  }
  if (!ok) {
    throw GpFitError("GpModel::fit: covariance not positive definite after jitter escalation");
  }
  m.effective_jitter_ = jitter + extra;

  const Eigen::MatrixXd L = llt.matrixL();
  const Eigen::VectorXd alpha = llt.solve(y);

  m.chol_.resize(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      m.chol_[i * n + j] =
          L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  m.alpha_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.alpha_[i] = alpha(static_cast<Eigen::Index>(i));
  }
  return m;
}

GpModel GpModel::fit_range_cdf(const std::vector<double>& values,
                               const GpConfig& config) {
  const std::size_t n = values.size();
  if (n < 2) {
    throw std::invalid_argument("GpModel::fit_range_cdf requires >= 2 values");
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    GpModel m;
    m.input_dim_ = 1;
    m.degenerate_cdf_ = true;
    m.degenerate_value_ = sorted.front();
    return m;
  }

  std::vector<Point> inputs(n);
  std::vector<double> targets(n);
  for (std::size_t i = 0; i < n; ++i) {
    inputs[i] = Point{values[i]};
    // ties counted with <=
    const auto ub = std::upper_bound(sorted.begin(), sorted.end(), values[i]);
    targets[i] = static_cast<double>(ub - sorted.begin()) / static_cast<double>(n);
  }
  return fit(inputs, targets, config);
}

GpModel::Prediction GpModel::predict(const Point& x) const {
  if (degenerate_cdf_) {
    return {x[0] >= degenerate_value_ ? 1.0 : 0.0, 0.0};
  }
  if (x.size() != input_dim_) {
    throw std::invalid_argument("GpModel::predict: wrong input dimension");
  }
  const std::size_t n = inputs_.size();
  std::vector<double> ks(n);
  double mean = target_mean_;
  for (std::size_t i = 0; i < n; ++i) {
    ks[i] = kernel(x, inputs_[i]);
    mean += ks[i] * alpha_[i];
  }

  // v = L^{-1} k_*; predictive variance = k(x,x) - v'v, clamped at 0
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = ks[i];
    for (std::size_t j = 0; j < i; ++j) s -= chol_[i * n + j] * v[j];
    v[i] = s / chol_[i * n + i];
  }
  double var = signal_variance_;
  for (std::size_t i = 0; i < n; ++i) var -= v[i] * v[i];
  return {mean, std::max(var, 0.0)};
}

double GpModel::predict_cdf(double y) const {
  if (degenerate_cdf_) {
    return y >= degenerate_value_ ? 1.0 : 0.0;
  }
  const double m = predict(Point{y}).mean;
  return std::clamp(m, 0.0, 1.0);
}

}  // namespace basso
