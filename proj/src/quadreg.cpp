#include "basso/quadreg.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace basso {
namespace {

// index of the cross term x_l * x_m (l < m, 0-based) within the cross block
std::size_t cross_offset(std::size_t l, std::size_t m, std::size_t d) {
  return l * d - l * (l + 1) / 2 + (m - l - 1);
}

Eigen::MatrixXd design_matrix(const std::vector<Sample>& samples) {
  const std::size_t n = samples.size();
  const std::size_t d = samples.front().x.size();
  const std::size_t p = quad_feature_count(d);
  Eigen::MatrixXd X(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = quad_features(samples[i].x);
    for (std::size_t j = 0; j < p; ++j) {
      X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f[j];
    }
  }
  return X;
}

std::vector<double> coordinate_descent(const Eigen::MatrixXd& X,
                                       const Eigen::VectorXd& y,
                                       double lambda) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  const double inv_n = 1.0 / static_cast<double>(n);

  Eigen::VectorXd col_sq(p);
  for (Eigen::Index j = 0; j < p; ++j) col_sq(j) = X.col(j).squaredNorm() * inv_n;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd residual = y;  // y - X beta

  constexpr int kMaxSweeps = 10000;
  constexpr double kTol = 1e-8;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double max_delta = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (col_sq(j) == 0.0) continue;
      const double old = beta(j);
      const double rho = inv_n * X.col(j).dot(residual) + col_sq(j) * old;
      double updated;
      if (j == 0) {
        updated = rho / col_sq(j);  // intercept is unpenalized
      } else {
        const double mag = std::abs(rho) - lambda;
        updated = mag > 0.0 ? std::copysign(mag, rho) / col_sq(j) : 0.0;
      }
      if (updated != old) {
        residual -= (updated - old) * X.col(j);
        beta(j) = updated;
        max_delta = std::max(max_delta, std::abs(updated - old));
      }
    }
    if (max_delta < kTol) break;
  }
  return {beta.data(), beta.data() + p};
}

std::vector<double> gram_inverse(const Eigen::MatrixXd& X) {
  const Eigen::Index p = X.cols();
  Eigen::MatrixXd G = X.transpose() * X;
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  Eigen::MatrixXd inv;
  if (llt.info() == Eigen::Success) {
    inv = llt.solve(Eigen::MatrixXd::Identity(p, p));
  } else {
    G.diagonal().array() += 1e-8;
    inv = G.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
  }
  std::vector<double> flat(static_cast<std::size_t>(p) * p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      flat[static_cast<std::size_t>(i * p + j)] = inv(i, j);
    }
  }
  return flat;
}

double mean_squared_residual(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                             const std::vector<double>& beta) {
  Eigen::Map<const Eigen::VectorXd> b(beta.data(),
                                      static_cast<Eigen::Index>(beta.size()));
  return (y - X * b).squaredNorm() / static_cast<double>(X.rows());
}

}  // namespace

std::size_t quad_feature_count(std::size_t d) {
  return 1 + 2 * d + d * (d - 1) / 2;
}

std::vector<double> quad_features(const Point& x) {
  const std::size_t d = x.size();
  std::vector<double> f;
  f.reserve(quad_feature_count(d));
  f.push_back(1.0);
  for (double xi : x) f.push_back(xi);
  for (double xi : x) f.push_back(xi * xi);
  for (std::size_t l = 0; l < d; ++l) {
    for (std::size_t m = l + 1; m < d; ++m) {
      f.push_back(x[l] * x[m]);
    }
  }
  return f;
}

double QuadModel::beta_quadratic(std::size_t l, std::size_t m) const {
  if (l > m) std::swap(l, m);
  if (l == m) return beta_[1 + dim_ + l];
  return beta_[1 + 2 * dim_ + cross_offset(l, m, dim_)];
}

double QuadModel::predict(const Point& x) const {
  const auto f = quad_features(x);
  double v = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) v += beta_[j] * f[j];
  return v;
}

double QuadModel::standard_error(const Point& x) const {
  const auto q = quad_features(x);
  const std::size_t p = q.size();
  double quad_form = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < p; ++j) row += gram_inverse_[i * p + j] * q[j];
    quad_form += q[i] * row;
  }
  return std::sqrt(std::max(mse_ * quad_form, 0.0));
}

QuadModel fit_quadreg(const std::vector<Sample>& samples, double lambda) {
  if (samples.size() < 2) {
    throw std::invalid_argument("fit_quadreg requires >= 2 samples");
  }
  if (lambda < 0.0) {
    throw std::invalid_argument("fit_quadreg: lambda must be non-negative");
  }
  const std::size_t d = samples.front().x.size();
  for (const auto& s : samples) {
    if (s.x.size() != d) {
      throw std::invalid_argument("fit_quadreg: samples of mixed dimension");
    }
  }

  const Eigen::MatrixXd X = design_matrix(samples);
  Eigen::VectorXd y(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    y(static_cast<Eigen::Index>(i)) = samples[i].value;
  }

  QuadModel model;
  model.dim_ = d;
  model.lambda_ = lambda;
  model.n_train_ = static_cast<int>(samples.size());
  if (lambda == 0.0) {
    // minimum-norm least squares
    const Eigen::VectorXd b =
        X.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(y);
    model.beta_.assign(b.data(), b.data() + b.size());
  } else {
    model.beta_ = coordinate_descent(X, y, lambda);
  }
  model.mse_ = mean_squared_residual(X, y, model.beta_);
  model.gram_inverse_ = gram_inverse(X);
  model.train_points_.reserve(samples.size());
  for (const auto& s : samples) model.train_points_.push_back(s.x);
  return model;
}

double quadreg_loss(const QuadModel& model, const std::vector<Sample>& samples,
                    double lambda) {
  double sq = 0.0;
  for (const auto& s : samples) {
    const double r = model.predict(s.x) - s.value;
    sq += r * r;
  }
  double penalty = 0.0;
  const auto& beta = model.coefficients();
  for (std::size_t j = 1; j < beta.size(); ++j) penalty += std::abs(beta[j]);
  return sq / (2.0 * static_cast<double>(samples.size())) + lambda * penalty;
}

const std::vector<double>& lambda_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g(20);
    const double lo = std::log(1e-4);
    const double hi = std::log(1e2);
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) /
                               static_cast<double>(g.size() - 1));
    }
    return g;
  }();
  return grid;
}

double select_lambda(const std::vector<Sample>& samples) {
  if (samples.size() <= 50) return 1.0;

  constexpr int kFolds = 5;
  double best_lambda = lambda_grid().front();
  double best_err = std::numeric_limits<double>::infinity();
  for (double lambda : lambda_grid()) {
    double err = 0.0;
    long held_out = 0;
    for (int fold = 0; fold < kFolds; ++fold) {
      std::vector<Sample> train;
      std::vector<Sample> test;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        if (static_cast<int>(i % kFolds) == fold) {
          test.push_back(samples[i]);
        } else {
          train.push_back(samples[i]);
        }
      }
      if (train.size() < 2 || test.empty()) continue;
      const QuadModel m = fit_quadreg(train, lambda);
      for (const auto& s : test) {
        const double r = m.predict(s.x) - s.value;
        err += r * r;
        ++held_out;
      }
    }
    err /= static_cast<double>(std::max<long>(held_out, 1));
    // ties break toward larger lambda; the grid is ascending
    if (err <= best_err) {
      best_err = err;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

Point minimize_quad_in_box(const QuadModel& model, const BoxDomain& box,
                           RngStream& rng) {
  const std::size_t d = box.dim();
  if (model.dim() != d) {
    throw std::invalid_argument("minimize_quad_in_box: model/box dimension mismatch");
  }

  const auto descend = [&](Point x) {
    constexpr int kMaxSweeps = 500;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      double max_move = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        // q along coordinate j is a*t^2 + b*t + const
        const double a = model.beta_quadratic(j, j);
        double b = model.beta_linear(j);
        for (std::size_t m = 0; m < d; ++m) {
          if (m != j) b += model.beta_quadratic(j, m) * x[m];
        }
        const double lo = box.lower(j);
        const double hi = box.upper(j);
        double t;
        if (a > 0.0) {
          t = std::clamp(-b / (2.0 * a), lo, hi);
        } else if (a == 0.0) {
          t = b > 0.0 ? lo : (b < 0.0 ? hi : x[j]);
        } else {
          const double at_lo = a * lo * lo + b * lo;
          const double at_hi = a * hi * hi + b * hi;
          t = at_lo <= at_hi ? lo : hi;
        }
        max_move = std::max(max_move, std::abs(t - x[j]));
        x[j] = t;
      }
      if (max_move < 1e-12 * std::max(1.0, box.volume())) break;
    }
    return x;
  };

  std::vector<Point> starts;
  starts.push_back(box.center());
  for (int i = 0; i < 4; ++i) starts.push_back(uniform_point(box, rng));
  // best in-box training point keeps the local-improvement guarantee
  const Point* best_train = nullptr;
  double best_train_value = std::numeric_limits<double>::infinity();
  for (const auto& t : model.train_points()) {
    if (box.contains(t)) {
      const double v = model.predict(t);
      if (v < best_train_value) {
        best_train_value = v;
        best_train = &t;
      }
    }
  }
  if (best_train != nullptr) starts.push_back(*best_train);

  Point best = starts.front();
  double best_value = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    const Point x = descend(s);
    const double v = model.predict(x);
    if (v < best_value) {
      best_value = v;
      best = x;
    }
  }
  return best;
}

double pi_quadreg(const QuadModel& model, const Point& x, double y) {
  const int dof = model.n_train() - 3;
  if (dof < 1) {
    throw std::invalid_argument("pi_quadreg requires n_train >= 4 (dof >= 1)");
  }
  const double q = model.predict(x);
  const double se = model.standard_error(x);
  const double scale = std::sqrt(model.mse() + se * se);
  if (scale == 0.0) {
    return y > q ? 1.0 : (y < q ? 0.0 : 0.5);
  }
  const boost::math::students_t_distribution<double> t(dof);
  return boost::math::cdf(t, (y - q) / scale);
}

}  // namespace basso
