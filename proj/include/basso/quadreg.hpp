#ifndef BASSO_QUADREG_HPP
#define BASSO_QUADREG_HPP

#include <cstddef>
#include <vector>

#include "basso/domain.hpp"

namespace basso {

/// Feature count of the full quadratic basis: 1 + 2d + C(d,2) (3 when d = 1).
std::size_t quad_feature_count(std::size_t d);

/// Quadratic basis at x, ordered [1, x_1..x_d, x_1^2..x_d^2, cross terms
/// x_l*x_m for l < m in lexicographic order].
std::vector<double> quad_features(const Point& x);

/// L1-regularized quadratic regression model. Coefficients follow the
/// quad_features ordering, the intercept is unpenalized, and the loss is
///   (1/2N) sum (q(x_j) - y_j)^2 + lambda * sum |beta_linear,quadratic|.
class QuadModel {
 public:
  std::size_t dim() const { return dim_; }
  double lambda() const { return lambda_; }
  double mse() const { return mse_; }  // (1/N) sum of squared residuals
  int n_train() const { return n_train_; }
  const std::vector<double>& coefficients() const { return beta_; }

  double beta0() const { return beta_[0]; }
  double beta_linear(std::size_t j) const { return beta_[1 + j]; }
  /// Coefficient of x_l * x_m for l <= m (squares included).
  double beta_quadratic(std::size_t l, std::size_t m) const;

  double predict(const Point& x) const;
  /// Prediction standard error sqrt(MSE * Q' (X'X)^-1 Q) at x. The Gram is
  /// unregularized, with a 1e-8 ridge added when singular.
  double standard_error(const Point& x) const;

  const std::vector<Point>& train_points() const { return train_points_; }

 private:
  friend QuadModel fit_quadreg(const std::vector<Sample>&, double);

  std::size_t dim_ = 0;
  std::vector<double> beta_;
  double lambda_ = 0.0;
  double mse_ = 0.0;
  int n_train_ = 0;
  std::vector<double> gram_inverse_;  // row-major p x p
  std::vector<Point> train_points_;
};

/// Fits by minimum-norm least squares when lambda = 0 and by cyclic
/// coordinate descent with soft thresholding when lambda > 0 (convergence at
/// max coefficient change < 1e-8 or 10,000 sweeps). Requires >= 2 samples.
QuadModel fit_quadreg(const std::vector<Sample>& samples, double lambda);

/// The fitted objective value of `model` on `samples` at penalty `lambda`.
double quadreg_loss(const QuadModel& model, const std::vector<Sample>& samples,
                    double lambda);

/// lambda = 1 for N <= 50 points; otherwise 5-fold cross-validation over a
/// 20-point log grid on [1e-4, 1e2], minimizing mean held-out squared error
/// with ties broken toward larger lambda. Folds are assigned by index mod 5.
double select_lambda(const std::vector<Sample>& samples);
const std::vector<double>& lambda_grid();

/// Approximate box-constrained minimizer of the quadratic model: cyclic
/// exact coordinate minimization from multiple starts (box center, four
/// uniform draws, and the best in-box training point). The result never
/// scores worse than any in-box training point under the model.
Point minimize_quad_in_box(const QuadModel& model, const BoxDomain& box,
                           RngStream& rng);

/// Probability of improvement below y at x: P(T < (y - q(x)) /
/// sqrt(MSE + SE(x)^2)) under a t distribution with n_train - 3 degrees of
/// freedom. Requires n_train >= 4.
double pi_quadreg(const QuadModel& model, const Point& x, double y);

}  // namespace basso

#endif  // BASSO_QUADREG_HPP
