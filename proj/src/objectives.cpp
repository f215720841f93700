#include "basso/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace basso {
namespace {

constexpr double kPi = std::numbers::pi;

double rosenbrock(const Point& x) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = 1.0 - x[i];
    const double b = x[i + 1] - x[i] * x[i];
    sum += a * a + 100.0 * b * b;
  }
  return sum;
}

double centered_sinusoidal(const Point& x) {
  double prod = 1.0;
  for (double xi : x) prod *= std::sin(kPi * xi / 180.0);
  return -(2.5 * prod + prod) + 3.5;
}

double shifted_sinusoidal(const Point& x) {
  double slow = 1.0;
  double fast = 1.0;
  for (double xi : x) {
    slow *= std::sin(kPi * (xi + 60.0) / 180.0);
    fast *= std::sin(kPi * (xi + 60.0) / 36.0);
  }
  return -(2.5 * slow + fast) + 3.5;
}

double ackley(const Point& x) {
  const double d = static_cast<double>(x.size());
  double sq = 0.0;
  double cs = 0.0;
  for (double xi : x) {
    sq += xi * xi;
    cs += std::cos(2.0 * kPi * xi);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 +
         std::exp(1.0);
}

double branin2(double x1, double x2) {
  const double a = x2 - (5.0 / (4.0 * kPi * kPi)) * x1 * x1 + (5.0 / kPi) * x1 - 6.0;
  return a * a + 10.0 * (1.0 - 1.0 / (8.0 * kPi)) * std::cos(x1) + 10.0;
}

double repeated_branin(const Point& x) {
  const std::size_t blocks = x.size() / 2;
  double sum = 0.0;
  for (std::size_t i = 0; i < blocks; ++i) {
    sum += branin2(x[2 * i], x[2 * i + 1]);
  }
  return sum / static_cast<double>(blocks);
}

// Standard 6-d Hartmann constants (a_ij, c_i, p_ij).
constexpr double kHartA[4][6] = {
    {10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
    {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
    {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
    {17.0, 8.0, 0.05, 10.0, 0.1, 14.0},
};
constexpr double kHartC[4] = {1.0, 1.2, 3.0, 3.2};
constexpr double kHartP[4][6] = {
    {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
    {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
    {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
    {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381},
};

double hartmann6(const double* x) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double expo = 0.0;
    for (int j = 0; j < 6; ++j) {
      const double d = x[j] - kHartP[i][j];
      expo += kHartA[i][j] * d * d;
    }
    sum += kHartC[i] * std::exp(-expo);
  }
  return -sum;
}

double repeated_hartmann(const Point& x) {
  const std::size_t blocks = x.size() / 6;
  double sum = 0.0;
  for (std::size_t i = 0; i < blocks; ++i) {
    sum += hartmann6(x.data() + 6 * i);
  }
  return sum / static_cast<double>(blocks);
}

BoxDomain uniform_box(int dim, double lo, double hi) {
  return BoxDomain(std::vector<double>(static_cast<std::size_t>(dim), lo),
                   std::vector<double>(static_cast<std::size_t>(dim), hi));
}

}  // namespace

BenchmarkSpec make_benchmark(BenchmarkName name, int dim) {
  if (dim < 1) throw std::invalid_argument("benchmark dimension must be positive");
  switch (name) {
    case BenchmarkName::rosenbrock:
      if (dim < 2) throw std::invalid_argument("rosenbrock requires dim >= 2");
      return {name, dim, uniform_box(dim, -2.0, 2.0)};
    case BenchmarkName::centered_sinusoidal:
      return {name, dim, uniform_box(dim, 0.0, 180.0)};
    case BenchmarkName::shifted_sinusoidal:
      return {name, dim, uniform_box(dim, 0.0, 180.0)};
    case BenchmarkName::ackley:
      return {name, dim, uniform_box(dim, -32.0, 32.0)};
    case BenchmarkName::repeated_branin:
      if (dim < 2 || dim % 2 != 0) {
        throw std::invalid_argument("repeated_branin requires an even dim >= 2");
      }
      return {name, dim, uniform_box(dim, -1.0, 1.0)};
    case BenchmarkName::repeated_hartmann:
      if (dim < 6 || dim % 6 != 0) {
        throw std::invalid_argument("repeated_hartmann requires dim divisible by 6");
      }
      return {name, dim, uniform_box(dim, -1.0, 1.0)};
  }
  throw std::invalid_argument("unknown benchmark");
}

BenchmarkSpec make_benchmark(const std::string& name, int dim) {
  if (name == "rosenbrock") return make_benchmark(BenchmarkName::rosenbrock, dim);
  if (name == "centered_sinusoidal") {
    return make_benchmark(BenchmarkName::centered_sinusoidal, dim);
  }
  if (name == "shifted_sinusoidal") {
    return make_benchmark(BenchmarkName::shifted_sinusoidal, dim);
  }
  if (name == "ackley") return make_benchmark(BenchmarkName::ackley, dim);
  if (name == "repeated_branin") {
    return make_benchmark(BenchmarkName::repeated_branin, dim);
  }
  if (name == "repeated_hartmann") {
    return make_benchmark(BenchmarkName::repeated_hartmann, dim);
  }
  throw std::invalid_argument("unknown benchmark name: " + name);
}

double evaluate(const BenchmarkSpec& spec, const Point& x) {
  if (!spec.box.contains(x)) {
    throw std::domain_error("benchmark evaluation outside the search box");
  }
  switch (spec.name) {
    case BenchmarkName::rosenbrock: return rosenbrock(x);
    case BenchmarkName::centered_sinusoidal: return centered_sinusoidal(x);
    case BenchmarkName::shifted_sinusoidal: return shifted_sinusoidal(x);
    case BenchmarkName::ackley: return ackley(x);
    case BenchmarkName::repeated_branin: return repeated_branin(x);
    case BenchmarkName::repeated_hartmann: return repeated_hartmann(x);
  }
  throw std::logic_error("unknown benchmark");
}

Problem make_problem(const BenchmarkSpec& spec) {
  Problem p{/*name=*/to_string(spec.name),
            /*box=*/spec.box,
            /*objective=*/{},
            /*optimum_value=*/std::nullopt,
            /*optimum_point=*/std::nullopt,
            /*max_value_hint=*/std::nullopt,
            /*improving_sampler=*/{}};
  p.objective = [spec](const Point& x) { return evaluate(spec, x); };

  const std::size_t d = static_cast<std::size_t>(spec.dim);
  switch (spec.name) {
    case BenchmarkName::rosenbrock:
      p.optimum_value = 0.0;
      p.optimum_point = Point(d, 1.0);
      break;
    case BenchmarkName::centered_sinusoidal:
      p.optimum_value = 0.0;
      p.optimum_point = Point(d, 90.0);
      p.max_value_hint = 7.0;
      break;
    case BenchmarkName::shifted_sinusoidal:
      p.optimum_value = 0.0;
      p.optimum_point = Point(d, 30.0);
      p.max_value_hint = 7.0;
      break;
    case BenchmarkName::ackley:
      p.optimum_value = 0.0;
      p.optimum_point = Point(d, 0.0);
      break;
    case BenchmarkName::repeated_branin:
    case BenchmarkName::repeated_hartmann:
      // no closed-form optimum recorded on the repeated boxes
      break;
  }
  return p;
}

Problem make_problem(const std::string& name, int dim) {
  return make_problem(make_benchmark(name, dim));
}

std::string to_string(BenchmarkName name) {
  switch (name) {
    case BenchmarkName::rosenbrock: return "rosenbrock";
    case BenchmarkName::centered_sinusoidal: return "centered_sinusoidal";
    case BenchmarkName::shifted_sinusoidal: return "shifted_sinusoidal";
    case BenchmarkName::ackley: return "ackley";
    case BenchmarkName::repeated_branin: return "repeated_branin";
    case BenchmarkName::repeated_hartmann: return "repeated_hartmann";
  }
  return "unknown";
}

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names = {
      "rosenbrock",         "centered_sinusoidal", "shifted_sinusoidal",
      "ackley",             "repeated_branin",     "repeated_hartmann"};
  return names;
}

}  // namespace basso
