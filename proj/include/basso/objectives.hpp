#ifndef BASSO_OBJECTIVES_HPP
#define BASSO_OBJECTIVES_HPP

#include <string>
#include <vector>

#include "basso/domain.hpp"

namespace basso {

enum class BenchmarkName {
  rosenbrock,
  centered_sinusoidal,
  shifted_sinusoidal,
  ackley,
  repeated_branin,
  repeated_hartmann,
};

/// A benchmark objective pinned to its canonical search box.
struct BenchmarkSpec {
  BenchmarkName name;
  int dim;
  BoxDomain box;
};

/// Builds the spec for a named benchmark, validating the dimension rules
/// (rosenbrock needs d >= 2, repeated_branin an even d >= 2,
/// repeated_hartmann d divisible by 6).
BenchmarkSpec make_benchmark(BenchmarkName name, int dim);
BenchmarkSpec make_benchmark(const std::string& name, int dim);

/// Exact formula value; throws std::domain_error for points outside the box.
double evaluate(const BenchmarkSpec& spec, const Point& x);

/// Wraps a benchmark as a Problem with optimum metadata where known.
Problem make_problem(const BenchmarkSpec& spec);
Problem make_problem(const std::string& name, int dim);

std::string to_string(BenchmarkName name);
const std::vector<std::string>& benchmark_names();

}  // namespace basso

#endif  // BASSO_OBJECTIVES_HPP
