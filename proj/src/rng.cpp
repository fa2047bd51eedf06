#include "ftk/rng.hpp"

#include <cmath>
#include <numbers>

namespace ftk {

void SplitMix64::normal_pair(double& a, double& b) {
  const double u1 = uniform_open();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  a = r * std::cos(2.0 * std::numbers::pi * u2);
  b = r * std::sin(2.0 * std::numbers::pi * u2);
}

double SplitMix64::normal() {
  double a, b;
  normal_pair(a, b);
  return a;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key) {
  SplitMix64 s(seed ^ (0x9e3779b97f4a7c15ull * (key + 1)));
  return s.next();
}

ComplexMatrix gaussian_matrix(std::uint64_t seed, Index rows, Index cols) {
  ComplexMatrix g(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      SplitMix64 entry(mix_seed(seed, static_cast<std::uint64_t>(i * cols + j)));
      double re, im;
      entry.normal_pair(re, im);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix hermitian_gaussian(std::uint64_t seed, Index n) {
  ComplexMatrix g = gaussian_matrix(seed, n, n);
  return hermitize(g);
}

} // namespace ftk
