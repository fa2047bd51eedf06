#pragma once

#include <cstdint>

#include "ftk/linalg.hpp"

namespace ftk {

// All randomness comes from splitmix64. Streams are split by key:
// substream(seed, key) starts a fresh sequence at mix(seed, key), so a draw
// depends only on (seed, key), never on call order. Gaussian matrices give
// entry (i, j) its own substream keyed by i*cols + j and take one Box-Muller
// pair from it (re, im ~ N(0,1)). Same seed, same matrix, on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() { // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform_open() { // (0, 1]
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  // One Box-Muller pair; both components N(0,1).
  void normal_pair(double& a, double& b);
  double normal();

  // Uniform integer in [0, n), n >= 1. Modulo bias is irrelevant here: n is
  // always tiny against 2^64.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key);

ComplexMatrix gaussian_matrix(std::uint64_t seed, Index rows, Index cols);
ComplexMatrix hermitian_gaussian(std::uint64_t seed, Index n); // (G + G*)/2

} // namespace ftk
