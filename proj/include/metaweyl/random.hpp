#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "metaweyl/matcore.hpp"

namespace metaweyl {

/// Deterministic generator keyed by a seed plus any number of purpose tags
/// (trial index, sub-draw, ...). Identical keys give identical streams.
class Rng {
 public:
  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags = {}) {
    std::vector<std::uint32_t> words;
    auto push = [&](std::uint64_t v) {
      words.push_back(static_cast<std::uint32_t>(v));
      words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    for (auto t : tags) push(t);
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
  }

  std::uint64_t bits() { return engine_(); }

  /// Uniform in [0, 1) from the top 53 bits; portable across standard libraries.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  cplx complex_uniform(double scale) { return {uniform(-scale, scale), uniform(-scale, scale)}; }

  RMat real_matrix(Eigen::Index r, Eigen::Index c, double scale) {
    RMat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = uniform(-scale, scale);
    return m;
  }

  CMat complex_matrix(Eigen::Index r, Eigen::Index c, double scale) {
    CMat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = complex_uniform(scale);
    return m;
  }

  CPoint point(std::size_t n, double scale) {
    CPoint z(n);
    for (auto& v : z) v = complex_uniform(scale);
    return z;
  }

  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace metaweyl
