#pragma once

#include <cstdint>
#include <random>

#include "folium/scalar.hpp"

namespace folium {

/// Single deterministic random source used across the library and CLI.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(eng_);
  }

  /// Uniform complex number in the square [-r,r] x [-r,r].
  cplx box(double r) { return {uniform(-r, r), uniform(-r, r)}; }

  /// Uniform complex number in the annulus r_lo <= |z| <= r_hi.
  cplx annulus(double r_lo, double r_hi) {
    const double rho = std::sqrt(uniform(r_lo * r_lo, r_hi * r_hi));
    const double th = uniform(0.0, 6.283185307179586476925286766559);
    return {rho * std::cos(th), rho * std::sin(th)};
  }

  int integer(int lo, int hi) {  // inclusive bounds
    std::uniform_int_distribution<int> d(lo, hi);
    return d(eng_);
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace folium
