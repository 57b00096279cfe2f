#pragma once

#include <cmath>
#include <cstdint>

#include "levidisc/numlin.hpp"

namespace levidisc {

// Deterministic random source (splitmix64 core, Box-Muller normals).  Every
// randomized routine in the library takes one of these, or a seed to build
// one, explicitly; there is no global generator, so identical seeds give
// identical runs on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  cdouble gaussian_complex() {
    double re = gaussian();
    double im = gaussian();
    return {re, im};
  }

  // Uniform on the unit sphere of R^k.
  RVector unit_real(int k) {
    RVector v(k);
    for (;;) {
      for (double& x : v) x = gaussian();
      double n = norm2(v);
      if (n > 1e-12) {
        for (double& x : v) x /= n;
        return v;
      }
    }
  }

  // Uniform on the unit sphere of C^m.
  CVector unit_complex(int m) {
    CVector v(m);
    for (;;) {
      for (cdouble& x : v) x = gaussian_complex();
      double n = norm2(v);
      if (n > 1e-12) {
        for (cdouble& x : v) x /= n;
        return v;
      }
    }
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace levidisc
