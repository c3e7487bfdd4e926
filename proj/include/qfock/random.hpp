#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qfock/series.hpp"

namespace qfock {

/// Single deterministic randomness source.  All draws go through uniform(),
/// which maps raw 64-bit output to doubles the same way on every platform, so
/// a fixed seed reproduces every sequence bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform on the closed unit ball of the quaternions, by rejection.
  Quaternion unit_ball_quaternion() {
    for (;;) {
      const Quaternion q{uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0),
                         uniform(-1.0, 1.0)};
      if (norm_sq(q) <= 1.0) return q;
    }
  }

  /// Uniform on the closed unit disk.
  Complex unit_disk_complex() {
    for (;;) {
      const Complex z{uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
      if (std::norm(z) <= 1.0) return z;
    }
  }

  /// Unit imaginary direction, uniform on the sphere (by ball rejection).
  UnitImaginary unit_imaginary() {
    for (;;) {
      const Quaternion q{0.0, uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
      const double n = imag_norm(q);
      if (n > 1e-3 && n <= 1.0) return UnitImaginary(q);
    }
  }

  /// Random quaternion of norm at most `radius` (uniform on the scaled ball).
  Quaternion ball_quaternion(double radius) { return radius * unit_ball_quaternion(); }

  Complex disk_complex(double radius) { return radius * unit_disk_complex(); }

  /// Polynomial with coefficients from the quaternion unit ball.
  QSeries polynomial(int degree) {
    std::vector<Quaternion> c(std::size_t(degree) + 1);
    for (auto& q : c) q = unit_ball_quaternion();
    return QSeries(std::move(c));
  }

  /// Split polynomial with both component coefficient streams from the disk.
  SplitSeries split_polynomial(const UnitImaginary& I, const UnitImaginary& J, int degree) {
    std::vector<Complex> F(std::size_t(degree) + 1), G(std::size_t(degree) + 1);
    for (auto& z : F) z = unit_disk_complex();
    for (auto& z : G) z = unit_disk_complex();
    return {I, J, std::move(F), std::move(G)};
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qfock
