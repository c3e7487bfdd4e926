#pragma once

#include <cmath>
#include <complex>
#include <ostream>

#include "qfock/errors.hpp"

namespace qfock {

using Complex = std::complex<double>;

/// Element of the real quaternion algebra, q = w + x*i + y*j + z*k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}
  /// Embeds a real number.
  constexpr Quaternion(double real) : w(real) {}  // NOLINT(google-explicit-constructor)

  static constexpr Quaternion zero() { return {}; }
  static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr double real() const { return w; }
  /// The purely imaginary part x*i + y*j + z*k.
  constexpr Quaternion imag() const { return {0.0, x, y, z}; }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr Quaternion& operator+=(const Quaternion& r) {
    w += r.w;
    x += r.x;
    y += r.y;
    z += r.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& r) {
    w -= r.w;
    x -= r.x;
    y -= r.y;
    z -= r.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s;
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  constexpr Quaternion& operator/=(double s) {
    w /= s;
    x /= s;
    y /= s;
    z /= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
  friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
  friend constexpr Quaternion operator/(Quaternion a, double s) { return a /= s; }

  /// Hamilton product.
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }

  friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }

  friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.w << ',' << q.x << ',' << q.y << ',' << q.z << ')';
  }
};

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double norm_sq(const Quaternion& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

inline double norm(const Quaternion& q) { return std::sqrt(norm_sq(q)); }

inline double imag_norm(const Quaternion& q) {
  return std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
}

/// Conjugate and norm together; norm(q)^2 equals the real part of q * conj(q).
inline std::pair<Quaternion, double> conj_norm(const Quaternion& q) {
  return {conj(q), norm(q)};
}

inline Quaternion inverse(const Quaternion& q) {
  const double n2 = norm_sq(q);
  return conj(q) / n2;
}

/// A quaternion counts as real when |Im(q)| <= 1e-14 * (1 + |q|).
inline bool is_real(const Quaternion& q) {
  return imag_norm(q) <= 1e-14 * (1.0 + norm(q));
}

inline bool approx_equal(const Quaternion& a, const Quaternion& b, double tol) {
  return norm(a - b) <= tol;
}

/// Purely imaginary quaternion of unit norm; squares to -1.
class UnitImaginary {
 public:
  /// Normalizes the imaginary part of q and discards the real part.
  /// Throws RealInputError when the imaginary part vanishes.
  explicit UnitImaginary(const Quaternion& q) {
    const double n = imag_norm(q);
    if (n <= 1e-14 * (1.0 + norm(q))) {
      throw RealInputError("UnitImaginary: vanishing imaginary part");
    }
    u_ = Quaternion{0.0, q.x / n, q.y / n, q.z / n};
  }

  static UnitImaginary i() { return UnitImaginary(Quaternion::i()); }
  static UnitImaginary j() { return UnitImaginary(Quaternion::j()); }
  static UnitImaginary k() { return UnitImaginary(Quaternion::k()); }

  const Quaternion& as_quaternion() const { return u_; }

  UnitImaginary operator-() const { return UnitImaginary(-u_); }

  /// Euclidean inner product of the imaginary 3-vectors.
  friend double dot(const UnitImaginary& a, const UnitImaginary& b) {
    return a.u_.x * b.u_.x + a.u_.y * b.u_.y + a.u_.z * b.u_.z;
  }

 private:
  Quaternion u_;
};

inline bool orthogonal(const UnitImaginary& a, const UnitImaginary& b, double tol = 1e-12) {
  return std::abs(dot(a, b)) <= tol;
}

inline bool same_unit(const UnitImaginary& a, const UnitImaginary& b, double tol = 1e-12) {
  return norm(a.as_quaternion() - b.as_quaternion()) <= tol;
}

/// The unit imaginary I_q = Im(q)/|Im(q)| whose slice contains q.
/// Throws RealInputError for (numerically) real input.
inline UnitImaginary imaginary_unit_of(const Quaternion& q) {
  if (is_real(q)) {
    throw RealInputError("imaginary_unit_of: real quaternion lies in every slice");
  }
  return UnitImaginary(q.imag());
}

/// Deterministic unit imaginary J orthogonal to I.
///
/// Rule: take the coordinate axis least aligned with I among the two cyclic
/// successors of I's dominant axis (ties keep the first successor),
/// Gram-Schmidt it against I and normalize.  Maps i->j, j->k, k->i.
inline UnitImaginary orthogonal_unit(const UnitImaginary& I) {
  const Quaternion u = I.as_quaternion();
  const double c[3] = {std::abs(u.x), std::abs(u.y), std::abs(u.z)};
  int dominant = 0;
  if (c[1] > c[dominant]) dominant = 1;
  if (c[2] > c[dominant]) dominant = 2;
  const int succ1 = (dominant + 1) % 3;
  const int succ2 = (dominant + 2) % 3;
  const int axis = (c[succ2] < c[succ1]) ? succ2 : succ1;

  Quaternion e{0.0, axis == 0 ? 1.0 : 0.0, axis == 1 ? 1.0 : 0.0, axis == 2 ? 1.0 : 0.0};
  const double proj = e.x * u.x + e.y * u.y + e.z * u.z;
  Quaternion v = e - proj * u;
  return UnitImaginary(v);
}

/// Embeds a slice-complex number x + iy as the quaternion x + y*I.
inline Quaternion embed(const Complex& zc, const UnitImaginary& I) {
  return Quaternion{zc.real(), 0.0, 0.0, 0.0} + zc.imag() * I.as_quaternion();
}

/// Coordinates of q in the orthonormal frame {1, I, J, IJ}.
/// Returns (alpha, beta) with q = embed(alpha, I) + embed(beta, I) * J.
inline std::pair<Complex, Complex> split_coefficient(const Quaternion& q, const UnitImaginary& I,
                                                     const UnitImaginary& J) {
  if (!orthogonal(I, J)) {
    throw NonOrthogonalUnitsError("split_coefficient: units are not orthogonal");
  }
  const Quaternion iq = I.as_quaternion();
  const Quaternion jq = J.as_quaternion();
  const Quaternion kq = iq * jq;
  const auto comp = [&q](const Quaternion& e) {
    return q.w * e.w + q.x * e.x + q.y * e.y + q.z * e.z;
  };
  return {Complex{q.w, comp(iq)}, Complex{comp(jq), comp(kq)}};
}

/// Inverse of split_coefficient: alpha + beta * J with both in the slice of I.
inline Quaternion merge_coefficient(const Complex& alpha, const Complex& beta,
                                    const UnitImaginary& I, const UnitImaginary& J) {
  return embed(alpha, I) + embed(beta, I) * J.as_quaternion();
}

/// Point x + y*I of the slice determined by I.
struct SlicePoint {
  double x = 0.0;
  double y = 0.0;
  UnitImaginary unit;

  SlicePoint(double x_, double y_, UnitImaginary unit_) : x(x_), y(y_), unit(unit_) {}
  SlicePoint(const Complex& zc, UnitImaginary unit_)
      : x(zc.real()), y(zc.imag()), unit(unit_) {}

  Complex as_complex() const { return {x, y}; }
  Quaternion as_quaternion() const { return embed(as_complex(), unit); }
  SlicePoint conjugated() const { return {x, -y, unit}; }
};

}  // namespace qfock
