#pragma once

#include <cmath>
#include <vector>

#include "qfock/series.hpp"

namespace qfock {

/// Quaternion-valued inner product <f, g> = sum_n n! conj(b_n) a_n.
/// Right-linear in the first argument: <f a, g> = <f, g> a.
inline Quaternion inner(const QSeries& f, const QSeries& g) {
  Quaternion acc{};
  const int d = std::min(f.degree(), g.degree());
  double fact = 1.0;
  for (int n = 0; n <= d; ++n) {
    if (n > 0) fact *= double(n);
    acc += fact * (conj(g.coeff(n)) * f.coeff(n));
  }
  return acc;
}

/// sqrt(sum_n n! |a_n|^2); the real part of <f, f> under the root.
inline double fock_norm(const QSeries& f) {
  double acc = 0.0;
  double fact = 1.0;
  for (int n = 0; n <= f.degree(); ++n) {
    if (n > 0) fact *= double(n);
    acc += fact * norm_sq(f.coeff(n));
  }
  return std::sqrt(acc);
}

inline double fock_norm_sq(const QSeries& f) {
  const double n = fock_norm(f);
  return n * n;
}

/// Split-form norm: |f_I|^2 integrates to ||F||^2 + ||G||^2.
inline double fock_norm(const SplitSeries& s) {
  double acc = 0.0;
  double fact = 1.0;
  for (int n = 0; n <= s.degree(); ++n) {
    if (n > 0) fact *= double(n);
    acc += fact * (std::norm(s.f_coeff(n)) + std::norm(s.g_coeff(n)));
  }
  return std::sqrt(acc);
}

/// Smallest N with sum_{n>N} |c|^{2n}/n! below `tail`; the coefficient-norm
/// tail of exp(c z) style weights.  Used to pick truncation degrees.
inline int exp_truncation_degree(double modulus, double tail = 1e-20) {
  const double r = modulus * modulus;
  double term = 1.0;  // r^n / n! at n = 0
  double sum = 1.0;
  int n = 0;
  while (n < 500) {
    ++n;
    term *= r / double(n);
    sum += term;
    // Geometric tail bound once the ratio drops below one.
    if (r < double(n + 1)) {
      const double ratio = r / double(n + 1);
      const double bound = term * ratio / (1.0 - ratio);
      if (bound < tail) return n;
    }
  }
  throw NoConvergenceBudgetError("exp_truncation_degree: tail bound not reached");
}

struct KernelParams {
  Quaternion q;
  int truncation = 40;
};

/// Truncated reproducing kernel K_q(p) = sum_n p^n conj(q)^n / n!.
inline QSeries kernel(const KernelParams& params) {
  std::vector<Quaternion> c(std::size_t(params.truncation) + 1);
  Quaternion term = Quaternion::one();
  c[0] = term;
  const Quaternion qc = conj(params.q);
  for (int n = 1; n <= params.truncation; ++n) {
    term = term * qc / double(n);
    c[std::size_t(n)] = term;
  }
  return QSeries(std::move(c));
}

inline QSeries kernel(const Quaternion& q, int truncation) {
  return kernel(KernelParams{q, truncation});
}

/// Unit-norm kernel k_q = K_q e^{-|q|^2/2}.
inline QSeries normalized_kernel(const Quaternion& q, int truncation) {
  return kernel(q, truncation).right_scaled(Quaternion(std::exp(-0.5 * norm_sq(q))));
}

/// m-th derivative evaluation kernel K_u^[m](p) = p^m K_u(p), truncated so the
/// stored degree is `truncation`.
inline QSeries derivative_kernel(const Quaternion& u, int m, int truncation) {
  if (m < 0) throw Error("derivative_kernel: m must be nonnegative");
  if (m > truncation) return QSeries::zero(truncation);
  return kernel(u, truncation - m).shifted(m);
}

/// m-th slice derivative of a truncated series, as a series (test oracle).
inline QSeries derivative(const QSeries& f, int m) {
  if (m > f.degree()) return QSeries::zero();
  std::vector<Quaternion> c(std::size_t(f.degree() - m) + 1);
  for (int n = m; n <= f.degree(); ++n) {
    double fall = 1.0;
    for (int t = 0; t < m; ++t) fall *= double(n - t);
    c[std::size_t(n - m)] = fall * f.coeff(n);
  }
  return QSeries(std::move(c));
}

/// Brute-force star exponential sum_n p^n q^n / n!, summed until the proven
/// remainder bound (|p||q|)^{n+1}/(n+1)! / (1 - r) drops below tol.
inline Quaternion exp_star_series(const Quaternion& p, const Quaternion& q, double tol = 1e-14,
                                  int max_terms = 512) {
  Quaternion term = Quaternion::one();
  Quaternion sum = term;
  const double r = norm(p) * norm(q);
  double term_bound = 1.0;  // r^n / n!
  for (int n = 1; n <= max_terms; ++n) {
    term = p * term * q / double(n);
    sum += term;
    term_bound *= r / double(n);
    if (r < double(n + 1)) {
      const double ratio = r / double(n + 1);
      if (term_bound * ratio / (1.0 - ratio) < tol) return sum;
    }
  }
  throw NoConvergenceBudgetError("exp_star_series: term budget exhausted before tail bound");
}

namespace detail {

struct PolarParts {
  double re;       // a with p = a + omega * b
  double im;       // b >= 0
  Quaternion omega;  // unit imaginary direction; i when the input is real
};

inline PolarParts polar_parts(const Quaternion& p) {
  const double b = imag_norm(p);
  if (b <= 1e-14 * (1.0 + norm(p))) {
    return {p.real(), 0.0, Quaternion::i()};
  }
  return {p.real(), b, p.imag() / b};
}

}  // namespace detail

/// Closed expression of the star exponential.  Writing p = a + omega b and
/// q = c + eta d with b, d >= 0, the four angular sums of p^n q^n / n!
/// regroup into two exponential branches:
///   1/2 e^{ac+bd} (cos(bc-ad) + omega sin(bc-ad)) (1 + omega eta)
/// + 1/2 e^{ac-bd} (cos(bc+ad) + omega sin(bc+ad)) (1 - omega eta).
/// When p and q share a slice the first branch cancels and the value reduces
/// to the plane exponential e^{pq}.
inline Quaternion exp_star_closed(const Quaternion& p, const Quaternion& q) {
  const auto [a, b, omega] = detail::polar_parts(p);
  const auto [c, d, eta] = detail::polar_parts(q);
  const Quaternion oe = omega * eta;
  const Quaternion branch_minus =
      (Quaternion(std::cos(b * c - a * d)) + omega * std::sin(b * c - a * d)) *
      (Quaternion::one() + oe);
  const Quaternion branch_plus =
      (Quaternion(std::cos(b * c + a * d)) + omega * std::sin(b * c + a * d)) *
      (Quaternion::one() - oe);
  return 0.5 * std::exp(a * c + b * d) * branch_minus +
         0.5 * std::exp(a * c - b * d) * branch_plus;
}

/// Variant with the trig arguments drawn from the radial products (bd - ac,
/// ac + bd) instead of the cross products.  It does not satisfy the
/// same-slice reduction; kept only as a regression reference.
inline Quaternion exp_star_closed_swapped_args(const Quaternion& p, const Quaternion& q) {
  const auto [a, b, omega] = detail::polar_parts(p);
  const auto [c, d, eta] = detail::polar_parts(q);
  const Quaternion oe = omega * eta;
  const Quaternion branch_minus =
      (Quaternion(std::cos(b * d - a * c)) + omega * std::sin(b * d - a * c)) *
      (Quaternion::one() + oe);
  const Quaternion branch_plus =
      (Quaternion(std::cos(a * c + b * d)) - omega * std::sin(b * d + a * c)) *
      (Quaternion::one() - oe);
  return 0.5 * std::exp(a * c + b * d) * branch_minus +
         0.5 * std::exp(a * c - b * d) * branch_plus;
}

}  // namespace qfock
