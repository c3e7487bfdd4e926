#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qfock/certificate.hpp"
#include "qfock/fock.hpp"
#include "qfock/random.hpp"
#include "qfock/series.hpp"

namespace qfock {

/// Weighted composition operator h -> f * (h o phi), right-linear over the
/// quaternions.  The weight must not be identically zero.
struct WeightedCompOp {
  QSeries weight;
  AffineSymbol symbol;

  WeightedCompOp(QSeries weight_, AffineSymbol symbol_)
      : weight(std::move(weight_)), symbol(symbol_) {
    if (weight.max_coeff_norm() == 0.0) {
      throw Error("WeightedCompOp: weight is identically zero");
    }
  }
};

inline QSeries apply(const WeightedCompOp& op, const QSeries& h) {
  return star(op.weight, compose_affine(h, op.symbol));
}

/// Finite section of a right-linear operator in the orthonormal monomial
/// basis e_n = p^n / sqrt(n!).  Entries are quaternions acting from the left
/// on coefficient vectors.
class OperatorMatrix {
 public:
  OperatorMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static OperatorMatrix identity(std::size_t n) {
    OperatorMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Quaternion::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Quaternion& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Quaternion& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  /// Truncates or zero-pads to the requested shape.
  OperatorMatrix section(std::size_t rows, std::size_t cols) const {
    OperatorMatrix m(rows, cols);
    for (std::size_t i = 0; i < std::min(rows, rows_); ++i) {
      for (std::size_t j = 0; j < std::min(cols, cols_); ++j) m.at(i, j) = at(i, j);
    }
    return m;
  }

  OperatorMatrix left_scaled(const Quaternion& s) const {
    OperatorMatrix m(rows_, cols_);
    for (std::size_t t = 0; t < a_.size(); ++t) m.a_[t] = s * a_[t];
    return m;
  }

  friend OperatorMatrix operator*(const OperatorMatrix& x, const OperatorMatrix& y) {
    if (x.cols_ != y.rows_) throw Error("OperatorMatrix: shape mismatch in product");
    OperatorMatrix m(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i) {
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Quaternion& xik = x.at(i, k);
        if (norm_sq(xik) == 0.0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) m.at(i, j) += xik * y.at(k, j);
      }
    }
    return m;
  }

  friend OperatorMatrix operator-(const OperatorMatrix& x, const OperatorMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) {
      throw Error("OperatorMatrix: shape mismatch in difference");
    }
    OperatorMatrix m(x.rows_, x.cols_);
    for (std::size_t t = 0; t < m.a_.size(); ++t) m.a_[t] = x.a_[t] - y.a_[t];
    return m;
  }

  double frobenius() const {
    double acc = 0.0;
    for (const auto& q : a_) acc += norm_sq(q);
    return std::sqrt(acc);
  }

  /// Frobenius norm of the leading block of the given shape.
  double frobenius_block(std::size_t rows, std::size_t cols) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < std::min(rows, rows_); ++i) {
      for (std::size_t j = 0; j < std::min(cols, cols_); ++j) acc += norm_sq(at(i, j));
    }
    return std::sqrt(acc);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Quaternion> a_;
};

/// Quaternionic conjugate transpose.
inline OperatorMatrix adjoint_matrix(const OperatorMatrix& m) {
  OperatorMatrix a(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a.at(j, i) = conj(m.at(i, j));
  }
  return a;
}

/// Columns are the images of the orthonormal monomials e_0 .. e_{n_in},
/// expanded over e_0 .. e_{n_in + deg weight}; nothing is truncated.
inline OperatorMatrix matrix(const WeightedCompOp& op, int n_in) {
  const std::size_t rows = std::size_t(n_in + op.weight.degree()) + 1;
  OperatorMatrix m(rows, std::size_t(n_in) + 1);
  for (int n = 0; n <= n_in; ++n) {
    const QSeries en = QSeries::monomial(n, Quaternion(1.0 / std::sqrt(factorial(n))));
    const QSeries image = apply(op, en);
    for (int r = 0; r <= image.degree(); ++r) {
      m.at(std::size_t(r), std::size_t(n)) = image.coeff(r) * std::sqrt(factorial(r));
    }
  }
  return m;
}

/// Action of a finite section on a coefficient vector, back in series form.
inline QSeries apply_matrix(const OperatorMatrix& m, const QSeries& h) {
  std::vector<Quaternion> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Quaternion acc{};
    for (std::size_t n = 0; n < m.cols(); ++n) {
      acc += m.at(r, n) * (h.coeff(int(n)) * std::sqrt(factorial(int(n))));
    }
    out[r] = acc / std::sqrt(factorial(int(r)));
  }
  return QSeries(std::move(out));
}

/// Adjoint action on the monomial P_m, via the binomial expansion of the
/// weight's derivatives at zero against shifted kernels:
///   W* P_m = sum_j C(m,j) K_b^[j] conj(a^j) conj(weight^[m-j](0)).
inline QSeries adjoint_on_monomial(const WeightedCompOp& op, int m, int truncation) {
  QSeries acc = QSeries::zero(truncation);
  const Quaternion b = embed(op.symbol.b, op.symbol.unit);
  for (int j = 0; j <= m; ++j) {
    const Quaternion deriv_at_zero = factorial(m - j) * op.weight.coeff(m - j);
    if (norm_sq(deriv_at_zero) == 0.0) continue;
    const Quaternion scale =
        embed(std::conj(std::pow(op.symbol.a, j)), op.symbol.unit) * conj(deriv_at_zero);
    acc = acc + derivative_kernel(b, j, truncation).right_scaled(binomial(m, j) * scale);
  }
  return acc.truncated(truncation);
}

/// Unitary weighted composition W_{k_{conj(lambda) b}, p lambda - b}.
inline WeightedCompOp make_unitary(const Complex& lambda, const Complex& b, int truncation,
                                   const UnitImaginary& unit) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) {
    throw NotUnimodularError("make_unitary: |lambda| must be one");
  }
  const QSeries weight = normalized_kernel(embed(std::conj(lambda) * b, unit), truncation);
  return {weight, AffineSymbol{lambda, -b, unit}};
}

/// Stated inverse of make_unitary(lambda, b): weight k_{-b}, symbol the
/// inverse affine map p conj(lambda) + b conj(lambda).
inline WeightedCompOp make_unitary_inverse(const Complex& lambda, const Complex& b,
                                           int truncation, const UnitImaginary& unit) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) {
    throw NotUnimodularError("make_unitary_inverse: |lambda| must be one");
  }
  const QSeries weight = normalized_kernel(embed(-b, unit), truncation);
  return {weight, AffineSymbol{std::conj(lambda), b * std::conj(lambda), unit}};
}

/// Displacement operator W_u = W_{k_u, p - u}.
inline WeightedCompOp weyl(const Complex& u, int truncation, const UnitImaginary& unit) {
  const QSeries weight = normalized_kernel(embed(u, unit), truncation);
  return {weight, AffineSymbol{Complex{1.0, 0.0}, -u, unit}};
}

/// Phase of the displacement composition W_u W_v = phase * W_{u+v}.  The
/// weight product k_u(z) k_v(z-u) equals e^{-I Im(u conj v)} k_{u+v}(z), so
/// the angle is -Im(u conj v).
inline Quaternion weyl_phase(const Complex& u, const Complex& v, const UnitImaginary& unit) {
  const double angle = -std::imag(u * std::conj(v));
  return embed(Complex{std::cos(angle), std::sin(angle)}, unit);
}

/// Block norm of matrix(W_u) matrix(W_v) - phase * matrix(W_{u+v}) on the
/// degree <= N/2 section.
inline double weyl_commutation_residual(const Complex& u, const Complex& v, int truncation,
                                        const UnitImaginary& unit) {
  const std::size_t n = std::size_t(truncation) + 1;
  const OperatorMatrix mu = matrix(weyl(u, truncation, unit), truncation).section(n, n);
  const OperatorMatrix mv = matrix(weyl(v, truncation, unit), truncation).section(n, n);
  const OperatorMatrix muv = matrix(weyl(u + v, truncation, unit), truncation).section(n, n);
  const Quaternion phase = weyl_phase(u, v, unit);
  const std::size_t block = std::size_t(truncation / 2) + 1;
  return ((mu * mv) - muv.left_scaled(phase)).frobenius_block(block, block);
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

namespace detail {

/// Coefficients of s * exp(c z) up to the given degree.
inline std::vector<Complex> exp_coeffs(const Complex& c, int degree, const Complex& s = {1.0, 0.0}) {
  std::vector<Complex> out(std::size_t(degree) + 1);
  Complex term = s;
  out[0] = term;
  for (int n = 1; n <= degree; ++n) {
    term *= c / double(n);
    out[std::size_t(n)] = term;
  }
  return out;
}

/// Scaled maximum deviation between a coefficient stream and a one-parameter
/// exponential model fitted at the constant term.
inline double exp_model_residual(const std::vector<Complex>& coeffs, const Complex& rate) {
  const auto model = exp_coeffs(rate, int(coeffs.size()) - 1, coeffs[0]);
  double scale = 0.0;
  for (const auto& z : coeffs) scale = std::max(scale, std::abs(z));
  double dev = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) dev = std::max(dev, std::abs(coeffs[n] - model[n]));
  return dev / std::max(scale, 1e-300);
}

}  // namespace detail

/// Boundedness certificate.  Structural route: the symbol must contract the
/// slice (|A| <= 1) and, when |A| = 1, the split components must follow the
/// forced exponential shapes F(0) e^{-A conj(B) z} and G(0) e^{-conj(A) B z}.
/// Numerical route: sup of the Gaussian growth expression over the circle
/// grid with a divergence flag.
inline Certificate boundedness_certificate(const SplitSeries& f, const AffineSymbol& phi,
                                           const SamplingSpec& grid = {}) {
  bool zero = true;
  for (int n = 0; n <= f.degree() && zero; ++n) {
    zero = std::abs(f.f_coeff(n)) == 0.0 && std::abs(f.g_coeff(n)) == 0.0;
  }
  if (zero) throw Error("boundedness_certificate: weight is identically zero");

  Certificate cert;
  cert.check = "boundedness";
  cert.truncation = f.degree();
  cert.add_input("symbol.a", phi.a);
  cert.add_input("symbol.b", phi.b);

  const double abs_a = std::abs(phi.a);
  const bool contraction = abs_a <= 1.0 + 1e-12;
  const bool unimodular = std::abs(abs_a - 1.0) <= 1e-12;
  cert.add_residual("symbol-contraction-excess", std::max(0.0, abs_a - 1.0));
  cert.add_tolerance("symbol-contraction-excess", 1e-12);

  const GridScan scan = scan_growth(f, phi, grid);
  cert.add_residual("grid-sup", scan.sup);
  cert.add_residual("grid-divergent", scan.divergent ? 1.0 : 0.0);

  // For |A| strictly below one the Gaussian dominates every truncated series,
  // so the sup is finite for any stored weight; the grid flag is diagnostic.
  // On the unimodular boundary finiteness forces the exponential shapes, so
  // the verdict comes from the coefficient comparison.
  bool bounded = contraction;
  if (unimodular) {
    const double res_f = detail::exp_model_residual(f.f_coeffs(), -phi.a * std::conj(phi.b));
    const double res_g = detail::exp_model_residual(f.g_coeffs(), -std::conj(phi.a) * phi.b);
    cert.add_residual("forced-exponential-f", res_f);
    cert.add_residual("forced-exponential-g", res_g);
    cert.add_tolerance("forced-exponential-f", 1e-10);
    cert.add_tolerance("forced-exponential-g", 1e-10);
    bounded = bounded && res_f <= 1e-10 && res_g <= 1e-10;
  }

  cert.pass = bounded;
  cert.verdict = bounded ? "bounded" : "unbounded";
  if (!contraction) cert.verdict += " (|A| > 1)";
  return cert;
}

/// Compactness certificate: strict contraction |A| < 1 plus decay of the
/// growth expression along expanding circles.
inline Certificate compactness_certificate(const SplitSeries& f, const AffineSymbol& phi,
                                           const SamplingSpec& grid = {}) {
  Certificate cert;
  cert.check = "compactness";
  cert.truncation = f.degree();
  cert.add_input("symbol.a", phi.a);
  cert.add_input("symbol.b", phi.b);

  const double abs_a = std::abs(phi.a);
  const bool strict = abs_a < 1.0 - 1e-12;
  cert.add_residual("symbol-strict-contraction-excess", std::max(0.0, abs_a - (1.0 - 1e-12)));

  const GridScan scan = scan_growth(f, phi, grid);
  cert.add_residual("profile-last", scan.circle_max.back());
  cert.add_residual("profile-peak", scan.sup);
  cert.add_residual("profile-decayed", scan.decayed ? 0.0 : 1.0);

  cert.pass = strict && scan.decayed;
  cert.verdict = cert.pass ? "compact" : "not compact";
  return cert;
}

/// Isometry certificate.  Structural route fits the weight against the
/// normal form (alpha + beta J) * k_{-conj(A) B} with |alpha|^2 + |beta|^2 = 1
/// and requires |A| = 1.  Numerical route measures norm preservation on
/// orthonormalized random polynomials of degree at most truncation/2.
inline Certificate isometry_certificate(const WeightedCompOp& op, int n_test, int truncation,
                                        Rng& rng) {
  Certificate cert;
  cert.check = "isometry";
  cert.truncation = truncation;
  cert.add_input("symbol.a", op.symbol.a);
  cert.add_input("symbol.b", op.symbol.b);

  const Complex lambda = op.symbol.a;
  const Complex b = op.symbol.b;
  const double unimodular_defect = std::abs(std::abs(lambda) - 1.0);
  cert.add_residual("symbol-unimodular-defect", unimodular_defect);
  cert.add_tolerance("symbol-unimodular-defect", 1e-12);

  // Normal-form fit of the split components.
  const UnitImaginary I = op.symbol.unit;
  const UnitImaginary J = orthogonal_unit(I);
  const SplitSeries w = to_split(op.weight, I, J);
  const double gauss = std::exp(-0.5 * std::norm(b));
  const auto kf = detail::exp_coeffs(-lambda * std::conj(b), w.degree());
  const auto kg = detail::exp_coeffs(-std::conj(lambda) * b, w.degree());
  const Complex alpha = w.f_coeff(0) / gauss;
  const Complex beta = w.g_coeff(0) / gauss;
  double scale = 0.0;
  double fit = 0.0;
  for (int n = 0; n <= w.degree(); ++n) {
    scale = std::max({scale, std::abs(w.f_coeff(n)), std::abs(w.g_coeff(n))});
    fit = std::max(fit, std::abs(w.f_coeff(n) - alpha * gauss * kf[std::size_t(n)]));
    fit = std::max(fit, std::abs(w.g_coeff(n) - beta * gauss * kg[std::size_t(n)]));
  }
  const double fit_residual = fit / std::max(scale, 1e-300);
  const double unit_defect = std::abs(std::norm(alpha) + std::norm(beta) - 1.0);
  cert.add_input("fitted.alpha", alpha);
  cert.add_input("fitted.beta", beta);
  cert.add_residual("normal-form-fit", fit_residual);
  cert.add_residual("coefficient-unit-defect", unit_defect);
  cert.add_tolerance("normal-form-fit", 1e-8);
  cert.add_tolerance("coefficient-unit-defect", 1e-8);

  // Numerical route on a Gram-Schmidt orthonormalized random family.
  std::vector<QSeries> basis;
  double numeric = 0.0;
  const int input_degree = truncation / 2;
  for (int t = 0; t < n_test; ++t) {
    QSeries h = rng.polynomial(input_degree);
    for (const QSeries& prev : basis) h = h - prev.right_scaled(inner(h, prev));
    const double n = fock_norm(h);
    if (n < 1e-8) continue;
    h = h.right_scaled(Quaternion(1.0 / n));
    basis.push_back(h);
    numeric = std::max(numeric, std::abs(fock_norm(apply(op, h)) - 1.0));
  }
  cert.add_residual("norm-preservation", numeric);
  cert.add_tolerance("norm-preservation", 1e-8);

  const bool structural =
      unimodular_defect <= 1e-12 && fit_residual <= 1e-8 && unit_defect <= 1e-8;
  cert.pass = structural;
  cert.verdict = structural ? "isometric" : "not isometric";
  return cert;
}

}  // namespace qfock
