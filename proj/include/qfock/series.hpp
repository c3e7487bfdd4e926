#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "qfock/quaternion.hpp"

namespace qfock {

/// Binomial coefficient as double.  Rows up to 128 come from a cached Pascal
/// table; larger arguments fall back to the multiplicative update, which never
/// forms a factorial.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  static constexpr int kTableRows = 129;
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> t(kTableRows);
    for (int r = 0; r < kTableRows; ++r) {
      t[r].resize(r + 1);
      t[r][0] = t[r][r] = 1.0;
      for (int c = 1; c < r; ++c) t[r][c] = t[r - 1][c - 1] + t[r - 1][c];
    }
    return t;
  }();
  if (n < kTableRows) return table[n][k];
  k = std::min(k, n - k);
  double v = 1.0;
  for (int idx = 1; idx <= k; ++idx) v *= double(n - k + idx) / double(idx);
  return v;
}

/// n! as a double (n <= 170).
inline double factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(171);
    t[0] = 1.0;
    for (int m = 1; m <= 170; ++m) t[m] = t[m - 1] * double(m);
    return t;
  }();
  return table.at(std::size_t(n));
}

/// Truncated entire function f(p) = sum_n p^n a_n with quaternion
/// coefficients written on the right of the monomials.
class QSeries {
 public:
  QSeries() : coeffs_(1) {}
  explicit QSeries(std::vector<Quaternion> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.resize(1);
  }
  /// Constant series.
  explicit QSeries(const Quaternion& c) : coeffs_{c} {}

  static QSeries zero(int degree = 0) {
    return QSeries(std::vector<Quaternion>(std::size_t(degree) + 1));
  }
  static QSeries one() { return QSeries(Quaternion::one()); }
  /// The monomial p^n.
  static QSeries monomial(int n, const Quaternion& scale = Quaternion::one()) {
    std::vector<Quaternion> c(std::size_t(n) + 1);
    c.back() = scale;
    return QSeries(std::move(c));
  }

  /// Storage degree (number of coefficients minus one).
  int degree() const { return int(coeffs_.size()) - 1; }
  /// Largest n with a nonzero stored coefficient (0 for the zero series).
  int logical_degree() const {
    for (int n = degree(); n > 0; --n) {
      if (norm_sq(coeffs_[std::size_t(n)]) != 0.0) return n;
    }
    return 0;
  }

  const Quaternion& coeff(int n) const {
    static const Quaternion kZero{};
    return (n >= 0 && n <= degree()) ? coeffs_[std::size_t(n)] : kZero;
  }
  Quaternion& at(int n) { return coeffs_.at(std::size_t(n)); }
  const std::vector<Quaternion>& coeffs() const { return coeffs_; }

  /// Drops or zero-extends storage to the given degree.
  QSeries truncated(int degree) const {
    std::vector<Quaternion> c(std::size_t(degree) + 1);
    const int m = std::min(degree, this->degree());
    std::copy_n(coeffs_.begin(), m + 1, c.begin());
    return QSeries(std::move(c));
  }

  double max_coeff_norm() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, norm(c));
    return m;
  }

  /// Right scalar multiple f(p) * s.
  QSeries right_scaled(const Quaternion& s) const {
    std::vector<Quaternion> c(coeffs_.size());
    for (std::size_t n = 0; n < coeffs_.size(); ++n) c[n] = coeffs_[n] * s;
    return QSeries(std::move(c));
  }
  /// Left scalar multiple s * f(p); only slice scalars keep slice regularity.
  QSeries left_scaled(const Quaternion& s) const {
    std::vector<Quaternion> c(coeffs_.size());
    for (std::size_t n = 0; n < coeffs_.size(); ++n) c[n] = s * coeffs_[n];
    return QSeries(std::move(c));
  }
  /// Multiplication by p^m.
  QSeries shifted(int m) const {
    std::vector<Quaternion> c(coeffs_.size() + std::size_t(m));
    std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + m);
    return QSeries(std::move(c));
  }

  friend QSeries operator+(const QSeries& f, const QSeries& g) {
    std::vector<Quaternion> c(std::max(f.coeffs_.size(), g.coeffs_.size()));
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = f.coeff(int(n)) + g.coeff(int(n));
    return QSeries(std::move(c));
  }
  friend QSeries operator-(const QSeries& f, const QSeries& g) {
    std::vector<Quaternion> c(std::max(f.coeffs_.size(), g.coeffs_.size()));
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = f.coeff(int(n)) - g.coeff(int(n));
    return QSeries(std::move(c));
  }

 private:
  std::vector<Quaternion> coeffs_;
};

/// Regular product: Cauchy convolution of the coefficient sequences, left
/// factor's coefficients multiplying from the left.  Degree adds; nothing is
/// truncated here.
inline QSeries star(const QSeries& f, const QSeries& g) {
  std::vector<Quaternion> c(std::size_t(f.degree() + g.degree()) + 1);
  for (int r = 0; r <= f.degree(); ++r) {
    for (int s = 0; s <= g.degree(); ++s) {
      c[std::size_t(r + s)] += f.coeff(r) * g.coeff(s);
    }
  }
  return QSeries(std::move(c));
}

/// Direct evaluation sum p^n a_n by right-coefficient Horner.
inline Quaternion eval(const QSeries& f, const Quaternion& p) {
  Quaternion acc = f.coeff(f.degree());
  for (int n = f.degree() - 1; n >= 0; --n) acc = f.coeff(n) + p * acc;
  return acc;
}

/// Slice-preserving affine symbol phi(p) = p*A + B with A, B in the slice of
/// `unit`; the same formula extends the map to all quaternions.
struct AffineSymbol {
  Complex a{0.0, 0.0};
  Complex b{0.0, 0.0};
  UnitImaginary unit;

  AffineSymbol(Complex a_, Complex b_, UnitImaginary unit_) : a(a_), b(b_), unit(unit_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
        !std::isfinite(b.imag())) {
      throw NotAffineError("AffineSymbol: coefficients must be finite");
    }
  }

  static AffineSymbol identity(UnitImaginary unit_) {
    return AffineSymbol{Complex{1.0, 0.0}, Complex{0.0, 0.0}, unit_};
  }

  bool is_constant() const { return std::abs(a) == 0.0; }

  Complex operator()(const Complex& z) const { return z * a + b; }
  Quaternion operator()(const Quaternion& p) const {
    return p * embed(a, unit) + embed(b, unit);
  }
};

/// Coefficients of h(phi(p)) for affine phi, built by the iterative update
/// pow_k = pow_{k-1} * (A z + B) so no factorial ever appears.
inline QSeries compose_affine(const QSeries& h, const AffineSymbol& phi) {
  const int n = h.degree();
  std::vector<Quaternion> out(std::size_t(n) + 1);
  std::vector<Complex> pw{Complex{1.0, 0.0}};  // coefficients of (Az+B)^k
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      std::vector<Complex> next(std::size_t(k) + 1);
      for (int t = 0; t < k; ++t) {
        next[std::size_t(t)] += pw[std::size_t(t)] * phi.b;
        next[std::size_t(t) + 1] += pw[std::size_t(t)] * phi.a;
      }
      pw = std::move(next);
    }
    const Quaternion ck = h.coeff(k);
    if (norm_sq(ck) == 0.0) continue;
    for (int t = 0; t <= k; ++t) {
      out[std::size_t(t)] += embed(pw[std::size_t(t)], phi.unit) * ck;
    }
  }
  return QSeries(std::move(out));
}

/// Split representation of a truncated slice regular function on the frame
/// (I, J): the slice restriction is F(z) + G(z) J with F, G holomorphic on
/// the slice of I.
class SplitSeries {
 public:
  SplitSeries(UnitImaginary I, UnitImaginary J, std::vector<Complex> F, std::vector<Complex> G)
      : I_(I), J_(J), F_(std::move(F)), G_(std::move(G)) {
    if (!orthogonal(I_, J_)) {
      throw NonOrthogonalUnitsError("SplitSeries: frame units must be orthogonal");
    }
    if (F_.empty()) F_.resize(1);
    if (G_.empty()) G_.resize(1);
    const std::size_t n = std::max(F_.size(), G_.size());
    F_.resize(n);
    G_.resize(n);
  }

  static SplitSeries zero(UnitImaginary I, UnitImaginary J, int degree = 0) {
    std::vector<Complex> c(std::size_t(degree) + 1);
    return {I, J, c, c};
  }
  static SplitSeries constant(UnitImaginary I, UnitImaginary J, Complex f0,
                              Complex g0 = Complex{0.0, 0.0}) {
    return {I, J, {f0}, {g0}};
  }

  const UnitImaginary& I() const { return I_; }
  const UnitImaginary& J() const { return J_; }
  int degree() const { return int(F_.size()) - 1; }

  Complex f_coeff(int n) const {
    return (n >= 0 && n <= degree()) ? F_[std::size_t(n)] : Complex{0.0, 0.0};
  }
  Complex g_coeff(int n) const {
    return (n >= 0 && n <= degree()) ? G_[std::size_t(n)] : Complex{0.0, 0.0};
  }
  const std::vector<Complex>& f_coeffs() const { return F_; }
  const std::vector<Complex>& g_coeffs() const { return G_; }
  Complex& f_at(int n) { return F_.at(std::size_t(n)); }
  Complex& g_at(int n) { return G_.at(std::size_t(n)); }

  SplitSeries truncated(int degree) const {
    std::vector<Complex> F(std::size_t(degree) + 1), G(std::size_t(degree) + 1);
    const int m = std::min(degree, this->degree());
    std::copy_n(F_.begin(), m + 1, F.begin());
    std::copy_n(G_.begin(), m + 1, G.begin());
    return {I_, J_, std::move(F), std::move(G)};
  }

  /// Left multiple alpha * f by a scalar of the slice: both parts scale.
  SplitSeries left_scaled(const Complex& alpha) const {
    std::vector<Complex> F(F_), G(G_);
    for (auto& z : F) z *= alpha;
    for (auto& z : G) z *= alpha;
    return {I_, J_, std::move(F), std::move(G)};
  }

  /// Right multiple f * alpha: the second component picks up the conjugate
  /// since J alpha = conj(alpha) J.
  SplitSeries right_scaled(const Complex& alpha) const {
    std::vector<Complex> F(F_), G(G_);
    for (auto& z : F) z *= alpha;
    for (auto& z : G) z *= std::conj(alpha);
    return {I_, J_, std::move(F), std::move(G)};
  }

  bool same_frame(const SplitSeries& other, double tol = 1e-12) const {
    return same_unit(I_, other.I_, tol) && same_unit(J_, other.J_, tol);
  }

 private:
  UnitImaginary I_;
  UnitImaginary J_;
  std::vector<Complex> F_;
  std::vector<Complex> G_;
};

/// Exact coefficient split a_n = alpha_n + beta_n J over the frame (I, J).
inline SplitSeries to_split(const QSeries& f, const UnitImaginary& I, const UnitImaginary& J) {
  std::vector<Complex> F(std::size_t(f.degree()) + 1), G(std::size_t(f.degree()) + 1);
  for (int n = 0; n <= f.degree(); ++n) {
    const auto [alpha, beta] = split_coefficient(f.coeff(n), I, J);
    F[std::size_t(n)] = alpha;
    G[std::size_t(n)] = beta;
  }
  return {I, J, std::move(F), std::move(G)};
}

/// Inverse of to_split.
inline QSeries to_qseries(const SplitSeries& s) {
  std::vector<Quaternion> c(std::size_t(s.degree()) + 1);
  for (int n = 0; n <= s.degree(); ++n) {
    c[std::size_t(n)] = merge_coefficient(s.f_coeff(n), s.g_coeff(n), s.I(), s.J());
  }
  return QSeries(std::move(c));
}

namespace detail {

/// Coefficients of x(az+b) from the coefficients of x(z).
inline std::vector<Complex> compose_affine_part(const std::vector<Complex>& x, const Complex& a,
                                                const Complex& b) {
  std::vector<Complex> out(x.size());
  std::vector<Complex> pw{Complex{1.0, 0.0}};
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k > 0) {
      std::vector<Complex> next(k + 1);
      for (std::size_t t = 0; t < k; ++t) {
        next[t] += pw[t] * b;
        next[t + 1] += pw[t] * a;
      }
      pw = std::move(next);
    }
    if (x[k] == Complex{0.0, 0.0}) continue;
    for (std::size_t t = 0; t <= k; ++t) out[t] += pw[t] * x[k];
  }
  return out;
}

inline std::vector<Complex> convolve(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> c(a.size() + b.size() - 1);
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t s = 0; s < b.size(); ++s) c[r + s] += a[r] * b[s];
  }
  return c;
}

/// Coefficients of z -> conj(X(conj(z))).
inline std::vector<Complex> conj_coeffs(const std::vector<Complex>& a) {
  std::vector<Complex> c(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) c[n] = std::conj(a[n]);
  return c;
}

}  // namespace detail

/// Regular product in split form.  With f = F + GJ and g = H + KJ the result
/// has split parts conv(F,H) - conv(G, conj K) and conv(F,K) + conv(G, conj H),
/// where conj X stands for the coefficients of z -> conj(X(conj z)).
inline SplitSeries star_split(const SplitSeries& f, const SplitSeries& g) {
  if (!f.same_frame(g)) {
    throw SliceMismatchError("star_split: operands live on different frames");
  }
  const auto FH = detail::convolve(f.f_coeffs(), g.f_coeffs());
  const auto GK = detail::convolve(f.g_coeffs(), detail::conj_coeffs(g.g_coeffs()));
  const auto FK = detail::convolve(f.f_coeffs(), g.g_coeffs());
  const auto GH = detail::convolve(f.g_coeffs(), detail::conj_coeffs(g.f_coeffs()));
  std::vector<Complex> F(FH.size()), G(FH.size());
  for (std::size_t n = 0; n < FH.size(); ++n) {
    F[n] = FH[n] - GK[n];
    G[n] = FK[n] + GH[n];
  }
  return {f.I(), f.J(), std::move(F), std::move(G)};
}

inline SplitSeries operator+(const SplitSeries& f, const SplitSeries& g) {
  if (!f.same_frame(g)) throw SliceMismatchError("SplitSeries +: frame mismatch");
  const int d = std::max(f.degree(), g.degree());
  std::vector<Complex> F(std::size_t(d) + 1), G(std::size_t(d) + 1);
  for (int n = 0; n <= d; ++n) {
    F[std::size_t(n)] = f.f_coeff(n) + g.f_coeff(n);
    G[std::size_t(n)] = f.g_coeff(n) + g.g_coeff(n);
  }
  return {f.I(), f.J(), std::move(F), std::move(G)};
}

inline SplitSeries operator-(const SplitSeries& f, const SplitSeries& g) {
  if (!f.same_frame(g)) throw SliceMismatchError("SplitSeries -: frame mismatch");
  const int d = std::max(f.degree(), g.degree());
  std::vector<Complex> F(std::size_t(d) + 1), G(std::size_t(d) + 1);
  for (int n = 0; n <= d; ++n) {
    F[std::size_t(n)] = f.f_coeff(n) - g.f_coeff(n);
    G[std::size_t(n)] = f.g_coeff(n) - g.g_coeff(n);
  }
  return {f.I(), f.J(), std::move(F), std::move(G)};
}

inline Complex eval_poly(const std::vector<Complex>& a, const Complex& z) {
  Complex acc = a.back();
  for (std::size_t n = a.size() - 1; n-- > 0;) acc = a[n] + z * acc;
  return acc;
}

/// Composition with an affine map of the series' own slice, part by part.
inline SplitSeries compose_affine(const SplitSeries& s, const AffineSymbol& phi) {
  if (!same_unit(phi.unit, s.I())) {
    throw SliceMismatchError("compose_affine: symbol lives on a different slice");
  }
  return {s.I(), s.J(), detail::compose_affine_part(s.f_coeffs(), phi.a, phi.b),
          detail::compose_affine_part(s.g_coeffs(), phi.a, phi.b)};
}

/// Horner evaluation of F(z) + G(z) J at a point of the series' own slice.
inline Quaternion eval_slice(const SplitSeries& s, const SlicePoint& z) {
  if (!same_unit(z.unit, s.I())) {
    throw SliceMismatchError("eval_slice: point lies on a different slice");
  }
  const Complex zf = eval_poly(s.f_coeffs(), z.as_complex());
  const Complex zg = eval_poly(s.g_coeffs(), z.as_complex());
  return merge_coefficient(zf, zg, s.I(), s.J());
}

/// Evaluation through the two-slice reconstruction: values at x -/+ y*J on an
/// auxiliary slice recover f(x + y*I).
inline Quaternion eval_via_representation(const QSeries& f, const Quaternion& q,
                                          const UnitImaginary& J) {
  if (is_real(q)) return eval(f, Quaternion(q.real()));
  const UnitImaginary I = imaginary_unit_of(q);
  const double x = q.real();
  const double y = imag_norm(q);
  const Quaternion minus = eval(f, embed(Complex{x, -y}, J));
  const Quaternion plus = eval(f, embed(Complex{x, y}, J));
  const Quaternion ij = I.as_quaternion() * J.as_quaternion();
  return 0.5 * ((Quaternion::one() + ij) * minus + (Quaternion::one() - ij) * plus);
}

/// Direct evaluation plus the reconstruction path on the frame of
/// orthogonal_unit(I_q); returns the value and the two-path disagreement.
struct EvalCheck {
  Quaternion value;
  double residual;
};

inline EvalCheck eval_checked(const QSeries& f, const Quaternion& q) {
  const Quaternion direct = eval(f, q);
  if (is_real(q)) return {direct, 0.0};
  const UnitImaginary J = orthogonal_unit(imaginary_unit_of(q));
  const Quaternion via = eval_via_representation(f, q, J);
  return {direct, norm(direct - via)};
}

/// Pointwise identity of the regular product: |(f*g)(p) - f(p) g(f(p)^-1 p f(p))|,
/// falling back to |(f*g)(p)| where f(p) vanishes.
inline double star_pointwise_check(const QSeries& f, const QSeries& g, const Quaternion& p) {
  const Quaternion lhs = eval(star(f, g), p);
  const Quaternion fp = eval(f, p);
  if (norm(fp) <= 1e-15 * (1.0 + f.max_coeff_norm())) return norm(lhs);
  const Quaternion moved = inverse(fp) * p * fp;
  return norm(lhs - fp * eval(g, moved));
}

}  // namespace qfock
