#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qfock/certificate.hpp"
#include "qfock/operators.hpp"
#include "qfock/series.hpp"

namespace qfock {

/// Base conjugation: conjugate every coefficient of both split components,
/// i.e. z -> conj(F(conj z)) + conj(G(conj z)) J.
inline SplitSeries conj_C(const SplitSeries& f) {
  std::vector<Complex> F(std::size_t(f.degree()) + 1), G(std::size_t(f.degree()) + 1);
  for (int n = 0; n <= f.degree(); ++n) {
    F[std::size_t(n)] = std::conj(f.f_coeff(n));
    G[std::size_t(n)] = std::conj(f.g_coeff(n));
  }
  return {f.I(), f.J(), std::move(F), std::move(G)};
}

/// Parameters of the anti-linear weighted composition family
/// f -> [c e^{bz} + d e^{conj(b) z} J] * (Cf)(az + b).
struct ConjugationParams {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  Complex c{1.0, 0.0};
  Complex d{0.0, 0.0};
  UnitImaginary I = UnitImaginary::i();
  UnitImaginary J = UnitImaginary::j();
};

/// Per-constraint residuals of the validity conditions
///   |a| = 1,   (|c|^2 + |d|^2) e^{|b|^2} = 1,   conj(a) b + conj(b) = 0.
struct ParamsVerdict {
  double unimodular = 0.0;
  double normalization = 0.0;
  double involution = 0.0;

  bool valid(double tol = 1e-12) const {
    return unimodular <= tol && normalization <= tol && involution <= tol;
  }
};

inline ParamsVerdict validate_params(const ConjugationParams& p) {
  ParamsVerdict v;
  v.unimodular = std::abs(std::abs(p.a) - 1.0);
  v.normalization = std::abs((std::norm(p.c) + std::norm(p.d)) * std::exp(std::norm(p.b)) - 1.0);
  v.involution = std::abs(std::conj(p.a) * p.b + std::conj(p.b));
  return v;
}

/// Anti-linear weighted composition operator f -> xi * (Cf)(eta(z)).
struct AntiWCO {
  SplitSeries weight;
  AffineSymbol symbol;
};

inline SplitSeries anti_wco_apply(const AntiWCO& op, const SplitSeries& f) {
  if (!op.weight.same_frame(f)) {
    throw SliceMismatchError("anti_wco_apply: operand frame mismatch");
  }
  return star_split(op.weight, compose_affine(conj_C(f), op.symbol));
}

/// The isometric normal form xi = (c + dJ) * e^{-a conj(b) z}, eta = za + b.
/// For parameters satisfying the involution constraint this is exactly the
/// weight of the parametrized conjugation, since then -a conj(b) = b.
inline AntiWCO anti_wco_from_form(const Complex& a, const Complex& b, const Complex& c,
                                  const Complex& d, const UnitImaginary& I,
                                  const UnitImaginary& J, int truncation) {
  std::vector<Complex> F(std::size_t(truncation) + 1), G(std::size_t(truncation) + 1);
  const Complex rf = -a * std::conj(b);
  const Complex rg = -std::conj(a) * b;
  Complex tf = c, tg = d;
  for (int n = 0; n <= truncation; ++n) {
    F[std::size_t(n)] = tf;
    G[std::size_t(n)] = tg;
    tf *= rf / double(n + 1);
    tg *= rg / double(n + 1);
  }
  return {SplitSeries{I, J, std::move(F), std::move(G)}, AffineSymbol{a, b, I}};
}

/// Action of the parametrized conjugation at truncation N.  Requires valid
/// parameters.
inline SplitSeries apply_C_abcd(const ConjugationParams& p, const SplitSeries& f,
                                int truncation) {
  if (!validate_params(p).valid()) {
    throw InvalidParamsError("apply_C_abcd: parameters violate the validity constraints");
  }
  std::vector<Complex> WF(std::size_t(truncation) + 1), WG(std::size_t(truncation) + 1);
  Complex tf = p.c, tg = p.d;
  for (int n = 0; n <= truncation; ++n) {
    WF[std::size_t(n)] = tf;
    WG[std::size_t(n)] = tg;
    tf *= p.b / double(n + 1);
    tg *= std::conj(p.b) / double(n + 1);
  }
  const SplitSeries weight{p.I, p.J, std::move(WF), std::move(WG)};
  const SplitSeries composed = compose_affine(conj_C(f), AffineSymbol{p.a, p.b, p.I});
  return star_split(weight, composed).truncated(truncation);
}

/// Structural and numerical classification of an anti-linear weighted
/// composition operator: bounded / isometric / involutive / conjugation, plus
/// the separately tested left-anti-linearity flag.
struct AntiClassification {
  bool bounded = false;
  bool isometric = false;
  bool involutive = false;
  bool conjugation = false;
  bool left_anti_linear = false;

  Complex fitted_c{0.0, 0.0};
  Complex fitted_d{0.0, 0.0};
  double unimodular_residual = 0.0;
  double normalization_residual = 0.0;
  double involution_param_residual = 0.0;
  double form_fit_residual = 0.0;

  double isometry_deviation = 0.0;
  double involution_deviation = 0.0;
  double right_anti_deviation = 0.0;
  double left_anti_deviation = 0.0;
};

inline AntiClassification anti_wco_classify(const SplitSeries& xi, const AffineSymbol& eta,
                                            int truncation, Rng& rng) {
  if (eta.is_constant()) {
    throw ConstantSymbolError("anti_wco_classify: symbol must be nonconstant");
  }
  AntiClassification out;
  const Complex a = eta.a;
  const Complex b = eta.b;

  out.unimodular_residual = std::abs(std::abs(a) - 1.0);
  out.involution_param_residual = std::abs(std::conj(a) * b + std::conj(b));

  // Boundedness mirrors the linear case: contraction plus, on the boundary,
  // the forced exponential shapes.
  const double abs_a = std::abs(a);
  bool bounded = abs_a <= 1.0 + 1e-12;
  if (std::abs(abs_a - 1.0) <= 1e-12) {
    const double rf = detail::exp_model_residual(xi.f_coeffs(), -a * std::conj(b));
    const double rg = detail::exp_model_residual(xi.g_coeffs(), -std::conj(a) * b);
    bounded = bounded && rf <= 1e-10 && rg <= 1e-10;
  }
  out.bounded = bounded;

  // Fit against the isometric normal form.
  out.fitted_c = xi.f_coeff(0);
  out.fitted_d = xi.g_coeff(0);
  {
    const auto mf = detail::exp_coeffs(-a * std::conj(b), xi.degree(), out.fitted_c);
    const auto mg = detail::exp_coeffs(-std::conj(a) * b, xi.degree(), out.fitted_d);
    double dev = 0.0, scale = 0.0;
    for (int n = 0; n <= xi.degree(); ++n) {
      scale = std::max({scale, std::abs(xi.f_coeff(n)), std::abs(xi.g_coeff(n))});
      dev = std::max(dev, std::abs(xi.f_coeff(n) - mf[std::size_t(n)]));
      dev = std::max(dev, std::abs(xi.g_coeff(n) - mg[std::size_t(n)]));
    }
    out.form_fit_residual = dev / std::max(scale, 1e-300);
  }
  out.normalization_residual = std::abs(
      (std::norm(out.fitted_c) + std::norm(out.fitted_d)) * std::exp(std::norm(b)) - 1.0);

  const bool structural_iso = out.unimodular_residual <= 1e-10 &&
                              out.form_fit_residual <= 1e-8 &&
                              out.normalization_residual <= 1e-8;
  out.isometric = structural_iso;
  out.involutive = structural_iso && out.involution_param_residual <= 1e-10;
  out.conjugation = out.isometric && out.involutive;

  // Numerical cross-checks on random polynomials.
  const AntiWCO op{xi, eta};
  const UnitImaginary I = xi.I();
  const UnitImaginary J = xi.J();
  const Complex unit_i{0.0, 1.0};
  for (int rep = 0; rep < 6; ++rep) {
    SplitSeries f = rng.split_polynomial(I, J, std::max(2, truncation / 4));
    const double nf = fock_norm(f);
    f = f.left_scaled(Complex{1.0 / nf, 0.0});

    const SplitSeries image = anti_wco_apply(op, f);
    out.isometry_deviation =
        std::max(out.isometry_deviation, std::abs(fock_norm(image) - 1.0));

    const SplitSeries twice = anti_wco_apply(op, image.truncated(truncation));
    out.involution_deviation =
        std::max(out.involution_deviation, fock_norm(twice.truncated(truncation) - f));

    out.right_anti_deviation = std::max(
        out.right_anti_deviation,
        fock_norm(anti_wco_apply(op, f.right_scaled(unit_i)) - image.right_scaled(-unit_i)));
    out.left_anti_deviation = std::max(
        out.left_anti_deviation,
        fock_norm(anti_wco_apply(op, f.left_scaled(unit_i)) - image.left_scaled(-unit_i)));
  }
  out.left_anti_linear = out.left_anti_deviation <= 1e-10;
  return out;
}

/// Certificate for the commuting property W C = C W with the d = 0 family.
/// Structural route: the affine identities
///   a(Az+B) + b = conj(A)(az+b) + conj(B)
///   conj(a)(conj(A)z + conj(B)) + conj(b) = A(az+b) + B
/// as coefficient equations, plus the weight identities
///   F e^{b(Az+B)} = e^{bz} (CF)(az+b)
///   conj(c) G e^{conj(b)(conj(A)z+conj(B))} = c e^{bz} (CG)(az+b)
/// compared coefficientwise.  Numerical route: the monomial commutator
/// residual max_m ||W C P_m - C W P_m|| / ||P_m||.
inline Certificate commuting_certificate(const WeightedCompOp& op, const ConjugationParams& p,
                                         int m_max, int truncation) {
  if (std::abs(p.d) != 0.0) {
    throw UnsupportedParamsError("commuting_certificate: defined for d = 0 only");
  }
  if (!validate_params(p).valid()) {
    throw InvalidParamsError("commuting_certificate: invalid conjugation parameters");
  }
  if (!same_unit(op.symbol.unit, p.I)) {
    throw SliceMismatchError("commuting_certificate: operator and conjugation frames differ");
  }

  Certificate cert;
  cert.check = "conjugate-commuting";
  cert.truncation = truncation;
  const Complex A = op.symbol.a;
  const Complex B = op.symbol.b;
  cert.add_input("symbol.a", A);
  cert.add_input("symbol.b", B);
  cert.add_input("params.a", p.a);
  cert.add_input("params.b", p.b);
  cert.add_input("params.c", p.c);

  cert.add_residual("affine-z", std::abs(p.a * A - std::conj(A) * p.a));
  cert.add_residual("affine-const",
                    std::abs(p.a * B + p.b - (std::conj(A) * p.b + std::conj(B))));
  cert.add_residual("affine-z-conj", std::abs(std::conj(p.a * A) - A * p.a));
  cert.add_residual("affine-const-conj",
                    std::abs(std::conj(p.a) * std::conj(B) + std::conj(p.b) - (A * p.b + B)));

  const SplitSeries w = to_split(op.weight, p.I, p.J);
  const auto weight_residual = [&](const std::vector<Complex>& part, const Complex& lhs_rate,
                                   const Complex& lhs_amp, const Complex& rhs_amp) {
    // lhs_amp * part(z) e^{lhs_rate z + ...} vs rhs_amp * e^{bz} (C part)(az+b)
    auto lhs = detail::convolve(part, detail::exp_coeffs(lhs_rate, truncation, lhs_amp));
    auto composed = detail::compose_affine_part(detail::conj_coeffs(part), p.a, p.b);
    auto rhs = detail::convolve(detail::exp_coeffs(p.b, truncation, rhs_amp), composed);
    lhs.resize(std::size_t(truncation) + 1);
    rhs.resize(std::size_t(truncation) + 1);
    double dev = 0.0, scale = 0.0;
    for (std::size_t n = 0; n < lhs.size(); ++n) {
      dev = std::max(dev, std::abs(lhs[n] - rhs[n]));
      scale = std::max({scale, std::abs(lhs[n]), std::abs(rhs[n])});
    }
    return dev / std::max(scale, 1e-300);
  };
  cert.add_residual("weight-f",
                    weight_residual(w.f_coeffs(), p.b * A, std::exp(p.b * B), Complex{1.0, 0.0}));
  cert.add_residual("weight-g",
                    weight_residual(w.g_coeffs(), std::conj(p.b * A),
                                    std::conj(p.c) / p.c * std::exp(std::conj(p.b * B)),
                                    Complex{1.0, 0.0}));

  double structural = 0.0;
  for (const auto& [name, value] : cert.residuals) structural = std::max(structural, value);
  cert.add_tolerance("structural", 1e-10);

  // Monomial commutator residual.
  double numeric = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    SplitSeries pm = SplitSeries::zero(p.I, p.J, m);
    pm.f_at(m) = Complex{1.0, 0.0};
    const QSeries lhs = apply(op, to_qseries(apply_C_abcd(p, pm, truncation))).truncated(truncation);
    const SplitSeries wpm = to_split(apply(op, to_qseries(pm)), p.I, p.J);
    const QSeries rhs = to_qseries(apply_C_abcd(p, wpm, truncation));
    numeric = std::max(numeric, fock_norm(lhs - rhs) / std::sqrt(factorial(m)));
  }
  cert.add_residual("monomial-commutator", numeric);
  cert.add_tolerance("monomial-commutator", 1e-9);

  cert.pass = structural <= 1e-10;
  cert.verdict = cert.pass ? "commuting" : "not commuting";
  return cert;
}

/// Weight construction for the symmetry characterization: f = C1 e^{D1 z} +
/// C2 e^{D2 z} J with D1 = aB - bA + b and D2 = aB - conj(bA) + b.  The phase
/// of a nonzero C2 is projected onto the nearest admissible value of the
/// constraint C2 = -(c^2/|c|^2) conj(C2) e^{Bb - conj(Bb)}; the modulus is
/// free.
struct SymmetricWeight {
  QSeries weight;
  Complex c1, c2;
  Complex d1, d2;
  double phase_adjustment = 0.0;
};

inline SymmetricWeight symmetric_weight(const ConjugationParams& p, const Complex& A,
                                        const Complex& B, const Complex& C1,
                                        const Complex& C2_seed) {
  if (std::abs(p.d) != 0.0) {
    throw UnsupportedParamsError("symmetric_weight: defined for d = 0 only");
  }
  if (!validate_params(p).valid()) {
    throw InvalidParamsError("symmetric_weight: invalid conjugation parameters");
  }
  if (std::abs(std::imag(A * p.a)) > 1e-12) {
    throw UnsupportedParamsError("symmetric_weight: Im(A a) must vanish");
  }

  SymmetricWeight out;
  out.c1 = C1;
  out.d1 = p.a * B - p.b * A + p.b;
  out.d2 = p.a * B - std::conj(p.b * A) + p.b;

  if (std::abs(C2_seed) == 0.0) {
    out.c2 = Complex{0.0, 0.0};
  } else {
    if (std::abs(p.c) < 1e-15) {
      throw PhaseConditionUnsatisfiableError("symmetric_weight: c = 0 leaves no valid phase");
    }
    const double theta0 =
        0.5 * std::numbers::pi + std::arg(p.c) + std::imag(B * p.b);
    const double seed_arg = std::arg(C2_seed);
    const double k = std::round((seed_arg - theta0) / std::numbers::pi);
    const double theta = theta0 + k * std::numbers::pi;
    out.phase_adjustment = std::abs(seed_arg - theta);
    out.c2 = std::abs(C2_seed) * Complex{std::cos(theta), std::sin(theta)};
  }

  const int n = std::max({exp_truncation_degree(std::abs(out.d1)),
                          exp_truncation_degree(std::abs(out.d2)), 10});
  std::vector<Quaternion> coeffs(std::size_t(n) + 1);
  Complex tf = out.c1, tg = out.c2;
  for (int m = 0; m <= n; ++m) {
    coeffs[std::size_t(m)] = merge_coefficient(tf, tg, p.I, p.J);
    tf *= out.d1 / double(m + 1);
    tg *= out.d2 / double(m + 1);
  }
  out.weight = QSeries(std::move(coeffs));
  return out;
}

/// max_m || W C P_m - C W* P_m || / || P_m || for m <= m_max, with the
/// adjoint taken through its monomial expansion.  The operator must pass the
/// boundedness certificate first.
inline double symmetry_residual(const WeightedCompOp& op, const ConjugationParams& p, int m_max,
                                int truncation) {
  if (std::abs(p.d) != 0.0) {
    throw UnsupportedParamsError("symmetry_residual: defined for d = 0 only");
  }
  if (!validate_params(p).valid()) {
    throw InvalidParamsError("symmetry_residual: invalid conjugation parameters");
  }
  if (!same_unit(op.symbol.unit, p.I)) {
    throw SliceMismatchError("symmetry_residual: operator and conjugation frames differ");
  }
  const SplitSeries w = to_split(op.weight, p.I, p.J);
  if (!boundedness_certificate(w, op.symbol).pass) {
    throw UnboundedOperatorError("symmetry_residual: operator fails the boundedness gate");
  }

  double worst = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    SplitSeries pm = SplitSeries::zero(p.I, p.J, m);
    pm.f_at(m) = Complex{1.0, 0.0};
    const QSeries lhs =
        apply(op, to_qseries(apply_C_abcd(p, pm, truncation))).truncated(truncation);
    const SplitSeries adj = to_split(adjoint_on_monomial(op, m, truncation), p.I, p.J);
    const QSeries rhs = to_qseries(apply_C_abcd(p, adj, truncation));
    worst = std::max(worst, fock_norm(lhs - rhs) / std::sqrt(factorial(m)));
  }
  return worst;
}

/// Uniformly random valid parameter tuple: a = e^{I theta}, the phase of b
/// forced by the involution constraint, and the normalization split between
/// c and d (d = 0 unless requested).
inline ConjugationParams random_conjugation_params(Rng& rng, const UnitImaginary& I,
                                                   const UnitImaginary& J, bool with_d,
                                                   double b_radius = 1.0) {
  ConjugationParams p;
  p.I = I;
  p.J = J;
  const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
  p.a = Complex{std::cos(theta), std::sin(theta)};
  // conj(a) b + conj(b) = 0 forces arg(b) = (pi + theta)/2 mod pi.
  const double rho = rng.uniform(0.0, b_radius);
  const double phi = 0.5 * (std::numbers::pi + theta) +
                     (rng.uniform() < 0.5 ? 0.0 : std::numbers::pi);
  p.b = rho * Complex{std::cos(phi), std::sin(phi)};
  const double mass = std::exp(-0.5 * std::norm(p.b));
  const double split = with_d ? rng.uniform(0.1, 0.9) : 1.0;
  const double gamma = rng.uniform(0.0, 2.0 * std::numbers::pi);
  p.c = std::sqrt(split) * mass * Complex{std::cos(gamma), std::sin(gamma)};
  if (with_d) {
    const double delta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    p.d = std::sqrt(1.0 - split) * mass * Complex{std::cos(delta), std::sin(delta)};
  }
  return p;
}

}  // namespace qfock
