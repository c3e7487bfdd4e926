#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "qfock/fock.hpp"
#include "qfock/series.hpp"

namespace qfock {

/// Tensor rule for Gaussian-weighted integrals over a slice: Gauss-Laguerre
/// in the squared radius times a uniform angular grid.
struct QuadratureSpec {
  int radial = 64;
  int angular = 64;
};

namespace detail {

struct RadialRule {
  std::vector<double> nodes;    // t = r^2
  std::vector<double> weights;  // for weight e^{-t} on [0, inf)
};

/// Golub-Welsch nodes for the Laguerre weight: eigen-decomposition of the
/// symmetric tridiagonal with diagonal 2k+1 and off-diagonal k.
inline RadialRule gauss_laguerre(int n) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jacobi(k, k) = 2.0 * k + 1.0;
    if (k > 0) {
      jacobi(k, k - 1) = double(k);
      jacobi(k - 1, k) = double(k);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  RadialRule rule;
  rule.nodes.resize(std::size_t(n));
  rule.weights.resize(std::size_t(n));
  for (int k = 0; k < n; ++k) {
    rule.nodes[std::size_t(k)] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    rule.weights[std::size_t(k)] = v0 * v0;  // total mass of e^{-t} is one
  }
  return rule;
}

}  // namespace detail

/// Numerical inner product <f, g> = int conj(g_I(z)) f_I(z) e^{-|z|^2} dsigma
/// over the shared slice, with dsigma = dx dy / pi.  Exact for polynomial
/// integrands within the rule's reach; an independent check of the
/// coefficient-space inner product.
inline Quaternion quadrature_inner(const SplitSeries& f, const SplitSeries& g,
                                   const QuadratureSpec& rule = {}) {
  if (!f.same_frame(g)) {
    throw SliceMismatchError("quadrature_inner: operands on different frames");
  }
  const int max_degree = std::max(f.degree(), g.degree());
  if (rule.angular <= max_degree || 2 * rule.radial - 1 < 2 * max_degree) {
    throw InsufficientRuleError("quadrature_inner: rule cannot integrate this degree exactly");
  }
  const auto radial = detail::gauss_laguerre(rule.radial);

  Quaternion acc{};
  for (int ia = 0; ia < rule.angular; ++ia) {
    const double theta = 2.0 * std::numbers::pi * double(ia) / double(rule.angular);
    const Complex dir{std::cos(theta), std::sin(theta)};
    for (int ir = 0; ir < rule.radial; ++ir) {
      const Complex z = std::sqrt(radial.nodes[std::size_t(ir)]) * dir;
      const Complex fv = eval_poly(f.f_coeffs(), z);
      const Complex gv = eval_poly(f.g_coeffs(), z);
      const Complex hv = eval_poly(g.f_coeffs(), z);
      const Complex kv = eval_poly(g.g_coeffs(), z);
      const Quaternion fq = merge_coefficient(fv, gv, f.I(), f.J());
      const Quaternion gq = merge_coefficient(hv, kv, f.I(), f.J());
      acc += radial.weights[std::size_t(ir)] * (conj(gq) * fq);
    }
  }
  return acc / double(rule.angular);
}

}  // namespace qfock
