#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qfock/series.hpp"

namespace qfock {

/// Machine-checkable outcome of one characterization: named residuals, the
/// tolerances they were held to, and a verdict string.
struct Certificate {
  std::string check;
  int truncation = 0;
  std::string verdict;
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<std::pair<std::string, double>> tolerances;

  void add_input(const std::string& name, const std::string& value) {
    inputs.emplace_back(name, value);
  }
  void add_input(const std::string& name, const Complex& z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "I";
    inputs.emplace_back(name, os.str());
  }
  void add_residual(const std::string& name, double value) {
    residuals.emplace_back(name, value);
  }
  void add_tolerance(const std::string& name, double value) {
    tolerances.emplace_back(name, value);
  }
  double residual(const std::string& name) const {
    for (const auto& [k, v] : residuals) {
      if (k == name) return v;
    }
    return std::numeric_limits<double>::quiet_NaN();
  }
};

/// Concentric-circle sampling grid for sup/limit estimation of radially
/// dominated Gaussian expressions.
struct SamplingSpec {
  double delta = 0.5;
  int circles = 24;
  int angles = 64;
};

/// Result of scanning |F(w)|^2 e^{|phi(w)|^2-|w|^2} + |G(w)|^2 e^{|phi(conj w)|^2-|w|^2}
/// over the grid.  Divergence is declared after three successive circle
/// maxima each grow by more than ten percent.
struct GridScan {
  double sup = 0.0;
  std::vector<double> circle_max;
  bool divergent = false;
  bool decayed = false;
};

inline GridScan scan_growth(const SplitSeries& f, const AffineSymbol& phi,
                            const SamplingSpec& grid = {}) {
  GridScan scan;
  scan.circle_max.reserve(std::size_t(grid.circles) + 1);
  const auto point_value = [&](const Complex& w) {
    const Complex fw = eval_poly(f.f_coeffs(), w);
    const Complex gw = eval_poly(f.g_coeffs(), w);
    const double r2 = std::norm(w);
    return std::norm(fw) * std::exp(std::norm(phi(w)) - r2) +
           std::norm(gw) * std::exp(std::norm(phi(std::conj(w))) - r2);
  };

  int growth_streak = 0;
  for (int k = 0; k <= grid.circles; ++k) {
    const double radius = grid.delta * double(k);
    double circle = 0.0;
    const int samples = (k == 0) ? 1 : grid.angles;
    for (int m = 0; m < samples; ++m) {
      const double theta = 2.0 * std::numbers::pi * double(m) / double(samples);
      circle = std::max(circle, point_value(radius * Complex{std::cos(theta), std::sin(theta)}));
    }
    if (!std::isfinite(circle)) {
      scan.divergent = true;
      scan.circle_max.push_back(circle);
      break;
    }
    if (k > 0) {
      growth_streak = (circle > 1.1 * scan.circle_max.back()) ? growth_streak + 1 : 0;
      if (growth_streak >= 3) scan.divergent = true;
    }
    scan.circle_max.push_back(circle);
    scan.sup = std::max(scan.sup, circle);
  }

  const std::size_t n = scan.circle_max.size();
  if (!scan.divergent && n >= 3) {
    const double tail = scan.circle_max[n - 1];
    const bool shrinking =
        tail <= scan.circle_max[n - 2] && scan.circle_max[n - 2] <= scan.circle_max[n - 3];
    scan.decayed = shrinking && tail <= std::max(1e-6 * (1.0 + scan.sup), 1e-12);
  }
  return scan;
}

}  // namespace qfock
