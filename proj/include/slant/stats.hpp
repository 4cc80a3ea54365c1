#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slant/error.hpp"

namespace slant {

namespace detail {

// Continued fraction for the regularized incomplete beta function,
// evaluated with the modified Lentz method. Converges quickly for
// x < (a+1)/(a+b+2); callers use the symmetry relation otherwise.
inline double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 400;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  return h;  // converged to working precision long before kMaxIter in practice
}

}  // namespace detail

/// Regularized incomplete beta function I_x(a, b) for a, b > 0 and
/// x in [0, 1]. Absolute error well below 1e-10 over that domain.
inline double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw ArgumentError("incomplete_beta: a and b must be positive");
  if (!(x >= 0.0 && x <= 1.0))
    throw ArgumentError("incomplete_beta: x must be in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * detail::betacf(a, b, x) / a;
  return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

/// Upper-tail probability P(T > t) of Student's t with df degrees of
/// freedom.
inline double student_t_sf(double t, std::int64_t df) {
  if (df < 1) throw ArgumentError("student_t_sf: df must be >= 1");
  if (t == 0.0) return 0.5;
  const double v = static_cast<double>(df);
  const double x = v / (v + t * t);
  const double tail = 0.5 * incomplete_beta(v / 2.0, 0.5, x);
  return t > 0.0 ? tail : 1.0 - tail;
}

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double p_value = 1.0;  // two-sided test of slope = 0
  std::size_t n = 0;
  std::int64_t df = 0;
  std::string warning;  // nonempty when r_squared was forced to 0
};

/// Ordinary least squares of y on x with the two-sided t-test on the
/// slope. Needs at least three points and a non-constant x.
inline RegressionResult ols_regress(std::span<const double> x,
                                    std::span<const double> y) {
  if (x.size() != y.size())
    throw ArgumentError("ols_regress: x and y lengths differ");
  const std::size_t n = x.size();
  if (n < 3) throw ArgumentError("ols_regress: needs at least 3 points");

  bool x_constant = true;
  for (std::size_t i = 1; i < n && x_constant; ++i)
    if (x[i] != x[0]) x_constant = false;
  if (x_constant)
    throw ArgumentError("ols_regress: x values are all equal");

  RegressionResult r;
  r.n = n;
  r.df = static_cast<std::int64_t>(n) - 2;

  bool y_constant = true;
  for (std::size_t i = 1; i < n && y_constant; ++i)
    if (y[i] != y[0]) y_constant = false;
  if (y_constant) {
    r.slope = 0.0;
    r.intercept = y[0];
    r.r_squared = 0.0;
    r.p_value = 1.0;
    r.warning = "y is constant; r_squared defined as 0";
    return r;
  }

  const double dn = static_cast<double>(n);
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= dn;
  mean_y /= dn;

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  r.slope = sxy / sxx;
  r.intercept = mean_y - r.slope * mean_x;

  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (r.slope * x[i] + r.intercept);
    ss_res += e * e;
  }
  r.r_squared = 1.0 - ss_res / syy;
  if (r.r_squared < 0.0) r.r_squared = 0.0;
  if (r.r_squared > 1.0) r.r_squared = 1.0;

  if (ss_res <= 0.0) {
    r.p_value = std::numeric_limits<double>::min();  // exact fit
    return r;
  }
  const double se = std::sqrt(ss_res / static_cast<double>(r.df) / sxx);
  const double t = r.slope / se;
  r.p_value = 2.0 * student_t_sf(std::abs(t), r.df);
  if (r.p_value > 1.0) r.p_value = 1.0;
  if (r.p_value <= 0.0) r.p_value = std::numeric_limits<double>::min();
  return r;
}

inline RegressionResult ols_regress(
    const std::vector<std::pair<double, double>>& points) {
  std::vector<double> x, y;
  x.reserve(points.size());
  y.reserve(points.size());
  for (const auto& [px, py] : points) {
    x.push_back(px);
    y.push_back(py);
  }
  return ols_regress(std::span<const double>(x), std::span<const double>(y));
}

}  // namespace slant
