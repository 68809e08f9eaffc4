#pragma once

// Cohomogeneity-one metrics
//   g = u(x)^2 dx^2 + v(x)^2 (s1^2 + s2^2) + w(x)^2 s3^2,   0 < x < L,
// on Euler-angle charts (x, theta, phi, psi) with left-invariant forms
//   s1 = cos psi dtheta + sin psi sin theta dphi
//   s2 = -sin psi dtheta + cos psi sin theta dphi
//   s3 = dpsi + cos theta dphi,
// and the Page metric on CP2 # -CP2 in this form.

#include "curv4/core.hpp"
#include "curv4/curvops.hpp"
#include "curv4/numgeom.hpp"
#include "curv4/secsign.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace curv4 {

/// How the orbit degenerates at an end of the interval.
enum class EndKind {
  Bolt,  // w -> 0 with |dw/ds| = 1/2 (s = arclength), v stays positive
  Nut,   // v, w -> 0 together
};

struct EndpointData {
  EndKind atStart = EndKind::Bolt;
  EndKind atEnd = EndKind::Bolt;
};

struct PageParameters {
  /// Einstein constant, Ric = lambda g.
  double lambda = 1.0;
  /// Shape parameter, root in (0, 1) of nu^4 + 4 nu^3 - 6 nu^2 + 12 nu - 3.
  double nu = 0.0;
  /// NUT parameter n of the Taub-NUT-de Sitter form.
  double nut = 0.0;
};

struct CohomOneMetric {
  std::string name;
  std::function<double(double)> u, v, w;
  double length = std::numbers::pi;
  EndpointData endpoints;
  std::optional<PageParameters> page;
  /// -1 reverses the chart orientation (psi -> -psi).
  int orientation = 1;

  double volume_density(double x) const {
    double vv = v(x);
    return 16.0 * std::numbers::pi * std::numbers::pi * u(x) * vv * vv * w(x);
  }

  MetricChart chart(double suggestedStep = 1e-2) const {
    MetricChart c;
    c.name = name;
    c.lower = Vec4(0.0, 0.0, -4.0 * std::numbers::pi, -8.0 * std::numbers::pi);
    c.upper = Vec4(length, std::numbers::pi, 4.0 * std::numbers::pi, 8.0 * std::numbers::pi);
    c.suggestedStep = suggestedStep;
    auto uf = u, vf = v, wf = w;
    double o = orientation >= 0 ? 1.0 : -1.0;
    c.metricAt = [uf, vf, wf, o](const Vec4& p) {
      double uu = uf(p(0)), vv = vf(p(0)), ww = wf(p(0));
      double ct = std::cos(p(1)), st = std::sin(p(1));
      Mat4 g = Mat4::Zero();
      g(0, 0) = uu * uu;
      g(1, 1) = vv * vv;
      g(2, 2) = vv * vv * st * st + ww * ww * ct * ct;
      g(3, 3) = ww * ww;
      g(2, 3) = g(3, 2) = o * ww * ww * ct;
      return g;
    };
    return c;
  }

  CohomOneMetric reversed() const {
    CohomOneMetric m = *this;
    m.orientation = -orientation;
    return m;
  }
};

namespace detail {

inline double page_nu() {
  auto f = [](double t) { return (((t + 4.0) * t - 6.0) * t + 12.0) * t - 3.0; };
  double lo = 0.0, hi = 1.0;  // f(0) < 0 < f(1)
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Page metric with Einstein constant lambda.
///
/// Riemannian Taub-NUT-de Sitter form with mass parameter zero and |r| < n:
///   g = dr^2/G + (n^2 - r^2)(s1^2 + s2^2) + 4 n^2 G s3^2,
///   G = Q(r^2)/(n^2 - r^2),  Q(R) = (lambda/3) R^2 + (1 - 2 lambda n^2) R + n^2 - lambda n^4,
/// between the bolts r = -+ nu n, with n^2 = 3(1 + nu^2) / (lambda (3 + 6 nu^2 - nu^4)).
/// The radial variable is r = -nu n cos x, which makes u, v, w analytic up
/// to the bolts at x = 0 and x = pi.
inline CohomOneMetric page_metric(double lambda = 1.0) {
  if (!(lambda > 0)) throw Error(ErrorCode::BadParameter, "Page metric needs a positive Einstein constant");
  PageParameters p;
  p.lambda = lambda;
  p.nu = detail::page_nu();
  double nu2 = p.nu * p.nu;
  double n2 = 3.0 * (1.0 + nu2) / (lambda * (3.0 + 6.0 * nu2 - nu2 * nu2));
  p.nut = std::sqrt(n2);
  // other root of Q in R = r^2
  double r2other = 3.0 * (1.0 - lambda * n2) / (lambda * nu2);
  double nu = p.nu, n = p.nut;

  CohomOneMetric m;
  m.name = "page";
  m.length = std::numbers::pi;
  m.page = p;
  m.endpoints = {EndKind::Bolt, EndKind::Bolt};
  auto rsq = [nu, n](double x) {
    double r = nu * n * std::cos(x);
    return r * r;
  };
  m.u = [=](double x) { return std::sqrt(3.0 / lambda) * std::sqrt((n2 - rsq(x)) / (r2other - rsq(x))); };
  m.v = [=](double x) { return std::sqrt(n2 - rsq(x)); };
  m.w = [=](double x) {
    return 2.0 * n * nu * n * std::sin(x) * std::sqrt((lambda / 3.0) * (r2other - rsq(x)) / (n2 - rsq(x)));
  };
  return m;
}

/// Unit round 4-sphere: u = 1, v = w = sin(x)/2.
inline CohomOneMetric round_sphere_metric() {
  CohomOneMetric m;
  m.name = "sphere4";
  m.length = std::numbers::pi;
  m.endpoints = {EndKind::Nut, EndKind::Nut};
  m.u = [](double) { return 1.0; };
  m.v = [](double x) { return 0.5 * std::sin(x); };
  m.w = [](double x) { return 0.5 * std::sin(x); };
  return m;
}

namespace detail {

// Largest stencil step keeping the evaluation 2.5 steps inside (0, L).
inline double orbit_step(const CohomOneMetric& m, double x, double suggested) {
  return std::min(suggested, std::min(x, m.length - x) / 2.5);
}

inline Vec4 orbit_point(double x) { return Vec4(x, std::numbers::pi / 2.0, 0.0, 0.0); }

inline double einstein_tolerance(const PointCurvature& pc) {
  return std::max(tol::classification, 10.0 * pc.errorEstimate / std::max(1.0, std::abs(pc.scalar)));
}

}  // namespace detail

/// Chebyshev points of the first kind on [a, b].
inline std::vector<double> chebyshev_points(double a, double b, int count) {
  std::vector<double> xs;
  for (int k = 1; k <= count; ++k) {
    double c = std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * count));
    xs.push_back(a + 0.5 * (b - a) * (1.0 - c));
  }
  return xs;
}

/// Default sample radii: Chebyshev points on [2.5 h, L - 2.5 h], h the default step.
inline std::vector<double> interior_radii(const CohomOneMetric& m, int count = 32, double step = 1e-2) {
  return chebyshev_points(2.5 * step, m.length - 2.5 * step, count);
}

struct OrbitSample {
  double x = 0.0;
  double residual = 0.0;
  double lambda = 0.0;
  double errorEstimate = 0.0;
  /// Reported only; no sign is expected along a general Einstein metric.
  double glDefect = 0.0;
};

struct EinsteinCheck {
  double maxResidual = 0.0;
  double lambda = 0.0;
  /// (max lambda - min lambda) / |mean lambda|
  double lambdaSpread = 0.0;
  std::vector<OrbitSample> samples;
};

/// Einstein residual at one point per orbit (theta = pi/2, phi = psi = 0).
inline EinsteinCheck verify_einstein(const CohomOneMetric& m, std::span<const double> radii, double step = 1e-2) {
  if (radii.empty()) throw Error(ErrorCode::BadParameter, "no radii to check");
  MetricChart chart = m.chart(step);
  EinsteinCheck out;
  double lo = INFINITY, hi = -INFINITY, sum = 0.0;
  for (double x : radii) {
    PointCurvature pc = curvature_at(chart, detail::orbit_point(x), detail::orbit_step(m, x, step));
    OrbitSample sample;
    sample.x = x;
    sample.residual = pc.einsteinResidual;
    sample.lambda = pc.scalar / 4.0;
    sample.errorEstimate = pc.errorEstimate;
    sample.glDefect = gl_defect(decompose(pc.op)).defect;
    out.samples.push_back(sample);
    out.maxResidual = std::max(out.maxResidual, sample.residual);
    lo = std::min(lo, sample.lambda);
    hi = std::max(hi, sample.lambda);
    sum += sample.lambda;
  }
  out.lambda = sum / static_cast<double>(radii.size());
  out.lambdaSpread = (hi - lo) / std::max(std::abs(out.lambda), 1e-300);
  return out;
}

struct NegativeCurvature {
  double minSec = 0.0;
  double witnessRadius = 0.0;
  PlaneWitness witness;
  /// Index of the witnessing operator for the list form.
  std::size_t witnessIndex = 0;
};

/// Minimum of sec over a list of Einstein points.
inline NegativeCurvature certify_negative_curvature(std::span<const CurvatureOperator> ops,
                                                    std::span<const double> tolerances = {}) {
  if (ops.empty()) throw Error(ErrorCode::BadParameter, "no operators to sweep");
  NegativeCurvature out;
  out.minSec = INFINITY;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    Decomposition d = decompose(ops[i]);
    double t = i < tolerances.size() ? tolerances[i] : tol::classification;
    SecRange range = einstein_sec_range(d, t);
    if (range.secMin < out.minSec) {
      out.minSec = range.secMin;
      out.witnessIndex = i;
    }
  }
  detail::Blocks blk(ops[out.witnessIndex]);
  Eigen::SelfAdjointEigenSolver<Mat3> ea(blk.a);
  Eigen::SelfAdjointEigenSolver<Mat3> ec(blk.c);
  out.witness = detail::make_witness(ops[out.witnessIndex], ea.eigenvectors().col(0), ec.eigenvectors().col(0));
  return out;
}

/// Sweep of the exact Einstein sec range over `count` equally spaced orbits.
inline NegativeCurvature certify_negative_curvature(const CohomOneMetric& m, int count = 128, double step = 1e-2) {
  MetricChart chart = m.chart(step);
  double a = 2.5 * step, b = m.length - 2.5 * step;
  std::vector<CurvatureOperator> ops;
  std::vector<double> tolerances, xs;
  for (int i = 0; i < count; ++i) {
    double x = a + (b - a) * i / (count - 1);
    PointCurvature pc = curvature_at(chart, detail::orbit_point(x), detail::orbit_step(m, x, step));
    ops.push_back(pc.op);
    tolerances.push_back(detail::einstein_tolerance(pc));
    xs.push_back(x);
  }
  NegativeCurvature out = certify_negative_curvature(ops, tolerances);
  out.witnessRadius = xs[out.witnessIndex];
  return out;
}

struct CharNumbers {
  double chi = 0.0;
  double tau = 0.0;
  double chiError = 0.0;
  double tauError = 0.0;
  int nodes = 0;
};

/// Euler characteristic and signature from the orbit integrals of the
/// characteristic densities over [eps, L - eps], eps = 1e-3 L.
inline CharNumbers integrate_char_numbers(const CohomOneMetric& m, int nodes = 48, double step = 1e-2) {
  MetricChart chart = m.chart(step);
  auto densities = [&](double x) {
    PointCurvature pc = curvature_at(chart, detail::orbit_point(x), detail::orbit_step(m, x, step));
    CharDensities cd = char_densities(decompose(pc.op), detail::einstein_tolerance(pc));
    return Eigen::Vector2d(cd.eulerDensity, cd.signatureDensity);
  };
  auto volume = [&](double x) { return m.volume_density(x); };
  double eps = 1e-3 * m.length;
  auto result = orbit_quadrature(densities, volume, eps, m.length - eps, nodes);
  if (result.errorEstimate > 1e-3) {
    throw Error(ErrorCode::NonConvergent, "node doubling changed the characteristic numbers by " +
                                              std::to_string(result.errorEstimate),
                result.errorEstimate);
  }
  CharNumbers out;
  out.chi = result.value(0);
  out.tau = result.value(1);
  out.chiError = out.tauError = result.errorEstimate;
  out.nodes = nodes;
  return out;
}

}  // namespace curv4
