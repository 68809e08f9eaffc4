#pragma once

// Curvature of coordinate metrics by finite differences, and Gauss-Legendre
// quadrature for orbit integrals.

#include "curv4/core.hpp"
#include "curv4/curvops.hpp"
#include "curv4/twoform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curv4 {

/// Metric on an open coordinate box of R^4.
struct MetricChart {
  std::string name;
  Vec4 lower = Vec4::Constant(-1.0);
  Vec4 upper = Vec4::Constant(1.0);
  std::function<Mat4(const Vec4&)> metricAt;
  double suggestedStep = 1e-2;

  bool contains(const Vec4& x) const {
    return (x.array() > lower.array()).all() && (x.array() < upper.array()).all();
  }

  /// Distance from x to the boundary of the box.
  double margin(const Vec4& x) const {
    return std::min((x - lower).minCoeff(), (upper - x).minCoeff());
  }

  Mat4 at(const Vec4& x) const {
    if (!contains(x)) throw Error(ErrorCode::PointOutsideDomain, "point lies outside the chart " + name);
    return metricAt(x);
  }
};

struct PointCurvature {
  CurvatureOperator op;
  /// Ricci tensor in the orthonormal frame.
  Mat4 ricci = Mat4::Zero();
  double scalar = 0.0;
  /// max |Ric - (s/4) g| / max(1, |s|)
  double einsteinResidual = 0.0;
  double stepUsed = 0.0;
  double errorEstimate = 0.0;
  /// Columns are the orthonormal frame vectors in coordinates.
  Mat4 frame = Mat4::Identity();
};

namespace detail {

// 4th-order central first derivative: sum_a w_a (f(+a h) - f(-a h)) / h.
// Written on differences so constant metrics give exact zeros.
inline constexpr std::array<double, 2> kD1Offsets{1.0, 2.0};
inline constexpr std::array<double, 2> kD1Weights{8.0 / 12.0, -1.0 / 12.0};

/// Gram-Schmidt on the coordinate vectors; columns orthonormal for g.
inline Mat4 orthonormal_frame(const Mat4& g) {
  Mat4 e = Mat4::Identity();
  for (int k = 0; k < 4; ++k) {
    Vec4 v = Vec4::Unit(k);
    for (int j = 0; j < k; ++j) v -= (e.col(j).dot(g * v)) * e.col(j);
    // second pass keeps the frame orthonormal to roundoff
    for (int j = 0; j < k; ++j) v -= (e.col(j).dot(g * v)) * e.col(j);
    e.col(k) = v / std::sqrt(v.dot(g * v));
  }
  if (e.determinant() < 0) e.col(3) = -e.col(3);
  return e;
}

struct RawCurvature {
  Mat6 op;
  Mat4 ricci;
  double scalar;
  Mat4 frame;
};

inline RawCurvature raw_curvature(const MetricChart& chart, const Vec4& x, double h) {
  auto metric = [&](const Vec4& y) {
    Mat4 g = chart.metricAt(y);
    return Mat4(0.5 * (g + g.transpose()));
  };
  Mat4 g = metric(x);
  Eigen::LLT<Mat4> llt(g);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularMetric, "metric is not positive definite at the evaluation point");
  }

  std::array<Mat4, 4> dg;
  for (int k = 0; k < 4; ++k) {
    dg[k].setZero();
    for (std::size_t i = 0; i < 2; ++i) {
      Vec4 step = kD1Offsets[i] * h * Vec4::Unit(k);
      dg[k] += kD1Weights[i] * (metric(x + step) - metric(x - step));
    }
    dg[k] /= h;
  }
  std::array<std::array<Mat4, 4>, 4> ddg;
  for (int k = 0; k < 4; ++k) {
    Vec4 ek = Vec4::Unit(k);
    ddg[k][k] = (16.0 * (metric(x + h * ek) + metric(x - h * ek)) - (metric(x + 2 * h * ek) + metric(x - 2 * h * ek)) -
                 30.0 * g) /
                (12.0 * h * h);
    for (int l = k + 1; l < 4; ++l) {
      Vec4 el = Vec4::Unit(l);
      Mat4 acc = Mat4::Zero();
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          Vec4 a = kD1Offsets[i] * h * ek;
          Vec4 b = kD1Offsets[j] * h * el;
          acc += (kD1Weights[i] * kD1Weights[j]) *
                 ((metric(x + a + b) - metric(x + a - b)) - (metric(x - a + b) - metric(x - a - b)));
        }
      ddg[k][l] = ddg[l][k] = acc / (h * h);
    }
  }

  Mat4 ginv = llt.solve(Mat4::Identity());
  // first-kind Christoffel symbols  low[d](b, c) = (d_b g_dc + d_c g_db - d_d g_bc) / 2
  std::array<Mat4, 4> low;
  for (int d = 0; d < 4; ++d)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) low[d](b, c) = 0.5 * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
  std::array<Mat4, 4> gamma;  // gamma[a](b, c) = Gamma^a_bc
  for (int a = 0; a < 4; ++a) {
    gamma[a].setZero();
    for (int d = 0; d < 4; ++d) gamma[a] += ginv(a, d) * low[d];
  }

  // R_iklm = (g_im,kl + g_kl,im - g_il,km - g_km,il) / 2
  //        + g_np (Gamma^n_kl Gamma^p_im - Gamma^n_km Gamma^p_il)
  // with sec(X, Y) = R(X, Y, X, Y) / |X ^ Y|^2.
  auto riemann = [&](int i, int k, int l, int m) {
    double v = 0.5 * (ddg[k][l](i, m) + ddg[i][m](k, l) - ddg[k][m](i, l) - ddg[i][l](k, m));
    for (int n = 0; n < 4; ++n) v += low[n](i, m) * gamma[n](k, l) - low[n](i, l) * gamma[n](k, m);
    return v;
  };
  std::array<double, 256> rc{};
  auto idx = [](int i, int k, int l, int m) { return static_cast<std::size_t>(((i * 4 + k) * 4 + l) * 4 + m); };
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m) rc[idx(i, k, l, m)] = riemann(i, k, l, m);

  Mat4 e = orthonormal_frame(g);
  // successive contraction with the frame on each slot
  std::array<double, 256> tmp{};
  for (int slot = 0; slot < 4; ++slot) {
    tmp.fill(0.0);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          for (int m = 0; m < 4; ++m) {
            std::array<int, 4> out{i, k, l, m};
            double acc = 0.0;
            for (int t = 0; t < 4; ++t) {
              std::array<int, 4> in = out;
              in[static_cast<std::size_t>(slot)] = t;
              acc += e(t, out[static_cast<std::size_t>(slot)]) * rc[idx(in[0], in[1], in[2], in[3])];
            }
            tmp[idx(i, k, l, m)] = acc;
          }
    rc = tmp;
  }

  RawCurvature out;
  for (std::size_t p = 0; p < kPairs.size(); ++p)
    for (std::size_t q = 0; q < kPairs.size(); ++q) {
      auto [a, b] = kPairs[p];
      auto [c, d] = kPairs[q];
      out.op(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = rc[idx(a, b, c, d)];
    }
  out.op = 0.5 * (out.op + out.op.transpose());
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double acc = 0.0;
      for (int a = 0; a < 4; ++a) acc += rc[idx(a, b, a, d)];
      out.ricci(b, d) = acc;
    }
  out.ricci = 0.5 * (out.ricci + out.ricci.transpose());
  out.scalar = out.ricci.trace();
  out.frame = e;
  return out;
}

inline void check_point(const MetricChart& chart, const Vec4& x, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::StepTooLarge, "step must be positive", step);
  if (!chart.contains(x)) throw Error(ErrorCode::OutsideDomain, "point lies outside the chart " + chart.name);
  double margin = chart.margin(x);
  if (margin < 2.0 * step) {
    throw Error(ErrorCode::StepTooLarge, "stencil leaves the chart domain (margin " + std::to_string(margin) + ")",
                step);
  }
}

}  // namespace detail

/// Curvature operator in the Gram-Schmidt frame of the coordinate vectors.
///
/// Fourth-order central differences at steps h and h/2 are Richardson
/// combined; the emitted operator is the extrapolated one and errorEstimate
/// is |R(h) - R(h/2)|/15, the estimated error of the h/2 result.
inline PointCurvature curvature_at(const MetricChart& chart, const Vec4& x, std::optional<double> step = {}) {
  double h = step.value_or(chart.suggestedStep);
  detail::check_point(chart, x, h);
  detail::RawCurvature coarse = detail::raw_curvature(chart, x, h);
  detail::RawCurvature fine = detail::raw_curvature(chart, x, 0.5 * h);

  PointCurvature pc;
  Mat6 op = (16.0 * fine.op - coarse.op) / 15.0;
  pc.op = {op, Basis::Coordinate};
  pc.ricci = (16.0 * fine.ricci - coarse.ricci) / 15.0;
  pc.scalar = pc.ricci.trace();
  pc.frame = fine.frame;
  pc.stepUsed = h;
  double scale = std::max(1.0, op.cwiseAbs().maxCoeff());
  pc.errorEstimate = (coarse.op - fine.op).cwiseAbs().maxCoeff() / 15.0 + 64.0 * 1e-16 * scale;
  Mat4 traceless = pc.ricci - 0.25 * pc.scalar * Mat4::Identity();
  pc.einsteinResidual = traceless.cwiseAbs().maxCoeff() / std::max(1.0, std::abs(pc.scalar));
  return pc;
}

struct ConvergenceStudy {
  std::vector<std::pair<double, double>> errors;  // (step, max error)
  /// Least-squares log-log slope; empty when every error is at roundoff level.
  std::optional<double> slope;
};

/// Raw stencil errors at each step against the Richardson extrapolation of
/// the two finest steps.
inline ConvergenceStudy convergence_study(const MetricChart& chart, const Vec4& x, const std::vector<double>& steps) {
  if (steps.size() < 3) throw Error(ErrorCode::BadParameter, "convergence study needs at least three steps");
  for (std::size_t i = 1; i < steps.size(); ++i)
    if (!(steps[i] < steps[i - 1])) throw Error(ErrorCode::BadParameter, "steps must be strictly decreasing");
  for (double h : steps) detail::check_point(chart, x, h);

  std::vector<Mat6> ops;
  for (double h : steps) ops.push_back(detail::raw_curvature(chart, x, h).op);
  double ratio4 = std::pow(steps[steps.size() - 2] / steps.back(), 4);
  Mat6 reference = (ratio4 * ops.back() - ops[ops.size() - 2]) / (ratio4 - 1.0);

  ConvergenceStudy out;
  bool resolved = true;
  double floor = 1e-12 * std::max(1.0, reference.cwiseAbs().maxCoeff());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    double err = (ops[i] - reference).cwiseAbs().maxCoeff();
    out.errors.emplace_back(steps[i], err);
    if (err <= floor) resolved = false;
  }
  if (resolved) {
    double n = static_cast<double>(steps.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [h, err] : out.errors) {
      double lx = std::log(h), ly = std::log(err);
      sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return out;
}

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
inline GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    double w = 2.0 / ((1.0 - z * z) * dp * dp);
    auto lo = static_cast<std::size_t>(i);
    auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -z;
    rule.nodes[hi] = z;
    rule.weights[lo] = rule.weights[hi] = w;
  }
  return rule;
}

template <class T>
struct QuadratureResult {
  T value;
  /// Change between `nodes` and 2 * `nodes`; value is the finer one.
  double errorEstimate;
};

namespace detail {
inline double magnitude(double v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) { return v.cwiseAbs().maxCoeff(); }

template <class F, class W>
auto gauss_apply(const F& f, const W& weight, double a, double b, int n) {
  GaussRule rule = gauss_legendre(n);
  double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  using T = std::decay_t<decltype(f(a))>;
  T acc = f(mid) * 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double t = mid + half * rule.nodes[i];
    acc = acc + f(t) * (weight(t) * rule.weights[i]);
  }
  return T(acc * half);
}
}  // namespace detail

/// Gauss-Legendre value of the integral of f * weight over [a, b].
template <class F, class W>
auto orbit_quadrature(const F& f, const W& weight, double a, double b, int nodes = 32) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::BadInterval, "quadrature interval must satisfy a < b");
  }
  if (nodes < 16) throw Error(ErrorCode::BadParameter, "at least 16 quadrature nodes are required", nodes);
  auto coarse = detail::gauss_apply(f, weight, a, b, nodes);
  auto fine = detail::gauss_apply(f, weight, a, b, 2 * nodes);
  using T = decltype(fine);
  return QuadratureResult<T>{fine, detail::magnitude(fine - coarse)};
}

}  // namespace curv4
