#pragma once

// Closed-form model curvature operators and analytic metric charts.

#include "curv4/core.hpp"
#include "curv4/curvops.hpp"
#include "curv4/numgeom.hpp"
#include "curv4/secsign.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace curv4 {

enum class SecSign { NonNegative, NonPositive, Indefinite, Zero };

constexpr std::string_view to_string(SecSign s) {
  switch (s) {
    case SecSign::NonNegative: return "NonNegative";
    case SecSign::NonPositive: return "NonPositive";
    case SecSign::Indefinite: return "Indefinite";
    case SecSign::Zero: return "Zero";
  }
  return "";
}

using Parameters = std::map<std::string, double>;

struct ModelFlags {
  bool einstein = false;
  bool kahler = false;
  SecSign secSign = SecSign::Indefinite;
};

struct ModelSpec {
  std::string name;
  Parameters parameters;
  CurvatureOperator op;
  ModelFlags flags;
  std::optional<CoverClass> knownCover;
};

inline const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names{"flat", "sphere4", "hyperbolic4", "surfaceProduct", "fubiniStudy",
                                              "bergman"};
  return names;
}

namespace detail {

inline Parameters with_defaults(const std::string& what, Parameters given, const Parameters& defaults) {
  for (const auto& [key, value] : given) {
    if (!defaults.contains(key)) throw Error(ErrorCode::BadParameter, what + " has no parameter '" + key + "'");
    if (!std::isfinite(value)) throw Error(ErrorCode::BadParameter, what + ": parameter '" + key + "' is not finite");
  }
  for (const auto& [key, value] : defaults) given.try_emplace(key, value);
  return given;
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::BadParameter, message);
}

// Kahler pattern: W+ spectrum (-s/12, -s/12, s/6) with the Kahler form along
// the first SD basis vector, W- = 0.
inline CurvatureOperator kahler_symmetric(double s) {
  Mat6 m = Mat6::Zero();
  m(0, 0) = s / 4.0;
  m(3, 3) = m(4, 4) = m(5, 5) = s / 12.0;
  return {to_coordinate(m), Basis::Coordinate};
}

inline SecSign sign_of(const SecSignCertificate& cert) {
  if (cert.qMinLower >= -cert.tolerance && cert.qMaxUpper <= cert.tolerance) return SecSign::Zero;
  switch (cert.verdict) {
    case Verdict::NonNegative: return SecSign::NonNegative;
    case Verdict::NonPositive: return SecSign::NonPositive;
    default: return SecSign::Indefinite;
  }
}

}  // namespace detail

/// Catalog entry with flags derived from the operator itself.
inline ModelSpec catalog(const std::string& name, const Parameters& given = {}) {
  ModelSpec spec;
  spec.name = name;
  if (name == "flat") {
    spec.parameters = detail::with_defaults(name, given, {});
    spec.op = CurvatureOperator::zero();
    spec.flags.kahler = true;
  } else if (name == "sphere4" || name == "hyperbolic4") {
    spec.parameters = detail::with_defaults(name, given, {{"r", 1.0}});
    double r = spec.parameters["r"];
    detail::require(r > 0, name + ": radius r must be positive");
    double k = (name == "sphere4" ? 1.0 : -1.0) / (r * r);
    spec.op = CurvatureOperator::identity().scaled(k);
  } else if (name == "surfaceProduct") {
    spec.parameters = detail::with_defaults(name, given, {{"a", 1.0}, {"b", 1.0}});
    Mat6 m = Mat6::Zero();
    m(0, 0) = spec.parameters["a"];
    m(5, 5) = spec.parameters["b"];
    spec.op = {m, Basis::Coordinate};
    spec.flags.kahler = true;
  } else if (name == "fubiniStudy") {
    spec.parameters = detail::with_defaults(name, given, {{"s", 24.0}});
    detail::require(spec.parameters["s"] > 0, "fubiniStudy: scalar curvature s must be positive");
    spec.op = detail::kahler_symmetric(spec.parameters["s"]);
    spec.flags.kahler = true;
  } else if (name == "bergman") {
    spec.parameters = detail::with_defaults(name, given, {{"s", -24.0}});
    detail::require(spec.parameters["s"] < 0, "bergman: scalar curvature s must be negative");
    spec.op = detail::kahler_symmetric(spec.parameters["s"]);
    spec.flags.kahler = true;
  } else {
    throw Error(ErrorCode::UnknownModel, "no catalog model named '" + name + "'");
  }

  Decomposition d = decompose(spec.op);
  spec.flags.einstein = d.is_einstein();
  spec.flags.secSign = detail::sign_of(certify_sec_sign(spec.op));
  if (spec.flags.einstein && spec.flags.secSign != SecSign::Indefinite) {
    SignClass sign = spec.flags.secSign == SecSign::NonNegative ? SignClass::NonNegative : SignClass::NonPositive;
    CoverClass cover = classify_equality(d, sign);
    if (cover != CoverClass::NotSaturated) spec.knownCover = cover;
  }
  return spec;
}

inline const std::vector<std::string>& chart_names() {
  static const std::vector<std::string> names{"flatChart", "sphereProductChart", "hyperbolic4HalfSpace"};
  return names;
}

/// Analytic chart whose frame curvature equals the matching catalog operator:
///   flatChart            -> flat
///   sphereProductChart   -> surfaceProduct(a, b), coordinates (theta1, phi1, theta2, phi2)
///   hyperbolic4HalfSpace -> hyperbolic4(1), coordinates (x1, x2, x3, x4), x4 > 0
inline MetricChart chart_for(const std::string& name, const Parameters& given = {}) {
  MetricChart chart;
  chart.name = name;
  if (name == "flatChart") {
    detail::with_defaults(name, given, {});
    chart.lower = Vec4::Constant(-1e3);
    chart.upper = Vec4::Constant(1e3);
    chart.metricAt = [](const Vec4&) { return Mat4(Mat4::Identity()); };
  } else if (name == "sphereProductChart") {
    Parameters p = detail::with_defaults(name, given, {{"a", 1.0}, {"b", 1.0}});
    detail::require(p["a"] > 0 && p["b"] > 0, name + ": curvatures a and b must be positive");
    double r1 = 1.0 / std::sqrt(p["a"]);
    double r2 = 1.0 / std::sqrt(p["b"]);
    chart.lower = Vec4(0.0, -10.0, 0.0, -10.0);
    chart.upper = Vec4(std::numbers::pi, 10.0, std::numbers::pi, 10.0);
    chart.metricAt = [r1, r2](const Vec4& x) {
      Mat4 g = Mat4::Zero();
      g(0, 0) = r1 * r1;
      g(1, 1) = r1 * r1 * std::sin(x(0)) * std::sin(x(0));
      g(2, 2) = r2 * r2;
      g(3, 3) = r2 * r2 * std::sin(x(2)) * std::sin(x(2));
      return g;
    };
  } else if (name == "hyperbolic4HalfSpace") {
    detail::with_defaults(name, given, {});
    chart.lower = Vec4(-1e3, -1e3, -1e3, 0.0);
    chart.upper = Vec4(1e3, 1e3, 1e3, 1e3);
    chart.metricAt = [](const Vec4& x) { return Mat4(Mat4::Identity() / (x(3) * x(3))); };
  } else {
    throw Error(ErrorCode::UnknownChart, "no chart named '" + name + "'");
  }
  return chart;
}

}  // namespace curv4
