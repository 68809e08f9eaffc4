#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace curv4 {

using Vec3 = Eigen::Matrix<double, 3, 1>;
using Vec4 = Eigen::Matrix<double, 4, 1>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix<double, 3, 3>;
using Mat4 = Eigen::Matrix<double, 4, 4>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

using Rational = boost::multiprecision::cpp_rational;

/// Absolute/relative thresholds shared across modules.
namespace tol {
// symmetry, Bianchi and trace checks
inline constexpr double structural = 1e-9;
// saturation, eigenvalue multiplicity, Einstein test
inline constexpr double classification = 1e-7;
// sign verdicts, multiplied by max(1, |R|)
inline constexpr double sign = 1e-8;
}  // namespace tol

enum class ErrorCode {
  NotSymmetric,
  BianchiViolation,
  InvalidBlocks,
  NotEinstein,
  IndefiniteSign,
  NotKahler,
  NotUnit,
  DegeneratePlane,
  NotAdmissible,
  UnknownModel,
  BadParameter,
  UnknownChart,
  PointOutsideDomain,
  OutsideDomain,
  SingularMetric,
  StepTooLarge,
  BadInterval,
  NonConvergent,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::BianchiViolation: return "BianchiViolation";
    case ErrorCode::InvalidBlocks: return "InvalidBlocks";
    case ErrorCode::NotEinstein: return "NotEinstein";
    case ErrorCode::IndefiniteSign: return "IndefiniteSign";
    case ErrorCode::NotKahler: return "NotKahler";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::UnknownChart: return "UnknownChart";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::BadInterval: return "BadInterval";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Numerical failures map to CLI exit code 2, everything else to 1.
constexpr bool is_numerical(ErrorCode c) {
  return c == ErrorCode::SingularMetric || c == ErrorCode::NonConvergent;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double magnitude = 0.0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        magnitude_(magnitude) {}

  ErrorCode code() const noexcept { return code_; }
  /// Size of the offending defect, when one applies.
  double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorCode code_;
  double magnitude_;
};

/// Exact value of a double as a rational (every finite double is dyadic).
inline Rational exact(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::BadParameter, "non-finite value has no rational form");
  int exponent = 0;
  double mantissa = std::frexp(x, &exponent);
  // 53 significant bits fit in an int64 once scaled
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r(scaled);
  if (exponent > 0) {
    boost::multiprecision::cpp_int p = 1;
    p <<= exponent;
    r *= p;
  } else if (exponent < 0) {
    boost::multiprecision::cpp_int p = 1;
    p <<= -exponent;
    r /= p;
  }
  return r;
}

inline std::string to_string(const Rational& r) {
  return r.str();
}

}  // namespace curv4
