#pragma once

// Curvature operators of oriented 4-manifolds at a point, their splitting into
// scalar curvature, Weyl halves and traceless Ricci, and the pointwise
// quantities built from that splitting.
//
// Convention: for orthonormal X, Y the sectional curvature is
// <R(X^Y), X^Y>, so the identity operator is the unit round 4-sphere.
// |W+-| is the Frobenius norm of the 3x3 block.

#include "curv4/core.hpp"
#include "curv4/twoform.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace curv4 {

enum class Basis { Coordinate, SdAsd };

constexpr std::string_view to_string(Basis b) {
  return b == Basis::Coordinate ? "coordinate" : "sd-asd";
}

/// Symmetric endomorphism of the 2-forms at a point.
struct CurvatureOperator {
  Mat6 matrix = Mat6::Zero();
  Basis basis = Basis::Coordinate;

  static CurvatureOperator identity() { return {Mat6::Identity(), Basis::Coordinate}; }
  static CurvatureOperator zero() { return {Mat6::Zero(), Basis::Coordinate}; }

  Mat6 coordinate() const { return basis == Basis::Coordinate ? matrix : to_coordinate(matrix); }
  Mat6 sd_asd() const { return basis == Basis::SdAsd ? matrix : to_sd_asd(matrix); }

  CurvatureOperator scaled(double c) const { return {c * matrix, basis}; }

  double symmetry_defect() const { return (matrix - matrix.transpose()).cwiseAbs().maxCoeff(); }

  /// tr(SD block) - tr(ASD block).
  double bianchi_defect() const {
    Mat6 m = sd_asd();
    return m.topLeftCorner<3, 3>().trace() - m.bottomRightCorner<3, 3>().trace();
  }

  double max_abs() const { return matrix.cwiseAbs().maxCoeff(); }

  /// Spectral norm.
  double norm() const {
    Mat6 sym = 0.5 * (matrix + matrix.transpose());
    Eigen::SelfAdjointEigenSolver<Mat6> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }

  double apply(const TwoForm& a, const TwoForm& b) const {
    return a.coefficients().dot(coordinate() * b.coefficients());
  }
};

/// Throws NotSymmetric / BianchiViolation with the offending magnitude.
inline void require_admissible(const CurvatureOperator& r, double tolerance = tol::structural) {
  double scale = std::max(1.0, r.max_abs());
  double sym = r.symmetry_defect();
  if (sym > tolerance * scale) {
    throw Error(ErrorCode::NotSymmetric, "symmetry defect " + std::to_string(sym), sym);
  }
  double bianchi = std::abs(r.bianchi_defect());
  if (bianchi > tolerance * scale) {
    throw Error(ErrorCode::BianchiViolation, "Bianchi defect " + std::to_string(bianchi), bianchi);
  }
}

/// Sorted eigenvalues lambda <= mu <= nu of a traceless 3x3 block.
struct WeylSpectrum {
  double lambda = 0.0;
  double mu = 0.0;
  double nu = 0.0;

  static WeylSpectrum of(const Mat3& w) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(w, Eigen::EigenvaluesOnly);
    const Vec3& e = es.eigenvalues();
    return {e(0), e(1), e(2)};
  }
};

struct Decomposition {
  double s = 0.0;
  Mat3 wPlus = Mat3::Zero();
  Mat3 wMinus = Mat3::Zero();
  /// SD x ASD off-diagonal block; vanishes iff the point is Einstein.
  Mat3 ricBlock = Mat3::Zero();
  WeylSpectrum spectrumPlus;
  WeylSpectrum spectrumMinus;

  static Decomposition from_blocks(double s, const Mat3& wPlus, const Mat3& wMinus,
                                   const Mat3& ricBlock = Mat3::Zero()) {
    Decomposition d;
    d.s = s;
    d.wPlus = wPlus;
    d.wMinus = wMinus;
    d.ricBlock = ricBlock;
    d.spectrumPlus = WeylSpectrum::of(wPlus);
    d.spectrumMinus = WeylSpectrum::of(wMinus);
    return d;
  }

  double einstein_constant() const { return s / 4.0; }
  double norm_w_plus() const { return wPlus.norm(); }
  double norm_w_minus() const { return wMinus.norm(); }
  double scale() const { return std::max(1.0, std::abs(s)); }

  bool is_einstein(double tolerance = tol::classification) const {
    return ricBlock.norm() <= tolerance * scale();
  }

  /// Orientation reversal swaps the Weyl halves and transposes the Ricci block.
  Decomposition flipped() const { return from_blocks(s, wMinus, wPlus, ricBlock.transpose()); }
};

inline Decomposition decompose(const CurvatureOperator& r) {
  require_admissible(r);
  Mat6 m = r.sd_asd();
  m = 0.5 * (m + m.transpose());
  Mat3 a = m.topLeftCorner<3, 3>();
  Mat3 c = m.bottomRightCorner<3, 3>();
  double s = 2.0 * (a.trace() + c.trace());
  Mat3 shift = (s / 12.0) * Mat3::Identity();
  return Decomposition::from_blocks(s, a - shift, c - shift, m.topRightCorner<3, 3>());
}

inline CurvatureOperator recompose(const Decomposition& d) {
  double limit = tol::structural * d.scale();
  double tp = d.wPlus.trace();
  double tm = d.wMinus.trace();
  if (std::abs(tp) > limit || std::abs(tm) > limit) {
    throw Error(ErrorCode::InvalidBlocks, "Weyl blocks are not traceless",
                std::max(std::abs(tp), std::abs(tm)));
  }
  Mat6 m;
  Mat3 shift = (d.s / 12.0) * Mat3::Identity();
  m.topLeftCorner<3, 3>() = d.wPlus + shift;
  m.bottomRightCorner<3, 3>() = d.wMinus + shift;
  m.topRightCorner<3, 3>() = d.ricBlock;
  m.bottomLeftCorner<3, 3>() = d.ricBlock.transpose();
  return {to_coordinate(m), Basis::Coordinate};
}

enum class SignClass { NonPositive, NonNegative, Indefinite };
enum class Branch { NonPositive, NonNegative, None };
enum class CoverClass { SphereProduct, Flat, HyperbolicPlaneProduct, NotSaturated };

constexpr std::string_view to_string(SignClass c) {
  switch (c) {
    case SignClass::NonPositive: return "NonPositive";
    case SignClass::NonNegative: return "NonNegative";
    case SignClass::Indefinite: return "Indefinite";
  }
  return "";
}

constexpr std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::NonPositive: return "NonPositive";
    case Branch::NonNegative: return "NonNegative";
    case Branch::None: return "None";
  }
  return "";
}

constexpr std::string_view to_string(CoverClass c) {
  switch (c) {
    case CoverClass::SphereProduct: return "SphereProduct";
    case CoverClass::Flat: return "Flat";
    case CoverClass::HyperbolicPlaneProduct: return "HyperbolicPlaneProduct";
    case CoverClass::NotSaturated: return "NotSaturated";
  }
  return "";
}

namespace detail {

inline bool close(double a, double b, double scale) {
  return std::abs(a - b) <= tol::classification * scale;
}

// mu = nu in both halves
inline bool top_pairs_equal(const Decomposition& d) {
  return close(d.spectrumPlus.mu, d.spectrumPlus.nu, d.scale()) &&
         close(d.spectrumMinus.mu, d.spectrumMinus.nu, d.scale());
}

// lambda = mu in both halves
inline bool bottom_pairs_equal(const Decomposition& d) {
  return close(d.spectrumPlus.lambda, d.spectrumPlus.mu, d.scale()) &&
         close(d.spectrumMinus.lambda, d.spectrumMinus.mu, d.scale());
}

inline bool flat_like(const Decomposition& d) {
  return std::abs(d.s) <= tol::classification && d.norm_w_plus() <= tol::classification &&
         d.norm_w_minus() <= tol::classification;
}

inline double gl_defect_value(const Decomposition& d) {
  return std::abs(d.s) / std::sqrt(6.0) - (d.norm_w_plus() + d.norm_w_minus());
}

}  // namespace detail

struct GLReport {
  double defect = 0.0;
  double normWPlus = 0.0;
  double normWMinus = 0.0;
  Branch equalityBranch = Branch::None;
  bool saturated = false;
  CoverClass coverClass = CoverClass::NotSaturated;
};

/// |s|/sqrt(6) - (|W+| + |W-|) together with the equality-case reading.
///
/// The defect is defined for every operator; it is only guaranteed
/// non-negative for Einstein points of semi-definite sectional curvature,
/// which this function does not check. Saturation requires the defect to
/// vanish and the Weyl spectra to have the multiplicity pattern of the branch
/// selected by the sign of s (mu = nu for s < 0, lambda = mu for s > 0). A
/// cover class other than NotSaturated is only reported at Einstein points.
inline GLReport gl_defect(const Decomposition& d) {
  GLReport out;
  out.normWPlus = d.norm_w_plus();
  out.normWMinus = d.norm_w_minus();
  out.defect = detail::gl_defect_value(d);
  if (std::abs(out.defect) > tol::classification * d.scale()) return out;

  bool einstein = d.is_einstein();
  if (detail::flat_like(d)) {
    out.saturated = true;
    out.equalityBranch = Branch::None;
    out.coverClass = einstein ? CoverClass::Flat : CoverClass::NotSaturated;
  } else if (d.s < 0 && detail::top_pairs_equal(d)) {
    out.saturated = true;
    out.equalityBranch = Branch::NonPositive;
    out.coverClass = einstein ? CoverClass::HyperbolicPlaneProduct : CoverClass::NotSaturated;
  } else if (d.s > 0 && detail::bottom_pairs_equal(d)) {
    out.saturated = true;
    out.equalityBranch = Branch::NonNegative;
    out.coverClass = einstein ? CoverClass::SphereProduct : CoverClass::NotSaturated;
  }
  return out;
}

/// Which saturated model an Einstein point with the given curvature sign is
/// consistent with. This is pointwise algebra only.
inline CoverClass classify_equality(const Decomposition& d, SignClass curvatureSign) {
  if (!d.is_einstein()) {
    throw Error(ErrorCode::NotEinstein, "traceless Ricci block is nonzero", d.ricBlock.norm());
  }
  if (curvatureSign == SignClass::Indefinite) {
    throw Error(ErrorCode::IndefiniteSign, "equality classification needs semi-definite curvature");
  }
  if (detail::flat_like(d)) return CoverClass::Flat;
  bool saturated = std::abs(detail::gl_defect_value(d)) <= tol::classification * d.scale();
  if (!saturated) return CoverClass::NotSaturated;
  if (curvatureSign == SignClass::NonNegative && detail::bottom_pairs_equal(d)) {
    return CoverClass::SphereProduct;
  }
  if (curvatureSign == SignClass::NonPositive && detail::top_pairs_equal(d)) {
    return CoverClass::HyperbolicPlaneProduct;
  }
  return CoverClass::NotSaturated;
}

struct CharDensities {
  double eulerDensity = 0.0;
  double signatureDensity = 0.0;
  std::optional<double> ratio;
  /// "p/q" when the ratio of the stored doubles has a short exact form.
  std::optional<std::string> ratioExact;
};

namespace detail {

inline Rational exact_norm_squared(const Mat3& w) {
  Rational sum = 0;
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) {
      Rational e = exact(w(i, j));
      sum += e * e;
    }
  return sum;
}

inline bool is_short(const Rational& r) {
  using boost::multiprecision::abs;
  static const boost::multiprecision::cpp_int limit("1000000000000000000");
  return abs(numerator(r)) < limit && denominator(r) < limit;
}

}  // namespace detail

/// Chern-Gauss-Bonnet and signature integrands of an Einstein point.
///
/// The euler/signature ratio is computed in exact rational arithmetic from
/// the stored block entries, so catalog inputs give exact values.
inline CharDensities char_densities(const Decomposition& d, double einsteinTolerance = tol::classification) {
  if (!d.is_einstein(einsteinTolerance)) {
    throw Error(ErrorCode::NotEinstein, "densities are only defined at Einstein points", d.ricBlock.norm());
  }
  constexpr double pi2 = boost::math::constants::pi_sqr<double>();
  double wp2 = d.wPlus.squaredNorm();
  double wm2 = d.wMinus.squaredNorm();
  double s2 = d.s * d.s / 24.0;

  CharDensities out;
  out.eulerDensity = (wp2 + wm2 + s2) / (8.0 * pi2);
  out.signatureDensity = (wp2 - wm2) / (12.0 * pi2);

  Rational p2 = detail::exact_norm_squared(d.wPlus);
  Rational m2 = detail::exact_norm_squared(d.wMinus);
  Rational s = exact(d.s);
  Rational euler = p2 + m2 + s * s / 24;
  Rational signature = p2 - m2;
  // a signature integrand at roundoff level carries no ratio
  if (signature != 0 && std::abs(wp2 - wm2) > tol::structural * std::max(1.0, wp2 + wm2 + s2)) {
    Rational ratio = Rational(3, 2) * euler / signature;
    out.ratio = static_cast<double>(ratio);
    if (detail::is_short(ratio)) out.ratioExact = ratio.str();
  }
  return out;
}

struct KahlerSignature {
  double density = 0.0;
  bool nonNegative = false;
  /// |W+|^2 - s^2/24
  double kahlerDefect = 0.0;
};

/// |W+|^2 - |W-|^2 for a point declared Kahler (Kahler form self-dual).
inline KahlerSignature kahler_signature_check(const Decomposition& d) {
  double wp2 = d.wPlus.squaredNorm();
  double target = d.s * d.s / 24.0;
  double scale = std::max(1.0, target);
  KahlerSignature out;
  out.kahlerDefect = wp2 - target;
  if (std::abs(out.kahlerDefect) > tol::classification * scale) {
    throw Error(ErrorCode::NotKahler, "|W+|^2 differs from s^2/24", out.kahlerDefect);
  }
  out.density = wp2 - d.wMinus.squaredNorm();
  out.nonNegative = out.density >= -tol::classification * scale;
  return out;
}

}  // namespace curv4
