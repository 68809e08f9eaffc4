#pragma once

// 2-forms on an oriented orthonormal 4-frame.
//
// Coordinate basis order: e12, e13, e14, e23, e24, e34.
// Self-dual basis:      (e12 + e34), (e13 - e24), (e14 + e23), each / sqrt(2).
// Anti-self-dual basis: (e12 - e34), (e13 + e24), (e14 - e23), each / sqrt(2).

#include "curv4/core.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace curv4 {

/// Unnormalized change of basis: column k is sqrt(2) times the k-th SD/ASD
/// basis vector in coordinates. Entries are 0 and +-1, so U^T M U / 2 is
/// exact for dyadic inputs.
inline const Mat6& sd_asd_columns() {
  static const Mat6 u = [] {
    Mat6 m = Mat6::Zero();
    // self-dual
    m(0, 0) = 1;  m(5, 0) = 1;
    m(1, 1) = 1;  m(4, 1) = -1;
    m(2, 2) = 1;  m(3, 2) = 1;
    // anti-self-dual
    m(0, 3) = 1;  m(5, 3) = -1;
    m(1, 4) = 1;  m(4, 4) = 1;
    m(2, 5) = 1;  m(3, 5) = -1;
    return m;
  }();
  return u;
}

/// Coordinate-basis matrix -> SD/ASD-basis matrix.
inline Mat6 to_sd_asd(const Mat6& coordinate) {
  const Mat6& u = sd_asd_columns();
  return 0.5 * (u.transpose() * coordinate * u);
}

/// SD/ASD-basis matrix -> coordinate-basis matrix.
inline Mat6 to_coordinate(const Mat6& sd_asd) {
  const Mat6& u = sd_asd_columns();
  return 0.5 * (u * sd_asd * u.transpose());
}

/// Position of e_i ^ e_j (i < j, zero based) in the coordinate basis.
constexpr int pair_index(int i, int j) {
  constexpr std::array<std::array<int, 4>, 4> table{{
      {-1, 0, 1, 2},
      {0, -1, 3, 4},
      {1, 3, -1, 5},
      {2, 4, 5, -1},
  }};
  return table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

inline constexpr std::array<std::pair<int, int>, 6> kPairs{{
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

class TwoForm {
 public:
  TwoForm() : c_(Vec6::Zero()) {}
  explicit TwoForm(const Vec6& coefficients) : c_(coefficients) {}

  static TwoForm basis(int index) {
    Vec6 v = Vec6::Zero();
    v(index) = 1.0;
    return TwoForm(v);
  }

  /// X ^ Y.
  static TwoForm wedge(const Vec4& x, const Vec4& y) {
    Vec6 v;
    for (std::size_t k = 0; k < kPairs.size(); ++k) {
      auto [i, j] = kPairs[k];
      v(static_cast<Eigen::Index>(k)) = x(i) * y(j) - x(j) * y(i);
    }
    return TwoForm(v);
  }

  /// (psi+ + psi-) from unit coordinates in the SD and ASD bases.
  static TwoForm from_sd_asd(const Vec3& plus, const Vec3& minus) {
    Vec6 z;
    z << plus, minus;
    return TwoForm(sd_asd_columns() * z / std::sqrt(2.0));
  }

  const Vec6& coefficients() const { return c_; }
  double operator[](int k) const { return c_(k); }

  double norm_squared() const { return c_.squaredNorm(); }
  double norm() const { return c_.norm(); }

  TwoForm hodge() const {
    Vec6 s;
    s << c_(5), -c_(4), c_(3), c_(2), -c_(1), c_(0);
    return TwoForm(s);
  }

  /// w12 w34 - w13 w24 + w14 w23; zero iff the form is decomposable.
  double plucker() const { return c_(0) * c_(5) - c_(1) * c_(4) + c_(2) * c_(3); }

  /// Coordinates in the normalized SD basis / ASD basis.
  Vec3 sd_coordinates() const { return (sd_asd_columns().transpose() * c_).head<3>() / std::sqrt(2.0); }
  Vec3 asd_coordinates() const { return (sd_asd_columns().transpose() * c_).tail<3>() / std::sqrt(2.0); }

  /// Antisymmetric 4x4 matrix with entries w_ab.
  Mat4 as_matrix() const {
    Mat4 m = Mat4::Zero();
    for (std::size_t k = 0; k < kPairs.size(); ++k) {
      auto [i, j] = kPairs[k];
      m(i, j) = c_(static_cast<Eigen::Index>(k));
      m(j, i) = -c_(static_cast<Eigen::Index>(k));
    }
    return m;
  }

  TwoForm operator+(const TwoForm& o) const { return TwoForm(c_ + o.c_); }
  TwoForm operator-(const TwoForm& o) const { return TwoForm(c_ - o.c_); }
  TwoForm operator*(double a) const { return TwoForm(a * c_); }
  double dot(const TwoForm& o) const { return c_.dot(o.c_); }

 private:
  Vec6 c_;
};

struct SdSplit {
  TwoForm selfDual;
  TwoForm antiSelfDual;
};

inline SdSplit sd_projectors(const TwoForm& w) {
  TwoForm star = w.hodge();
  return {(w + star) * 0.5, (w - star) * 0.5};
}

/// Decomposability: the Plucker quantity and the SD/ASD norm gap must both vanish.
inline bool is_decomposable(const TwoForm& w, double tolerance = tol::structural) {
  double scale = std::max(1.0, w.norm_squared());
  SdSplit parts = sd_projectors(w);
  double gap = parts.selfDual.norm_squared() - parts.antiSelfDual.norm_squared();
  return std::abs(w.plucker()) <= tolerance * scale && std::abs(gap) <= tolerance * scale;
}

/// Orthonormal pair spanning the plane of a decomposable form.
inline std::pair<Vec4, Vec4> plane_of(const TwoForm& w) {
  Eigen::JacobiSVD<Mat4> svd(w.as_matrix(), Eigen::ComputeFullU);
  if (svd.singularValues()(0) <= 0.0) {
    throw Error(ErrorCode::DegeneratePlane, "zero 2-form has no plane");
  }
  return {svd.matrixU().col(0), svd.matrixU().col(1)};
}

}  // namespace curv4
