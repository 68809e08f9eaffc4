#pragma once

// Sectional curvature of 2-planes and certification of its global sign.
//
// A unit decomposable 2-form is (psi+ + psi-)/sqrt(2) with psi+- unit vectors
// in the normalized SD and ASD bases, so sec = q/2 where
//   q(psi+, psi-) = <psi+ + psi-, R(psi+ + psi-)>
//                 = psi+^T A psi+ + 2 psi+^T B psi- + psi-^T C psi-
// for the blocks [[A, B], [B^T, C]] of R in the SD/ASD basis.

#include "curv4/core.hpp"
#include "curv4/curvops.hpp"
#include "curv4/twoform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <thread>
#include <utility>
#include <vector>

namespace curv4 {

inline double sec_of_plane(const CurvatureOperator& r, const Vec4& x, const Vec4& y) {
  double gram = x.squaredNorm() * y.squaredNorm() - x.dot(y) * x.dot(y);
  if (gram <= 1e-14 * x.squaredNorm() * y.squaredNorm()) {
    throw Error(ErrorCode::DegeneratePlane, "vectors are (nearly) parallel", gram);
  }
  TwoForm w = TwoForm::wedge(x, y);
  return r.apply(w, w) / gram;
}

namespace detail {

inline void require_unit(const Vec3& v, const char* name) {
  double n = v.norm();
  if (std::abs(n - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotUnit, std::string(name) + " is not a unit vector", n);
  }
}

struct Blocks {
  Mat3 a, b, c;

  explicit Blocks(const CurvatureOperator& r) {
    Mat6 m = r.sd_asd();
    m = 0.5 * (m + m.transpose());
    a = m.topLeftCorner<3, 3>();
    b = m.topRightCorner<3, 3>();
    c = m.bottomRightCorner<3, 3>();
  }

  double q(const Vec3& p, const Vec3& m) const {
    return p.dot(a * p) + 2.0 * p.dot(b * m) + m.dot(c * m);
  }
};

}  // namespace detail

inline double q_form(const CurvatureOperator& r, const Vec3& psiPlus, const Vec3& psiMinus) {
  detail::require_unit(psiPlus, "psiPlus");
  detail::require_unit(psiMinus, "psiMinus");
  return detail::Blocks(r).q(psiPlus, psiMinus);
}

/// Exact extremes of sec at an Einstein point:
///   s/12 + (lambda+ + lambda-)/2 <= sec <= s/12 + (nu+ + nu-)/2.
struct SecRange {
  double secMin = 0.0;
  double secMax = 0.0;
};

inline SecRange einstein_sec_range(const Decomposition& d, double einsteinTolerance = tol::classification) {
  if (!d.is_einstein(einsteinTolerance)) {
    throw Error(ErrorCode::NotEinstein, "exact sec range needs an Einstein point", d.ricBlock.norm());
  }
  return {d.s / 12.0 + 0.5 * (d.spectrumPlus.lambda + d.spectrumMinus.lambda),
          d.s / 12.0 + 0.5 * (d.spectrumPlus.nu + d.spectrumMinus.nu)};
}

/// Global maximizer of x^T C x + 2 b^T x over the unit sphere.
///
/// In the eigenbasis of C the stationary points satisfy (t - c_i) x_i = b_i,
/// and the maximum takes the largest multiplier t >= c_max, the root of
///   sum_i b_i^2 / (t - c_i)^2 = 1
/// in (c_max, c_max + |b|]. The root is bracketed and bisected. When b has
/// no component along the top eigenspace and the root degenerates to c_max,
/// the remaining length goes into the top eigenvector.
inline Vec3 sphere_quadratic_max(const Mat3& c, const Vec3& b) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(c);
  const Vec3& ev = es.eigenvalues();
  const Mat3& q = es.eigenvectors();
  Vec3 beta = q.transpose() * b;
  double bnorm = b.norm();
  double cmax = ev(2);
  double spread = std::max({1.0, std::abs(ev(0)), std::abs(ev(2))});

  if (bnorm <= 1e-300) return q.col(2);

  // hard case: top-eigenspace component of b vanishes
  double gapTol = 1e-12 * spread;
  Vec3 hard = Vec3::Zero();
  double topWeight = 0.0;
  bool topless = true;
  for (int i = 0; i < 3; ++i) {
    if (cmax - ev(i) <= gapTol) {
      topWeight += beta(i) * beta(i);
    } else {
      hard(i) = beta(i) / (cmax - ev(i));
    }
  }
  if (topWeight > (1e-14 * bnorm) * (1e-14 * bnorm)) topless = false;
  if (topless && hard.squaredNorm() <= 1.0) {
    double rest = std::sqrt(std::max(0.0, 1.0 - hard.squaredNorm()));
    Vec3 x = q * hard + rest * q.col(2);
    return x.normalized();
  }

  auto secular = [&](double t) {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      double gap = t - ev(i);
      sum += beta(i) * beta(i) / (gap * gap);
    }
    return sum;
  };
  double lo = cmax;
  double hi = cmax + bnorm;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (secular(mid) > 1.0) lo = mid; else hi = mid;
  }
  Vec3 y;
  for (int i = 0; i < 3; ++i) {
    double gap = hi - ev(i);
    y(i) = gap > 0.0 ? beta(i) / gap : (beta(i) >= 0 ? 1.0 : -1.0);
  }
  return (q * y).normalized();
}

struct PlaneWitness {
  Vec3 psiPlus = Vec3::UnitX();
  Vec3 psiMinus = Vec3::UnitX();
  double qValue = 0.0;
  double secValue = 0.0;

  TwoForm unit_form() const { return TwoForm::from_sd_asd(psiPlus, psiMinus) * (1.0 / std::sqrt(2.0)); }
};

enum class Verdict { NonNegative, NonPositive, Indefinite, Inconclusive };
enum class Method { EinsteinExact, AlternatingTRS };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::NonNegative: return "NonNegative";
    case Verdict::NonPositive: return "NonPositive";
    case Verdict::Indefinite: return "Indefinite";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "";
}

constexpr std::string_view to_string(Method m) {
  return m == Method::EinsteinExact ? "EinsteinExact" : "AlternatingTRS";
}

struct SecSignCertificate {
  double qMaxLower = 0.0;
  double qMaxUpper = 0.0;
  double qMinLower = 0.0;
  double qMinUpper = 0.0;
  PlaneWitness maxWitness;
  PlaneWitness minWitness;
  Verdict verdict = Verdict::Inconclusive;
  Method method = Method::EinsteinExact;
  double tolerance = 0.0;

  double secMin() const { return 0.5 * qMinUpper; }
  double secMax() const { return 0.5 * qMaxLower; }
};

struct CertifyConfig {
  int restarts = 8;
  int gridSize = 64;
  std::uint64_t seed = 0;
  std::optional<double> tolerance;
  /// Worker threads for the start schedule; the result does not depend on it.
  int threads = 1;
  /// Skip the Einstein shortcut.
  bool forceIterative = false;
  int maxSweeps = 200;
  double stallThreshold = 1e-13;
};

namespace detail {

inline PlaneWitness make_witness(const CurvatureOperator& r, const Vec3& p, const Vec3& m) {
  PlaneWitness w;
  w.psiPlus = p;
  w.psiMinus = m;
  w.qValue = q_form(r, p, m);
  w.secValue = 0.5 * w.qValue;
  return w;
}

inline std::vector<Vec3> fibonacci_sphere(int n) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(std::max(n, 0)));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - (2.0 * i + 1.0) / n;
    double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * i;
    pts.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return pts;
}

// mt19937_64 output is fixed by the standard; distributions are not, so map bits by hand.
inline std::vector<Vec3> seeded_sphere(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i) {
    double z = 2.0 * unit() - 1.0;
    double phi = 2.0 * std::numbers::pi * unit();
    double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    pts.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return pts;
}

struct Candidate {
  Vec3 p, m;
  double q;
};

inline bool lex_less(const Candidate& x, const Candidate& y) {
  for (int i = 0; i < 3; ++i)
    if (x.p(i) != y.p(i)) return x.p(i) < y.p(i);
  for (int i = 0; i < 3; ++i)
    if (x.m(i) != y.m(i)) return x.m(i) < y.m(i);
  return false;
}

inline bool better(const Candidate& x, const Candidate& y) {
  if (x.q != y.q) return x.q > y.q;
  return lex_less(x, y);
}

inline Candidate alternate(const Blocks& blk, const Vec3& start, const CertifyConfig& cfg, double scale) {
  Vec3 p = start.normalized();
  Vec3 m = sphere_quadratic_max(blk.c, blk.b.transpose() * p);
  p = sphere_quadratic_max(blk.a, blk.b * m);
  double q = blk.q(p, m);
  for (int sweep = 1; sweep < cfg.maxSweeps; ++sweep) {
    Vec3 m2 = sphere_quadratic_max(blk.c, blk.b.transpose() * p);
    Vec3 p2 = sphere_quadratic_max(blk.a, blk.b * m2);
    double q2 = blk.q(p2, m2);
    if (q2 < q) break;  // rounding-level regression
    bool stalled = q2 - q < cfg.stallThreshold * scale;
    p = p2;
    m = m2;
    q = q2;
    if (stalled) break;
  }
  return {p, m, q};
}

/// Best witness over the start schedule plus an upper bound on max q.
struct MaxSide {
  Candidate best;
  double upper;
};

inline MaxSide maximize(const CurvatureOperator& r, const CertifyConfig& cfg) {
  Blocks blk(r);
  double scale = std::max(1.0, r.norm());
  std::vector<Vec3> starts = fibonacci_sphere(cfg.gridSize);
  std::vector<Vec3> extra = seeded_sphere(cfg.restarts, cfg.seed);
  starts.insert(starts.end(), extra.begin(), extra.end());
  if (starts.empty()) starts.push_back(Vec3::UnitX());

  std::vector<Candidate> results(starts.size());
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < starts.size(); i += step) results[i] = alternate(blk, starts[i], cfg, scale);
  };
  std::size_t nthreads = static_cast<std::size_t>(std::max(1, cfg.threads));
  if (nthreads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(work, t, nthreads);
    for (auto& th : pool) th.join();
  }
  Candidate best = results.front();
  for (const auto& c : results)
    if (better(c, best)) best = c;

  Eigen::SelfAdjointEigenSolver<Mat3> ea(blk.a, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Mat3> ec(blk.c, Eigen::EigenvaluesOnly);
  Eigen::JacobiSVD<Mat3> sb(blk.b);
  double blockBound = ea.eigenvalues()(2) + ec.eigenvalues()(2) + 2.0 * sb.singularValues()(0);
  // |psi+ + psi-|^2 = 2, so 2 lambda_max(R) also bounds q
  Mat6 full = r.sd_asd();
  Eigen::SelfAdjointEigenSolver<Mat6> ef(0.5 * (full + full.transpose()), Eigen::EigenvaluesOnly);
  double upper = std::min(blockBound, 2.0 * ef.eigenvalues()(5));
  return {best, std::max(upper, best.q)};
}

inline Verdict verdict_for(double qMaxLower, double qMaxUpper, double qMinLower, double qMinUpper, double tol) {
  if (qMinLower >= -tol) return Verdict::NonNegative;
  if (qMaxUpper <= tol) return Verdict::NonPositive;
  if (qMaxLower > tol && qMinUpper < -tol) return Verdict::Indefinite;
  return Verdict::Inconclusive;
}

}  // namespace detail

/// Certified interval for the extremes of q (= 2 sec) over all 2-planes.
///
/// Einstein points use the exact eigenvalue formula. Otherwise the best
/// witness from alternating exact sphere maximizations gives the inner
/// bounds, and min(lambda_max(A) + lambda_max(C) + 2 sigma_max(B),
/// 2 lambda_max(R)) the outer ones; the minimum is handled as the maximum of
/// -R. A zero-curvature operator is reported NonNegative.
inline SecSignCertificate certify_sec_sign(const CurvatureOperator& r, const CertifyConfig& cfg = {}) {
  Decomposition d = decompose(r);
  SecSignCertificate cert;
  cert.tolerance = cfg.tolerance.value_or(tol::sign * std::max(1.0, r.norm()));

  if (!cfg.forceIterative && d.is_einstein()) {
    detail::Blocks blk(r);
    Eigen::SelfAdjointEigenSolver<Mat3> ea(blk.a);
    Eigen::SelfAdjointEigenSolver<Mat3> ec(blk.c);
    SecRange range = einstein_sec_range(d);
    cert.method = Method::EinsteinExact;
    cert.maxWitness = detail::make_witness(r, ea.eigenvectors().col(2), ec.eigenvectors().col(2));
    cert.minWitness = detail::make_witness(r, ea.eigenvectors().col(0), ec.eigenvectors().col(0));
    cert.qMaxLower = cert.qMaxUpper = 2.0 * range.secMax;
    cert.qMinLower = cert.qMinUpper = 2.0 * range.secMin;
  } else {
    cert.method = Method::AlternatingTRS;
    detail::MaxSide top = detail::maximize(r, cfg);
    detail::MaxSide bottom = detail::maximize(r.scaled(-1.0), cfg);
    cert.maxWitness = detail::make_witness(r, top.best.p, top.best.m);
    cert.minWitness = detail::make_witness(r, bottom.best.p, bottom.best.m);
    cert.qMaxLower = top.best.q;
    cert.qMaxUpper = top.upper;
    cert.qMinUpper = -bottom.best.q;
    cert.qMinLower = -bottom.upper;
  }
  cert.verdict = detail::verdict_for(cert.qMaxLower, cert.qMaxUpper, cert.qMinLower, cert.qMinUpper, cert.tolerance);
  return cert;
}

}  // namespace curv4
