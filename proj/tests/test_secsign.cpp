#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace curv4;

namespace {

CurvatureOperator hyperbolic_product() {
  Mat6 m = Mat6::Zero();
  m(0, 0) = m(5, 5) = -1.0;
  return {m, Basis::Coordinate};
}

CurvatureOperator surface_product(double a, double b) {
  Mat6 m = Mat6::Zero();
  m(0, 0) = a;
  m(5, 5) = b;
  return {m, Basis::Coordinate};
}

Vec3 random_unit(std::mt19937_64& gen) {
  std::normal_distribution<double> n;
  return Vec3(n(gen), n(gen), n(gen)).normalized();
}

}  // namespace

TEST(SecOfPlane, Examples) {
  EXPECT_EQ(sec_of_plane(CurvatureOperator::identity(), Vec4::Unit(0), Vec4::Unit(1)), 1.0);
  EXPECT_EQ(sec_of_plane(hyperbolic_product(), Vec4::Unit(0), Vec4::Unit(2)), 0.0);
  EXPECT_EQ(sec_of_plane(hyperbolic_product(), Vec4::Unit(0), Vec4::Unit(1)), -1.0);
}

TEST(SecOfPlane, IndependentOfPlaneBasis) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 200; ++trial) {
    CurvatureOperator r = oracle::random_admissible(gen);
    Vec4 x(n(gen), n(gen), n(gen), n(gen)), y(n(gen), n(gen), n(gen), n(gen));
    double a = oracle::uniform(gen, -2, 2), b = oracle::uniform(gen, 0.5, 2), c = oracle::uniform(gen, -2, 2);
    EXPECT_NEAR(sec_of_plane(r, x, y), sec_of_plane(r, b * x + a * y, c * x - y), 1e-9);
  }
}

TEST(SecOfPlane, Degenerate) {
  try {
    sec_of_plane(CurvatureOperator::identity(), Vec4::Unit(0), 2.0 * Vec4::Unit(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegeneratePlane);
  }
}

TEST(QForm, Examples) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 20; ++trial)
    EXPECT_NEAR(q_form(CurvatureOperator::identity(), random_unit(gen), random_unit(gen)), 2.0, 1e-14);
  EXPECT_NEAR(q_form(hyperbolic_product(), Vec3::UnitX(), Vec3::UnitX()), -2.0, 1e-15);
  try {
    q_form(CurvatureOperator::identity(), Vec3(1, 1, 0), Vec3::UnitX());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnit);
  }
}

TEST(QForm, TopEigenvectorsGiveTheEinsteinQuantity) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    CurvatureOperator r = oracle::random_einstein(gen);
    Decomposition d = decompose(r);
    Eigen::SelfAdjointEigenSolver<Mat3> ep(d.wPlus), em(d.wMinus);
    double q = q_form(r, ep.eigenvectors().col(2), em.eigenvectors().col(2));
    EXPECT_NEAR(q, d.s / 6.0 + d.spectrumPlus.nu + d.spectrumMinus.nu, 1e-12);
  }
}

TEST(QForm, EqualsTwiceSecOnThePlane) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 1000; ++trial) {
    CurvatureOperator r = oracle::random_admissible(gen);
    Vec3 p = random_unit(gen), m = random_unit(gen);
    TwoForm w = TwoForm::from_sd_asd(p, m) * (1.0 / std::sqrt(2.0));
    ASSERT_TRUE(is_decomposable(w));
    auto [x, y] = plane_of(w);
    EXPECT_NEAR(q_form(r, p, m), 2.0 * sec_of_plane(r, x, y), 1e-10);
  }
}

TEST(EinsteinSecRange, Examples) {
  SecRange s4 = einstein_sec_range(decompose(CurvatureOperator::identity()));
  EXPECT_EQ(s4.secMin, 1.0);
  EXPECT_EQ(s4.secMax, 1.0);
  SecRange h = einstein_sec_range(decompose(hyperbolic_product()));
  EXPECT_NEAR(h.secMin, -1.0, 1e-15);
  EXPECT_NEAR(h.secMax, 0.0, 1e-15);
  SecRange fs = einstein_sec_range(decompose(catalog("fubiniStudy").op));
  EXPECT_NEAR(fs.secMin, 1.0, 1e-14);
  EXPECT_NEAR(fs.secMax, 4.0, 1e-14);
  try {
    einstein_sec_range(decompose(surface_product(1, 2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotEinstein);
  }
}

TEST(EinsteinSecRange, BracketsSampledPlanes) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    CurvatureOperator r = oracle::random_einstein(gen);
    SecRange range = einstein_sec_range(decompose(r));
    auto [lo, hi] = oracle::sampled_sec_range(r, gen, 2000);
    EXPECT_GE(lo, range.secMin - 1e-12);
    EXPECT_LE(hi, range.secMax + 1e-12);
  }
}

TEST(SphereQuadraticMax, MatchesEigenvalueOracle) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 500; ++trial) {
    Mat3 c = oracle::random_symmetric(gen, 2.0);
    Vec3 b = trial % 5 == 0 ? Vec3::Zero() : Vec3(oracle::uniform(gen, -1, 1), oracle::uniform(gen, -1, 1), 0.0);
    Vec3 x = sphere_quadratic_max(c, b);
    EXPECT_NEAR(x.norm(), 1.0, 1e-14);
    EXPECT_NEAR(x.dot(c * x) + 2.0 * b.dot(x), oracle::sphere_quadratic_value(c, b), 1e-9);
  }
}

TEST(SphereQuadraticMax, HardCase) {
  // b orthogonal to the top eigenvector and small: the maximizer tilts into it
  Mat3 c = Vec3(-1.0, 0.0, 2.0).asDiagonal();
  Vec3 b(0.3, 0.0, 0.0);
  Vec3 x = sphere_quadratic_max(c, b);
  EXPECT_NEAR(x.dot(c * x) + 2.0 * b.dot(x), oracle::sphere_quadratic_value(c, b), 1e-12);
  EXPECT_NEAR(x(0), 0.1, 1e-12);
}

TEST(Certify, Identity) {
  SecSignCertificate c = certify_sec_sign(CurvatureOperator::identity());
  EXPECT_EQ(c.verdict, Verdict::NonNegative);
  EXPECT_EQ(c.method, Method::EinsteinExact);
  EXPECT_EQ(c.qMinLower, 2.0);
  EXPECT_EQ(c.qMaxUpper, 2.0);
}

TEST(Certify, SurfaceProductOneTwo) {
  SecSignCertificate c = certify_sec_sign(surface_product(1, 2));
  EXPECT_EQ(c.method, Method::AlternatingTRS);
  EXPECT_NEAR(c.qMaxLower, 4.0, 1e-12);
  EXPECT_NEAR(c.qMaxUpper, 4.0, 1e-12);
  EXPECT_NEAR(c.secMax(), 2.0, 1e-12);
  EXPECT_NEAR(c.maxWitness.psiPlus.cwiseAbs()(0), 1.0, 1e-9);
  EXPECT_NEAR(c.maxWitness.psiPlus(0), -c.maxWitness.psiMinus(0), 1e-9);
  EXPECT_NEAR(c.qMinUpper, 0.0, 1e-9);
  EXPECT_EQ(c.verdict, Verdict::NonNegative);
}

TEST(Certify, HyperbolicProduct) {
  SecSignCertificate c = certify_sec_sign(hyperbolic_product());
  EXPECT_EQ(c.verdict, Verdict::NonPositive);
  EXPECT_NEAR(c.secMin(), -1.0, 1e-15);
  EXPECT_NEAR(c.secMax(), 0.0, 1e-15);
}

TEST(Certify, IndefiniteAndInvariants) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 30; ++trial) {
    CurvatureOperator r = oracle::random_admissible(gen);
    CertifyConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(trial);
    SecSignCertificate c = certify_sec_sign(r, cfg);
    EXPECT_LE(c.qMaxLower, c.qMaxUpper + 1e-12);
    EXPECT_LE(c.qMinLower, c.qMinUpper + 1e-12);
    if (c.verdict == Verdict::Indefinite) {
      EXPECT_GT(c.qMaxLower, c.tolerance);
      EXPECT_LT(c.qMinUpper, -c.tolerance);
    }
    if (c.verdict == Verdict::NonNegative) {
      EXPECT_GE(c.qMinLower, -c.tolerance);
    }
    // witnesses reproduce their value
    for (const PlaneWitness& w : {c.maxWitness, c.minWitness}) {
      EXPECT_NEAR(w.psiPlus.norm(), 1.0, 1e-12);
      EXPECT_NEAR(w.psiMinus.norm(), 1.0, 1e-12);
      EXPECT_NEAR(q_form(r, w.psiPlus, w.psiMinus), w.qValue, 1e-12);
      EXPECT_NEAR(w.secValue, 0.5 * w.qValue, 1e-15);
      EXPECT_TRUE(is_decomposable(w.unit_form()));
    }
    // negation symmetry
    SecSignCertificate n = certify_sec_sign(r.scaled(-1.0), cfg);
    EXPECT_NEAR(n.qMaxLower, -c.qMinUpper, 1e-12);
    EXPECT_NEAR(n.qMaxUpper, -c.qMinLower, 1e-12);
    EXPECT_NEAR(n.qMinLower, -c.qMaxUpper, 1e-12);
    EXPECT_NEAR(n.qMinUpper, -c.qMaxLower, 1e-12);
  }
}

TEST(Certify, IterativeAgreesWithEinsteinRange) {
  std::mt19937_64 gen(8);
  CertifyConfig cfg;
  cfg.forceIterative = true;
  for (int trial = 0; trial < 100; ++trial) {
    CurvatureOperator r = oracle::random_einstein(gen);
    SecRange range = einstein_sec_range(decompose(r));
    SecSignCertificate c = certify_sec_sign(r, cfg);
    EXPECT_NEAR(c.qMaxLower, 2.0 * range.secMax, 1e-6);
    EXPECT_NEAR(c.qMinUpper, 2.0 * range.secMin, 1e-6);
  }
}

TEST(Certify, AgreesWithGridOracle) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 100; ++trial) {
    CurvatureOperator r = oracle::random_admissible(gen);
    r = r.scaled(1.0 / oracle::spectral_norm(r.coordinate()));
    SecSignCertificate c = certify_sec_sign(r);
    EXPECT_NEAR(c.qMaxLower, oracle::grid_q_max(r), 1e-6) << "trial " << trial;
    EXPECT_NEAR(c.qMinUpper, oracle::grid_q_min(r), 1e-6) << "trial " << trial;
  }
}

TEST(Certify, ThreadCountDoesNotChangeTheResult) {
  std::mt19937_64 gen(10);
  for (int trial = 0; trial < 10; ++trial) {
    CurvatureOperator r = oracle::random_admissible(gen);
    CertifyConfig one, four;
    four.threads = 4;
    SecSignCertificate a = certify_sec_sign(r, one), b = certify_sec_sign(r, four);
    EXPECT_EQ(a.qMaxLower, b.qMaxLower);
    EXPECT_EQ(a.qMinUpper, b.qMinUpper);
    EXPECT_EQ(a.maxWitness.psiPlus, b.maxWitness.psiPlus);
    EXPECT_EQ(a.minWitness.psiMinus, b.minWitness.psiMinus);
  }
}

TEST(Certify, PropagatesValidation) {
  Mat6 m = Mat6::Zero();
  m(0, 1) = 1.0;
  try {
    certify_sec_sign({m, Basis::Coordinate});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
}
