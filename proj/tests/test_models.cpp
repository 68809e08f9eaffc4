#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace curv4;

TEST(Catalog, ClosedFormOperators) {
  EXPECT_EQ(catalog("flat").op.coordinate(), Mat6::Zero());
  EXPECT_EQ(catalog("sphere4").op.coordinate(), Mat6::Identity());
  EXPECT_EQ(catalog("sphere4", {{"r", 2.0}}).op.coordinate(), 0.25 * Mat6::Identity());
  EXPECT_EQ(catalog("hyperbolic4", {{"r", 0.5}}).op.coordinate(), -4.0 * Mat6::Identity());
  Mat6 sp = Mat6::Zero();
  sp(0, 0) = 3.0;
  sp(5, 5) = -1.0;
  EXPECT_EQ(catalog("surfaceProduct", {{"a", 3.0}, {"b", -1.0}}).op.coordinate(), sp);
}

TEST(Catalog, SurfaceProductFlags) {
  ModelSpec h = catalog("surfaceProduct", {{"a", -1.0}, {"b", -1.0}});
  EXPECT_TRUE(h.flags.einstein);
  EXPECT_EQ(h.flags.secSign, SecSign::NonPositive);
  ASSERT_TRUE(h.knownCover);
  EXPECT_EQ(*h.knownCover, CoverClass::HyperbolicPlaneProduct);

  ModelSpec m = catalog("surfaceProduct", {{"a", 1.0}, {"b", 2.0}});
  EXPECT_FALSE(m.flags.einstein);
  Decomposition d = decompose(m.op);
  EXPECT_NEAR(d.ricBlock(0, 0), -0.5, 1e-15);
  EXPECT_NEAR(d.ricBlock.norm(), 0.5, 1e-15);
}

TEST(Catalog, SphereFlags) {
  ModelSpec s = catalog("sphere4");
  EXPECT_TRUE(s.flags.einstein);
  EXPECT_EQ(s.flags.secSign, SecSign::NonNegative);
  SecSignCertificate c = certify_sec_sign(s.op);
  EXPECT_EQ(c.secMin(), 1.0);
  EXPECT_EQ(c.secMax(), 1.0);
  EXPECT_EQ(catalog("flat").flags.secSign, SecSign::Zero);
  EXPECT_EQ(catalog("hyperbolic4").flags.secSign, SecSign::NonPositive);
}

TEST(Catalog, KahlerModels) {
  for (const char* name : {"fubiniStudy", "bergman"}) {
    ModelSpec k = catalog(name);
    Decomposition d = decompose(k.op);
    EXPECT_TRUE(k.flags.einstein);
    EXPECT_TRUE(k.flags.kahler);
    EXPECT_EQ(d.wPlus.squaredNorm(), d.s * d.s / 24.0) << name;
    EXPECT_EQ(d.wMinus.norm(), 0.0);
  }
  Decomposition fs = decompose(catalog("fubiniStudy").op);
  EXPECT_EQ(fs.s, 24.0);
  EXPECT_NEAR(fs.spectrumPlus.lambda, -2.0, 1e-14);
  EXPECT_NEAR(fs.spectrumPlus.nu, 4.0, 1e-14);
  Decomposition b = decompose(catalog("bergman").op);
  EXPECT_EQ(b.s, -24.0);
  EXPECT_NEAR(b.spectrumPlus.lambda, -4.0, 1e-14);
  EXPECT_NEAR(b.spectrumPlus.nu, 2.0, 1e-14);
  EXPECT_EQ(catalog("fubiniStudy").flags.secSign, SecSign::NonNegative);
  EXPECT_EQ(catalog("bergman").flags.secSign, SecSign::NonPositive);
}

TEST(Catalog, SaturatingModelsClassifyToTheirCover) {
  for (const std::string& name : model_names()) {
    ModelSpec m = catalog(name);
    GLReport g = gl_defect(decompose(m.op));
    if (m.flags.einstein && g.saturated) {
      ASSERT_TRUE(m.knownCover) << name;
      EXPECT_EQ(g.coverClass, *m.knownCover) << name;
    }
  }
  EXPECT_EQ(catalog("surfaceProduct").knownCover, CoverClass::SphereProduct);
  EXPECT_EQ(catalog("flat").knownCover, CoverClass::Flat);
  EXPECT_FALSE(catalog("sphere4").knownCover);
  EXPECT_FALSE(catalog("fubiniStudy").knownCover);
}

TEST(Catalog, SurfaceProductSecExtremes) {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{1, 2}, {-1, 3}, {-2, -0.5}, {0.5, 0.5}}) {
    ModelSpec m = catalog("surfaceProduct", {{"a", a}, {"b", b}});
    SecSignCertificate c = certify_sec_sign(m.op);
    EXPECT_NEAR(c.secMin(), std::min({a, b, 0.0}), 1e-9);
    EXPECT_NEAR(c.secMax(), std::max({a, b, 0.0}), 1e-9);
  }
}

TEST(Catalog, Errors) {
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code([] { catalog("torus"); }), ErrorCode::UnknownModel);
  EXPECT_EQ(code([] { catalog("sphere4", {{"r", -1.0}}); }), ErrorCode::BadParameter);
  EXPECT_EQ(code([] { catalog("fubiniStudy", {{"s", -24.0}}); }), ErrorCode::BadParameter);
  EXPECT_EQ(code([] { catalog("bergman", {{"s", 24.0}}); }), ErrorCode::BadParameter);
  EXPECT_EQ(code([] { catalog("flat", {{"r", 1.0}}); }), ErrorCode::BadParameter);
  EXPECT_EQ(code([] { chart_for("klein"); }), ErrorCode::UnknownChart);
  EXPECT_EQ(code([] { chart_for("sphereProductChart", {{"a", -1.0}}); }), ErrorCode::BadParameter);
}

TEST(Charts, MetricsAtReferencePoints) {
  EXPECT_EQ(chart_for("flatChart").at(Vec4(3, 1, 4, 1)), Mat4::Identity());
  EXPECT_LE((chart_for("sphereProductChart").at(Vec4(M_PI / 2, 0, M_PI / 2, 0)) - Mat4::Identity()).norm(), 1e-15);
  EXPECT_EQ(chart_for("hyperbolic4HalfSpace").at(Vec4(0, 0, 0, 1)), Mat4::Identity());
  PointCurvature pc = curvature_at(chart_for("hyperbolic4HalfSpace"), Vec4(0, 0, 0, 1));
  EXPECT_LE((pc.op.coordinate() - catalog("hyperbolic4").op.coordinate()).cwiseAbs().maxCoeff(), 1e-6);
}
