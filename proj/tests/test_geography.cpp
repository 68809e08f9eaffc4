#include "curv4/geography.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace curv4;

TEST(Geography, BallQuotientLine) {
  GeoReport r = report({3, 1});
  EXPECT_TRUE(r.bmy);
  EXPECT_TRUE(r.bmyEquality);
  EXPECT_EQ(r.c1sq, 9);
}

TEST(Geography, StrictFifteenEighths) {
  GeoReport r = report({15, 8});
  EXPECT_FALSE(r.einsteinNonPosStrict);
  EXPECT_TRUE(r.gromovLuck);
  EXPECT_TRUE(report({16, 8}).einsteinNonPosStrict);
  EXPECT_FALSE(report({15, -8}).einsteinNonPosStrict);
}

TEST(Geography, ToddParity) {
  GeoReport r = report({5, -1});
  EXPECT_EQ(r.c1sq, 7);
  EXPECT_FALSE(r.bothOrientationsComplexPossible);
  EXPECT_TRUE(report({4, 0}).bothOrientationsComplexPossible);
}

TEST(Geography, Invariants) {
  for (std::int64_t chi = -20; chi <= 40; ++chi) {
    for (std::int64_t tau = -40; tau <= 40; ++tau) {
      GeoReport r = report({chi, tau});
      GeoReport f = report(GeoPoint{chi, tau}.flipped());
      EXPECT_EQ(r.gromovLuck, f.gromovLuck);
      EXPECT_EQ(r.einsteinNonPosStrict, f.einsteinNonPosStrict);
      EXPECT_EQ(f.c1sq - r.c1sq, -6 * tau);
      if (r.bmyEquality) EXPECT_TRUE(r.bmy);
      if (chi > 0 && r.einsteinNonPosStrict) EXPECT_TRUE(r.gromovLuck);
      EXPECT_EQ(r.bothOrientationsComplexPossible, tau % 2 == 0);
      EXPECT_EQ(r.bothOrientationsComplexPossible, r.c1sq % 2 == 0);
    }
  }
}

TEST(Geography, LatticeObstruction) {
  auto o = self_dual_lattice_obstruction(true);
  ASSERT_TRUE(o);
  EXPECT_EQ(o->tau, Rational(16, 7));
  EXPECT_FALSE(o->integral);
  // both lines give chi = 30/7
  EXPECT_EQ(o->chi, Rational(30, 7));
  EXPECT_EQ(2 + o->tau, Rational(30, 7));
  EXPECT_EQ(Rational(15, 8) * o->tau, Rational(30, 7));
  EXPECT_FALSE(self_dual_lattice_obstruction(false));
}

TEST(Scan, ZeroGivesOneRow) {
  std::vector<GeoReport> rows = scan(0);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].point, (GeoPoint{0, 0}));
  EXPECT_TRUE(rows[0].gromovLuck);
}

TEST(Scan, RowsForFour) {
  std::vector<GeoReport> rows = scan(4);
  EXPECT_EQ(rows.size(), 25u);  // sum of 2 chi + 1
  EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end(),
                             [](const GeoReport& a, const GeoReport& b) { return a.point < b.point; }));
  auto find = [&](std::int64_t chi, std::int64_t tau) {
    for (const GeoReport& r : rows)
      if (r.point == GeoPoint{chi, tau}) return r;
    ADD_FAILURE() << "missing row";
    return GeoReport{};
  };
  EXPECT_TRUE(find(4, 2).einsteinNonPosStrict);
  EXPECT_TRUE(find(3, 3).gromovLuck);
  EXPECT_FALSE(find(3, 3).bmy);
}

TEST(Scan, Csv) {
  std::string csv = scan_csv(1);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "chi,tau,gromov_luck,einstein_nonpos_strict,bmy,bmy_equality,c1sq,both_orientations_complex");
  std::getline(in, line);
  EXPECT_EQ(line, "0,0,true,false,true,true,0,true");
  EXPECT_EQ(csv, scan_csv(1));
  EXPECT_THROW(scan(-1), Error);
}
