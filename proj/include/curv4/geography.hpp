#pragma once

// Necessary conditions on the Euler characteristic and signature of a closed
// 4-manifold. Everything here is exact; no floating point is involved.

#include "curv4/core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace curv4 {

using BigInt = boost::multiprecision::cpp_int;

struct GeoPoint {
  std::int64_t chi = 0;
  std::int64_t tau = 0;

  GeoPoint flipped() const { return {chi, -tau}; }
  auto operator<=>(const GeoPoint&) const = default;
};

struct GeoReport {
  GeoPoint point;
  bool gromovLuck = false;            // chi >= |tau|
  bool einsteinNonPosStrict = false;  // chi > (15/8)|tau|
  bool bmy = false;                   // chi >= 3 tau
  bool bmyEquality = false;
  BigInt c1sq = 0;                    // 2 chi + 3 tau
  bool bothOrientationsComplexPossible = false;
};

inline GeoReport report(const GeoPoint& p) {
  BigInt chi = p.chi, tau = p.tau;
  BigInt absTau = abs(tau);
  GeoReport r;
  r.point = p;
  r.gromovLuck = chi >= absTau;
  r.einsteinNonPosStrict = 8 * chi > 15 * absTau;
  r.bmy = chi >= 3 * tau;
  r.bmyEquality = chi == 3 * tau;
  r.c1sq = 2 * chi + 3 * tau;
  // Todd: c1^2 + chi = 3(chi + tau) is divisible by 12 for a complex surface.
  // Asking it of both orientations gives chi +- tau = 0 mod 4, hence tau even.
  r.bothOrientationsComplexPossible = (tau % 2) == 0;
  return r;
}

struct LatticeObstruction {
  Rational tau;
  Rational chi;
  bool integral = false;
};

/// Intersection of chi = 2 + tau (b1 = 0, b2- = 0) with chi = (15/8) tau.
/// Without b1 = 0 the first line is unavailable and nothing is returned.
inline std::optional<LatticeObstruction> self_dual_lattice_obstruction(bool b1Zero) {
  if (!b1Zero) return std::nullopt;
  // 2 + tau = 15 tau / 8  =>  tau = 16/7
  Rational slope(15, 8);
  LatticeObstruction out;
  out.tau = Rational(2) / (slope - 1);
  out.chi = 2 + out.tau;
  out.integral = denominator(out.tau) == 1;
  return out;
}

inline constexpr const char* kScanHeader =
    "chi,tau,gromov_luck,einstein_nonpos_strict,bmy,bmy_equality,c1sq,both_orientations_complex";

inline std::string csv_row(const GeoReport& r) {
  auto b = [](bool v) { return v ? "true" : "false"; };
  std::ostringstream os;
  os << r.point.chi << ',' << r.point.tau << ',' << b(r.gromovLuck) << ',' << b(r.einsteinNonPosStrict) << ','
     << b(r.bmy) << ',' << b(r.bmyEquality) << ',' << r.c1sq << ',' << b(r.bothOrientationsComplexPossible);
  return os.str();
}

/// Every (chi, tau) with 0 <= chi <= chiMax and |tau| <= chi, rows ordered by (chi, tau).
inline std::vector<GeoReport> scan(std::int64_t chiMax) {
  if (chiMax < 0) throw Error(ErrorCode::BadParameter, "scan needs chiMax >= 0");
  if (chiMax > 100000) throw Error(ErrorCode::BadParameter, "scan is limited to chiMax <= 100000");
  std::vector<GeoReport> rows;
  for (std::int64_t chi = 0; chi <= chiMax; ++chi)
    for (std::int64_t tau = -chi; tau <= chi; ++tau) rows.push_back(report({chi, tau}));
  return rows;
}

inline std::string scan_csv(std::int64_t chiMax) {
  std::string out = kScanHeader;
  out += '\n';
  for (const GeoReport& r : scan(chiMax)) {
    out += csv_row(r);
    out += '\n';
  }
  return out;
}

}  // namespace curv4
