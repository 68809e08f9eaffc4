#pragma once

// JSON reading and writing. Requires nlohmann/json on the include path.

#include "curv4/core.hpp"
#include "curv4/curvops.hpp"
#include "curv4/geography.hpp"
#include "curv4/models.hpp"
#include "curv4/numgeom.hpp"
#include "curv4/page.hpp"
#include "curv4/secsign.hpp"

#include <nlohmann/json.hpp>

#include <istream>
#include <iterator>
#include <limits>
#include <string>

namespace curv4::io {

using Json = nlohmann::ordered_json;

/// Attached to every report.
inline Json convention() {
  Json c;
  c["twoFormBasis"] = {"e1^e2", "e1^e3", "e1^e4", "e2^e3", "e2^e4", "e3^e4"};
  c["sdAsdBasis"] = {"(e1^e2+e3^e4)/sqrt2", "(e1^e3-e2^e4)/sqrt2", "(e1^e4+e2^e3)/sqrt2",
                     "(e1^e2-e3^e4)/sqrt2", "(e1^e3+e2^e4)/sqrt2", "(e1^e4-e2^e3)/sqrt2"};
  c["orientation"] = "e1^e2^e3^e4 positive; *(e1^e2) = e3^e4";
  c["secNormalization"] = "sec(X,Y) = <R(X^Y),X^Y> / (|X|^2|Y|^2 - <X,Y>^2); identity operator is the unit round S4";
  c["qForm"] = "q(psiPlus,psiMinus) = <psi,R psi> with psi = psiPlus + psiMinus, equal to 2 sec of the plane";
  c["weylNorm"] = "Frobenius norm of the 3x3 block";
  return c;
}

inline Json to_json(const Mat3& m) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return rows;
}

inline Json to_json(const Mat4& m) {
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
  return rows;
}

inline Json to_json(const Mat6& m) {
  Json rows = Json::array();
  for (int i = 0; i < 6; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 6; ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline Json to_json(const Vec3& v) { return {v(0), v(1), v(2)}; }
inline Json to_json(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }

inline Json to_json(const CurvatureOperator& r) {
  return {{"basis", r.basis == Basis::Coordinate ? "coordinate" : "sd-asd"}, {"matrix", to_json(r.matrix)}};
}

inline Json to_json(const WeylSpectrum& w) { return {{"lambda", w.lambda}, {"mu", w.mu}, {"nu", w.nu}}; }

inline Json to_json(const Decomposition& d) {
  Json j;
  j["s"] = d.s;
  j["wPlus"] = to_json(d.wPlus);
  j["wMinus"] = to_json(d.wMinus);
  j["ricBlock"] = to_json(d.ricBlock);
  j["spectra"] = {{"plus", to_json(d.spectrumPlus)}, {"minus", to_json(d.spectrumMinus)}};
  j["einsteinConstant"] = d.einstein_constant();
  return j;
}

inline Json to_json(const GLReport& g) {
  return {{"defect", g.defect},
          {"normWPlus", g.normWPlus},
          {"normWMinus", g.normWMinus},
          {"equalityBranch", to_string(g.equalityBranch)},
          {"saturated", g.saturated},
          {"coverClass", to_string(g.coverClass)}};
}

inline Json to_json(const CharDensities& c) {
  Json j;
  j["eulerDensity"] = c.eulerDensity;
  j["signatureDensity"] = c.signatureDensity;
  j["ratio"] = c.ratio ? Json(*c.ratio) : Json(nullptr);
  j["ratioExact"] = c.ratioExact ? Json(*c.ratioExact) : Json(nullptr);
  return j;
}

inline Json to_json(const KahlerSignature& k) {
  return {{"density", k.density}, {"nonNegative", k.nonNegative}, {"kahlerDefect", k.kahlerDefect}};
}

inline Json to_json(const PlaneWitness& w) {
  auto [x, y] = plane_of(w.unit_form());
  return {{"psiPlus", to_json(w.psiPlus)},
          {"psiMinus", to_json(w.psiMinus)},
          {"qValue", w.qValue},
          {"secValue", w.secValue},
          {"plane", {to_json(x), to_json(y)}}};
}

inline Json to_json(const SecSignCertificate& c) {
  Json j;
  j["qMaxLower"] = c.qMaxLower;
  j["qMaxUpper"] = c.qMaxUpper;
  j["qMinLower"] = c.qMinLower;
  j["qMinUpper"] = c.qMinUpper;
  j["secMin"] = c.secMin();
  j["secMax"] = c.secMax();
  j["maxWitness"] = to_json(c.maxWitness);
  j["minWitness"] = to_json(c.minWitness);
  j["verdict"] = to_string(c.verdict);
  j["method"] = to_string(c.method);
  j["tolerance"] = c.tolerance;
  return j;
}

inline Json to_json(const ModelSpec& m) {
  Json j;
  j["name"] = m.name;
  Json params = Json::object();
  for (const auto& [k, v] : m.parameters) params[k] = v;
  j["parameters"] = params;
  j["operator"] = to_json(m.op);
  j["flags"] = {{"einstein", m.flags.einstein}, {"kahler", m.flags.kahler}, {"secSign", to_string(m.flags.secSign)}};
  j["knownCover"] = m.knownCover ? Json(to_string(*m.knownCover)) : Json(nullptr);
  return j;
}

inline Json to_json(const PointCurvature& p) {
  Json j;
  j["operator"] = to_json(p.op);
  j["ricci"] = to_json(p.ricci);
  j["scalar"] = p.scalar;
  j["einsteinResidual"] = p.einsteinResidual;
  j["stepUsed"] = p.stepUsed;
  j["errorEstimate"] = p.errorEstimate;
  j["frame"] = to_json(p.frame);
  return j;
}

inline Json to_json(const ConvergenceStudy& s) {
  Json errors = Json::array();
  for (const auto& [h, e] : s.errors) errors.push_back({{"step", h}, {"maxError", e}});
  return {{"errors", errors}, {"slope", s.slope ? Json(*s.slope) : Json("NotApplicable")}};
}

inline Json to_json(const CohomOneMetric& m) {
  Json j;
  j["name"] = m.name;
  j["length"] = m.length;
  j["orientation"] = m.orientation;
  if (m.page) {
    j["lambda"] = m.page->lambda;
    j["nu"] = m.page->nu;
    j["nut"] = m.page->nut;
  }
  return j;
}

inline Json to_json(const EinsteinCheck& e) {
  Json samples = Json::array();
  for (const OrbitSample& s : e.samples) {
    samples.push_back({{"x", s.x},
                       {"residual", s.residual},
                       {"lambda", s.lambda},
                       {"errorEstimate", s.errorEstimate},
                       {"glDefect", s.glDefect}});
  }
  return {{"maxResidual", e.maxResidual}, {"lambda", e.lambda}, {"lambdaSpread", e.lambdaSpread}, {"samples", samples}};
}

inline Json to_json(const NegativeCurvature& n) {
  return {{"minSec", n.minSec}, {"witnessRadius", n.witnessRadius}, {"witness", to_json(n.witness)}};
}

inline Json to_json(const CharNumbers& c) {
  return {{"chi", c.chi}, {"tau", c.tau}, {"chiError", c.chiError}, {"tauError", c.tauError}, {"nodes", c.nodes}};
}

inline Json big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline Json to_json(const GeoReport& r) {
  return {{"chi", r.point.chi},
          {"tau", r.point.tau},
          {"gromovLuck", r.gromovLuck},
          {"einsteinNonPosStrict", r.einsteinNonPosStrict},
          {"bmy", r.bmy},
          {"bmyEquality", r.bmyEquality},
          {"c1sq", big(r.c1sq)},
          {"bothOrientationsComplexPossible", r.bothOrientationsComplexPossible}};
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

[[noreturn]] inline void bad(const std::string& message) { throw Error(ErrorCode::ParseError, message); }

}  // namespace detail

/// Parses {"basis": "coordinate" | "sd-asd", "matrix": [[6 rows of 6 numbers]]}.
inline CurvatureOperator parse_operator(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports "[json.exception.parse_error.101] parse error at line L, column C: ..."
    std::string what = e.what();
    auto cut = what.find("] ");
    detail::bad("malformed JSON, " + (cut == std::string::npos ? what : what.substr(cut + 2)));
  }
  if (!j.is_object()) detail::bad("operator must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "basis" && key != "matrix") detail::bad("unknown field '" + key + "'");
  }
  CurvatureOperator r;
  if (j.contains("basis")) {
    if (!j["basis"].is_string()) detail::bad("'basis' must be a string");
    std::string b = j["basis"];
    if (b == "coordinate") {
      r.basis = Basis::Coordinate;
    } else if (b == "sd-asd") {
      r.basis = Basis::SdAsd;
    } else {
      detail::bad("'basis' must be \"coordinate\" or \"sd-asd\", got \"" + b + "\"");
    }
  }
  if (!j.contains("matrix")) detail::bad("missing field 'matrix'");
  const Json& m = j["matrix"];
  if (!m.is_array() || m.size() != 6) detail::bad("'matrix' must have 6 rows");
  for (int i = 0; i < 6; ++i) {
    const Json& row = m[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != 6) detail::bad("row " + std::to_string(i) + " of 'matrix' must have 6 entries");
    for (int k = 0; k < 6; ++k) {
      const Json& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) detail::bad("matrix entry (" + std::to_string(i) + "," + std::to_string(k) + ") is not a number");
      r.matrix(i, k) = v.get<double>();
    }
  }
  return r;
}

inline CurvatureOperator read_operator(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_operator(text);
}

}  // namespace curv4::io
