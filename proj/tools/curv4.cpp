// Command-line front end. Reports go to stdout, diagnostics to stderr.
// Exit codes: 0 success, 1 input or validation error, 2 numerical failure or
// an inconclusive sign certificate.

#include "curv4/curv4.hpp"
#include "curv4/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using curv4::io::Json;

struct Failure {
  int exitCode;
  std::string message;
};

curv4::CurvatureOperator load_operator(const std::string& path) {
  if (path == "-") return curv4::io::read_operator(std::cin);
  std::ifstream in(path);
  if (!in) throw Failure{1, "cannot open " + path};
  return curv4::io::read_operator(in);
}

curv4::Parameters parse_params(const std::vector<std::string>& items) {
  curv4::Parameters out;
  for (const std::string& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw Failure{1, "--param expects key=value, got '" + item + "'"};
    std::string key = item.substr(0, eq), text = item.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw Failure{1, "--param " + key + ": '" + text + "' is not a number"};
    out[key] = value;
  }
  return out;
}

curv4::Vec4 parse_point(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    try {
      xs.push_back(std::stod(part, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw Failure{1, "--point: '" + part + "' is not a number"};
  }
  if (xs.size() != 4) throw Failure{1, "--point needs four comma-separated coordinates"};
  return {xs[0], xs[1], xs[2], xs[3]};
}

curv4::Vec4 default_point(const std::string& chart) {
  if (chart == "sphereProductChart") return {std::numbers::pi / 2, 0.0, std::numbers::pi / 2, 0.0};
  if (chart == "hyperbolic4HalfSpace") return {0.0, 0.0, 0.0, 1.0};
  return {0.0, 0.0, 0.0, 0.0};
}

Json report_base() {
  Json j;
  j["convention"] = curv4::io::convention();
  return j;
}

void print(const Json& j) { std::cout << curv4::io::dump(j); }

void print_geo_human(const curv4::GeoReport& r) {
  auto b = [](bool v) { return v ? "yes" : "no"; };
  std::cout << "chi = " << r.point.chi << ", tau = " << r.point.tau << "\n"
            << "  chi >= |tau|                 " << b(r.gromovLuck) << "\n"
            << "  chi > (15/8)|tau|            " << b(r.einsteinNonPosStrict) << "\n"
            << "  chi >= 3 tau                 " << b(r.bmy) << (r.bmyEquality ? " (equality)" : "") << "\n"
            << "  c1^2 = 2 chi + 3 tau         " << r.c1sq << "\n"
            << "  both orientations complex    " << (r.bothOrientationsComplexPossible ? "not excluded" : "excluded")
            << "\n";
}

std::string trim(std::string s) {
  auto notSpace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notSpace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notSpace).base(), s.end());
  return s;
}

std::int64_t parse_int(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Failure{1, where + ": '" + text + "' is not an integer"};
  return v;
}

// Rows of "chi,tau"; a header line starting with a letter is skipped.
std::vector<curv4::GeoPoint> read_geo_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{1, "cannot open " + path};
  std::vector<curv4::GeoPoint> points;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    line = trim(line);
    if (line.empty()) continue;
    if (lineNo == 1 && std::isalpha(static_cast<unsigned char>(line[0]))) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw Failure{1, path + ":" + std::to_string(lineNo) + ": expected chi,tau"};
    std::string where = path + ":" + std::to_string(lineNo);
    std::string rest = line.substr(comma + 1);
    if (auto more = rest.find(','); more != std::string::npos) rest = rest.substr(0, more);
    points.push_back({parse_int(trim(line.substr(0, comma)), where), parse_int(trim(rest), where)});
  }
  return points;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature algebra of oriented Riemannian 4-manifolds at a point."};
  app.require_subcommand(1);

  auto* decompose = app.add_subcommand(
      "decompose", "Split a curvature operator into scalar curvature, self-dual and anti-self-dual Weyl blocks and "
                   "the traceless Ricci block; report the Weyl-norm defect |s|/sqrt6 - |W+| - |W-| and, for Einstein "
                   "input, the Euler and signature densities.");
  std::string decomposeInput;
  decompose->add_option("-i,--input", decomposeInput, "Operator JSON file, '-' for stdin")->required();

  auto* certify = app.add_subcommand(
      "certify", "Certify the sign of sectional curvature: exact range for Einstein input, otherwise alternating "
                 "sphere-constrained maximization of the quadratic form with an analytic upper bound.");
  std::string certifyInput;
  curv4::CertifyConfig cfg;
  double certifyTolerance = 0.0;
  certify->add_option("-i,--input", certifyInput, "Operator JSON file, '-' for stdin")->required();
  certify->add_option("--restarts", cfg.restarts, "Seeded random starts")->check(CLI::NonNegativeNumber);
  certify->add_option("--grid", cfg.gridSize, "Fibonacci-lattice starts")->check(CLI::NonNegativeNumber);
  certify->add_option("--seed", cfg.seed, "Seed for the random starts");
  certify->add_option("--threads", cfg.threads, "Worker threads (output does not depend on it)")
      ->check(CLI::PositiveNumber);
  auto* tolOpt = certify->add_option("--tolerance", certifyTolerance, "Sign tolerance on q")->check(CLI::PositiveNumber);
  bool forceIterative = false;
  certify->add_flag("--iterative", forceIterative, "Use the iterative path even for Einstein input");

  auto* model = app.add_subcommand(
      "model", "Closed-form model operators: flat, sphere4, hyperbolic4, surfaceProduct, fubiniStudy, bergman.");
  std::string modelName;
  std::vector<std::string> modelParams;
  bool modelJson = false;
  model->add_option("name", modelName, "Model name")->required();
  model->add_option("--param", modelParams, "Parameter as key=value (repeatable)");
  model->add_flag("--json", modelJson, "JSON output");

  auto* chart = app.add_subcommand(
      "chart", "Finite-difference curvature of an analytic chart: flatChart, sphereProductChart, "
               "hyperbolic4HalfSpace.");
  std::string chartName, chartPoint;
  std::vector<std::string> chartParams;
  std::optional<double> chartStep;
  std::vector<double> studySteps{0.02, 0.01, 0.005};
  bool chartStudy = false, chartJson = false;
  chart->add_option("name", chartName, "Chart name")->required();
  chart->add_option("--point", chartPoint, "x1,x2,x3,x4");
  chart->add_option("--step", chartStep, "Finite-difference step")->check(CLI::PositiveNumber);
  chart->add_option("--param", chartParams, "Parameter as key=value (repeatable)");
  chart->add_flag("--study", chartStudy, "Convergence study over --steps");
  chart->add_option("--steps", studySteps, "Decreasing steps for --study")->delimiter(',');
  chart->add_flag("--json", chartJson, "JSON output (the default)");

  auto* page = app.add_subcommand(
      "page", "Page metric on CP2 # -CP2: Einstein residual, negative sectional curvature, and the Euler "
              "characteristic and signature by orbit quadrature.");
  bool pageVerify = false, pageNeg = false, pageIntegrate = false, pageReverse = false;
  int pageNodes = 48, pageRadii = 32, pageSweep = 128;
  double pageLambda = 1.0;
  page->add_flag("--verify", pageVerify, "Einstein residual at Chebyshev radii");
  page->add_flag("--negcurv", pageNeg, "Minimum sectional curvature over the orbits");
  page->add_flag("--integrate", pageIntegrate, "Integrate the characteristic densities");
  page->add_option("--nodes", pageNodes, "Gauss-Legendre nodes (doubled for the error estimate)")
      ->check(CLI::Range(16, 4096));
  page->add_option("--radii", pageRadii, "Radii for --verify")->check(CLI::Range(1, 100000));
  page->add_option("--sweep", pageSweep, "Radii for --negcurv")->check(CLI::Range(2, 100000));
  page->add_option("--lambda", pageLambda, "Einstein constant")->check(CLI::PositiveNumber);
  page->add_flag("--reverse", pageReverse, "Reverse the orientation");

  auto* geo = app.add_subcommand("geo", "Euler characteristic / signature inequalities, exact arithmetic.");
  std::optional<std::int64_t> geoChi, geoTau;
  std::string geoCsv;
  bool geoJson = false;
  auto* chiOpt = geo->add_option("--chi", geoChi, "Euler characteristic");
  auto* tauOpt = geo->add_option("--tau", geoTau, "Signature");
  auto* csvOpt = geo->add_option("--csv", geoCsv, "CSV file of chi,tau rows; writes one report row each");
  geo->add_flag("--json", geoJson, "JSON output");
  chiOpt->needs(tauOpt);
  tauOpt->needs(chiOpt);
  csvOpt->excludes(chiOpt)->excludes(tauOpt);

  auto* scan = app.add_subcommand("scan", "CSV of every (chi, tau) with 0 <= chi <= N and |tau| <= chi.");
  std::int64_t chiMax = 0;
  scan->add_option("--chi-max", chiMax, "Largest chi")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*decompose) {
      curv4::CurvatureOperator r = load_operator(decomposeInput);
      curv4::Decomposition d = curv4::decompose(r);
      Json j = report_base();
      j["decomposition"] = curv4::io::to_json(d);
      j["glReport"] = curv4::io::to_json(curv4::gl_defect(d));
      j["einstein"] = d.is_einstein();
      j["charDensities"] = d.is_einstein() ? curv4::io::to_json(curv4::char_densities(d)) : Json(nullptr);
      print(j);
    } else if (*certify) {
      curv4::CurvatureOperator r = load_operator(certifyInput);
      if (*tolOpt) cfg.tolerance = certifyTolerance;
      cfg.forceIterative = forceIterative;
      curv4::SecSignCertificate cert = curv4::certify_sec_sign(r, cfg);
      Json j = report_base();
      j["config"] = {{"restarts", cfg.restarts}, {"gridSize", cfg.gridSize}, {"seed", cfg.seed}};
      j["certificate"] = curv4::io::to_json(cert);
      print(j);
      if (cert.verdict == curv4::Verdict::Inconclusive) {
        std::cerr << "certify: verdict Inconclusive\n";
        return 2;
      }
    } else if (*model) {
      curv4::ModelSpec spec = curv4::catalog(modelName, parse_params(modelParams));
      curv4::Decomposition d = curv4::decompose(spec.op);
      curv4::GLReport gl = curv4::gl_defect(d);
      if (modelJson) {
        Json j = report_base();
        j["model"] = curv4::io::to_json(spec);
        j["decomposition"] = curv4::io::to_json(d);
        j["glReport"] = curv4::io::to_json(gl);
        print(j);
      } else {
        std::cout << spec.name;
        for (const auto& [k, v] : spec.parameters) std::cout << " " << k << "=" << v;
        std::cout << "\n  einstein " << (spec.flags.einstein ? "yes" : "no") << ", kahler "
                  << (spec.flags.kahler ? "yes" : "no") << ", sec " << curv4::to_string(spec.flags.secSign) << "\n"
                  << "  s = " << d.s << ", |W+| = " << gl.normWPlus << ", |W-| = " << gl.normWMinus
                  << ", defect = " << gl.defect << "\n"
                  << "  cover " << (spec.knownCover ? curv4::to_string(*spec.knownCover) : "none") << "\n";
      }
    } else if (*chart) {
      curv4::MetricChart c = curv4::chart_for(chartName, parse_params(chartParams));
      curv4::Vec4 x = chartPoint.empty() ? default_point(chartName) : parse_point(chartPoint);
      Json j = report_base();
      j["chart"] = chartName;
      j["point"] = curv4::io::to_json(x);
      if (chartStudy) {
        j["study"] = curv4::io::to_json(curv4::convergence_study(c, x, studySteps));
      } else {
        j["pointCurvature"] = curv4::io::to_json(curv4::curvature_at(c, x, chartStep));
      }
      print(j);
    } else if (*page) {
      if (!pageVerify && !pageNeg && !pageIntegrate) throw Failure{1, "page: give --verify, --negcurv or --integrate"};
      curv4::CohomOneMetric m = curv4::page_metric(pageLambda);
      if (pageReverse) m = m.reversed();
      Json j = report_base();
      j["metric"] = curv4::io::to_json(m);
      if (pageVerify) {
        auto radii = curv4::interior_radii(m, pageRadii);
        j["verify"] = curv4::io::to_json(curv4::verify_einstein(m, radii));
      }
      if (pageNeg) j["negcurv"] = curv4::io::to_json(curv4::certify_negative_curvature(m, pageSweep));
      if (pageIntegrate) j["integrate"] = curv4::io::to_json(curv4::integrate_char_numbers(m, pageNodes));
      print(j);
    } else if (*geo) {
      if (!geoCsv.empty()) {
        std::cout << curv4::kScanHeader << "\n";
        for (const curv4::GeoPoint& p : read_geo_csv(geoCsv)) std::cout << curv4::csv_row(curv4::report(p)) << "\n";
      } else {
        if (!geoChi) throw Failure{1, "geo: give --chi and --tau, or --csv"};
        curv4::GeoReport r = curv4::report({*geoChi, *geoTau});
        if (geoJson) {
          Json j = report_base();
          j["report"] = curv4::io::to_json(r);
          print(j);
        } else {
          print_geo_human(r);
        }
      }
    } else if (*scan) {
      std::cout << curv4::scan_csv(chiMax);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exitCode;
  } catch (const curv4::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return curv4::is_numerical(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
