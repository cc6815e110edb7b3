// wmink: solve, verify, radial-demo and admissibility subcommands.
//
// Exit codes: 0 ok, 1 runtime or write failure, 2 unreadable input, schema or usage error,
// 3 solver did not converge, 4 measure concentrated on a hyperplane,
// 5 weight fails the growth-condition scan, 6 verification out of tolerance.

#include "wmink/errors.hpp"
#include "wmink/io.hpp"
#include "wmink/radial.hpp"
#include "wmink/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace wmink;
using io::json;

namespace {

enum Exit : int {
  kOk = 0,
  kRuntime = 1,
  kSchema = 2,
  kNotConverged = 3,
  kHyperplane = 4,
  kInadmissible = 5,
  kNotVerified = 6,
};

struct Flags {
  std::string input;
  std::string out = ".";
  std::optional<double> beta;
  std::optional<double> tol;
  std::optional<int> max_iters;
  std::optional<int> quad_order;
  std::optional<long long> seed;
  double verify_tol = 1e-6;
  // radial-demo
  double a = 0.05;
  int n = 1;
  // admissibility
  std::string weight_kind;
  std::optional<double> weight_value;
  int dimension = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

std::string num(double v, int prec = 17) {
  std::ostringstream s;
  s << std::setprecision(prec) << v;
  return s.str();
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string verification_csv(const VerificationReport& rep) {
  std::ostringstream s;
  s << "index,x,target_mass,omega,omega_direct,relative_error,route_gap\n";
  for (std::size_t i = 0; i < rep.atoms.size(); ++i) {
    const auto& a = rep.atoms[i];
    s << i << ",";
    for (Eigen::Index k = 0; k < a.x.size(); ++k) s << (k ? " " : "") << num(a.x(k));
    s << "," << num(a.target_mass) << "," << num(a.omega.change_of_variables) << "," << num(a.omega.direct) << ","
      << num(a.relative_error) << "," << num(a.route_gap) << "\n";
  }
  return s.str();
}

void print_verification(const VerificationReport& rep) {
  std::cout << "  atom                      target          omega           rel.err     route gap\n";
  for (const auto& a : rep.atoms) {
    std::ostringstream x;
    x << "(";
    for (Eigen::Index k = 0; k < a.x.size(); ++k) x << (k ? ", " : "") << std::setprecision(4) << a.x(k);
    x << ")";
    std::cout << "  " << std::left << std::setw(24) << x.str() << std::right << std::setw(14) << num(a.target_mass, 8)
              << "  " << std::setw(14) << num(a.omega.change_of_variables, 8) << "  " << std::setw(10)
              << num(a.relative_error, 3) << "  " << std::setw(10) << num(a.route_gap, 3) << "\n";
  }
  std::cout << "  c_u = " << num(rep.c_u, 10) << ", max relative error = " << num(rep.max_relative_error, 3)
            << ", verification " << (rep.passed ? "PASSED" : "FAILED") << "\n";
}

// Two panels: the body K in the plane, and the graph of u with the atoms marked.
std::string figure_svg(const SolvedInstance& inst) {
  const auto& verts = inst.body.vertices();
  double xr = 3.0;
  for (const auto& a : inst.rho.atoms()) xr = std::max(xr, 1.5 * std::abs(a.x(0)));
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"840\" height=\"420\" viewBox=\"0 0 840 420\">\n";
  s << "<rect width=\"840\" height=\"420\" fill=\"white\"/>\n";

  double kr = 0.0;
  for (const auto& v : verts) kr = std::max(kr, v.norm());
  const double ks = 180.0 / (1.1 * kr);
  auto kx = [&](double x) { return fixed(210.0 + ks * x); };
  auto ky = [&](double y) { return fixed(210.0 - ks * y); };
  s << "<line x1=\"20\" y1=\"210\" x2=\"400\" y2=\"210\" stroke=\"#bbb\"/>\n";
  s << "<line x1=\"210\" y1=\"20\" x2=\"210\" y2=\"400\" stroke=\"#bbb\"/>\n";
  std::vector<Vec> ordered;
  std::vector<Vec> planar(verts.begin(), verts.end());
  const ConvexDomain poly = ConvexDomain::hull_of(planar);
  s << "<polygon fill=\"#cfe3f7\" stroke=\"#1f5f9f\" stroke-width=\"2\" points=\"";
  for (const auto& v : poly.vertices()) s << kx(v(0)) << "," << ky(v(1)) << " ";
  s << "\"/>\n<text x=\"20\" y=\"16\" font-size=\"13\">body K</text>\n";

  const int samples = 400;
  double umin = inst.u(Vec::Constant(1, 0.0)), umax = umin;
  std::vector<std::pair<double, double>> graph;
  for (int i = 0; i <= samples; ++i) {
    const double x = -xr + 2.0 * xr * i / samples;
    const double y = inst.u(Vec::Constant(1, x));
    graph.emplace_back(x, y);
    umin = std::min(umin, y);
    umax = std::max(umax, y);
  }
  const double span = std::max(umax - umin, 1e-12);
  auto gx = [&](double x) { return fixed(440.0 + 380.0 * (x + xr) / (2.0 * xr)); };
  auto gy = [&](double y) { return fixed(390.0 - 360.0 * (y - umin) / span); };
  s << "<polyline fill=\"none\" stroke=\"#9f1f1f\" stroke-width=\"2\" points=\"";
  for (const auto& [x, y] : graph) s << gx(x) << "," << gy(y) << " ";
  s << "\"/>\n";
  for (const auto& a : inst.rho.atoms())
    s << "<circle cx=\"" << gx(a.x(0)) << "\" cy=\"" << gy(inst.u(a.x)) << "\" r=\"4\" fill=\"#333\"/>\n";
  s << "<text x=\"440\" y=\"16\" font-size=\"13\">graph of u on [" << fixed(-xr) << ", " << fixed(xr) << "]</text>\n";
  s << "</svg>\n";
  return s.str();
}

std::string body_csv(const Polytope& body) {
  std::ostringstream s;
  s << "x,y,z\n";
  for (const auto& v : body.vertices()) s << num(v(0)) << "," << num(v(1)) << "," << num(v(2)) << "\n";
  return s.str();
}

std::string u_samples_csv(const SolvedInstance& inst) {
  double xr = 3.0;
  for (const auto& a : inst.rho.atoms()) xr = std::max(xr, 1.5 * a.x.lpNorm<Eigen::Infinity>());
  std::ostringstream s;
  s << "x1,x2,u\n";
  const int m = 40;
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= m; ++j) {
      Vec x(2);
      x << -xr + 2.0 * xr * i / m, -xr + 2.0 * xr * j / m;
      s << num(x(0)) << "," << num(x(1)) << "," << num(inst.u(x)) << "\n";
    }
  }
  return s.str();
}

int cmd_solve(const Flags& f) {
  const io::Document doc = io::parse_document(read_file(f.input));
  io::ProblemInput in = io::parse_problem(doc, f.beta);
  if (f.tol) in.solver.tol = *f.tol;
  if (f.max_iters) in.solver.max_iters = *f.max_iters;
  if (f.quad_order) in.quadrature.order = *f.quad_order;
  if (f.seed) in.quadrature.seed = static_cast<std::uint64_t>(*f.seed);
  in.quadrature.validate();

  const SolvedInstance inst = solve_instance(in.rho, in.weight, in.quadrature, in.solver);
  const VerificationReport ver = verify_instance(in.rho, inst, f.verify_tol);

  fs::create_directories(f.out);
  const fs::path out(f.out);
  write_file(out / "solution.json", io::solution_document(in, inst).dump(2) + "\n");
  write_file(out / "verification.json", io::to_json(ver).dump(2) + "\n");
  write_file(out / "verification.csv", verification_csv(ver));
  if (in.rho.dimension() == 1) {
    write_file(out / "figure.svg", figure_svg(inst));
  } else {
    write_file(out / "body_vertices.csv", body_csv(inst.body));
    write_file(out / "u_samples.csv", u_samples_csv(inst));
  }

  std::cout << "solve: " << (inst.report.converged ? "converged" : "NOT converged") << " after "
            << inst.report.iterations << " iterations (" << inst.report.newton_steps
            << " Newton steps), max relative residual " << num(inst.report.max_relative_residual, 3) << "\n";
  print_verification(ver);
  if (!inst.report.converged) return kNotConverged;
  return ver.passed ? kOk : kNotVerified;
}

int cmd_verify(const Flags& f) {
  const io::Document doc = io::parse_document(read_file(f.input));
  const io::StoredSolution stored = io::load_solution(doc);
  const VerificationReport ver = verify_instance(stored.input.rho, stored.instance, f.verify_tol);
  if (!f.out.empty()) {
    fs::create_directories(f.out);
    write_file(fs::path(f.out) / "verification.json", io::to_json(ver).dump(2) + "\n");
    write_file(fs::path(f.out) / "verification.csv", verification_csv(ver));
  }
  std::cout << "verify: max relative residual of stored supports "
            << num(stored.instance.report.max_relative_residual, 3) << "\n";
  print_verification(ver);
  return ver.passed ? kOk : kNotVerified;
}

std::string radial_csv(const radial::ResidualReport& rep) {
  std::ostringstream s;
  s << "x_norm,lhs,rhs,relative_residual,alt_rhs\n";
  for (const auto& p : rep.samples)
    s << num(p.x_norm) << "," << num(p.lhs) << "," << num(p.rhs) << "," << num(p.relative_residual) << ","
      << num(p.alt_rhs) << "\n";
  return s.str();
}

int cmd_radial(const Flags& f) {
  if (!(f.a > 0.0)) throw CLI::ValidationError("--a", "must be positive");
  if (f.n != 1 && f.n != 2) throw CLI::ValidationError("--n", "must be 1 or 2");
  const radial::Roots roots = radial::gauss_roots(f.a, f.n);
  json summary{{"a", f.a},
               {"n", f.n},
               {"status", radial::to_string(roots.status)},
               {"peak_radius", roots.peak_radius},
               {"peak_value", roots.peak_value},
               {"solutions", json::array()}};
  fs::create_directories(f.out);
  const fs::path out(f.out);

  bool ok = true;
  std::cout << "radial-demo: a = " << num(f.a, 10) << ", n = " << f.n << ", peak " << num(roots.peak_value, 10)
            << " at r = " << num(roots.peak_radius, 10) << "\n";
  std::vector<double> radii;
  if (roots.status == radial::RootStatus::two_roots) radii = {roots.r1, roots.r2};
  if (roots.status == radial::RootStatus::double_root) radii = {roots.r1};
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const auto rep = radial::residual(radii[i], f.n);
    const bool pass = rep.max_relative_residual <= 1e-6 && rep.max_gradient_fd_error <= 1e-5 &&
                      rep.max_hessian_det_fd_error <= 1e-5 && rep.max_conjugate_error <= 1e-8;
    ok = ok && pass;
    json entry = io::to_json(rep);
    entry["equation_residual"] = std::abs(radial::sphere_density(radii[i], f.n) - f.a);
    entry["pass"] = pass;
    summary["solutions"].push_back(entry);
    write_file(out / ("radial_r" + std::to_string(i + 1) + ".csv"), radial_csv(rep));
    std::cout << "  r" << i + 1 << " = " << num(radii[i], 15) << ": u(x) = r sqrt(1+|x|^2), c_u = " << num(rep.c_u, 10)
              << ", max residual " << num(rep.max_relative_residual, 3) << (pass ? " (pass)" : " (FAIL)") << "\n";
  }
  const char* count = radii.size() == 2 ? "two solutions" : radii.size() == 1 ? "one solution" : "no solution";
  summary["summary"] = count;
  if (!radii.empty()) summary["rhs_note"] = summary["solutions"][0]["rhs_note"];
  write_file(out / "radial_summary.json", summary.dump(2) + "\n");
  std::cout << "  " << count << " (" << radial::to_string(roots.status) << ")\n";
  if (!radii.empty()) std::cout << "  note: " << summary["rhs_note"].get<std::string>() << "\n";
  return ok ? kOk : kRuntime;
}

int cmd_admissibility(const Flags& f) {
  std::optional<Weight> weight;
  int n = f.dimension;
  if (!f.input.empty()) {
    const io::Document doc = io::parse_document(read_file(f.input));
    const json& root = doc.root;
    if (!root.is_object() || !root.contains("weight"))
      throw SchemaError("document: missing required key 'weight'", 1);
    for (auto it = root.begin(); it != root.end(); ++it) {
      const std::string& k = it.key();
      if (k != "dimension" && k != "weight" && k != "atoms" && k != "solver" && k != "quadrature")
        throw SchemaError("/" + k + ": unknown key '" + k + "'", doc.locator.line_of("/" + k));
    }
    if (root.contains("dimension")) {
      if (!root["dimension"].is_number_integer() || (root["dimension"] != 1 && root["dimension"] != 2))
        throw SchemaError("/dimension: dimension must be 1 or 2", doc.locator.line_of("/dimension"));
      n = root["dimension"].get<int>();
    }
    weight = io::parse_weight(root["weight"], n, doc.locator, "/weight", f.beta);
  } else {
    if (f.weight_kind.empty()) throw CLI::ValidationError("admissibility", "give --input or --weight");
    if (n != 1 && n != 2) throw CLI::ValidationError("--dimension", "must be 1 or 2");
    json w{{"kind", f.weight_kind}};
    if (f.weight_value) w["value"] = *f.weight_value;
    weight = io::parse_weight(w, n, io::JsonLocator{}, "/weight", f.beta);
  }

  const AdmissibilityScan scan = admissibility_scan(*weight, n, log_grid(1e-3, 1e3));
  std::cout << "admissibility: " << to_string(weight->kind()) << " weight, n = " << n << ", beta = "
            << num(weight->beta(), 6) << "\n";
  std::cout << "           r        mu(rB)   mu(rB)^(beta/(n+1))/r\n";
  for (std::size_t i = 0; i < scan.rows.size(); i += 5) {
    const auto& r = scan.rows[i];
    std::cout << std::setw(12) << num(r.r, 4) << std::setw(14) << num(r.mass, 6) << std::setw(16) << num(r.ratio, 6)
              << "\n";
  }
  std::cout << "  r -> 0+:  slope " << num(scan.slope_at_zero, 4) << "  " << (scan.blows_up_at_zero ? "PASS" : "FAIL")
            << " (ratio -> +inf)\n";
  std::cout << "  r -> inf: slope " << num(scan.slope_at_infinity, 4) << "  "
            << (scan.decays_at_infinity ? "PASS" : "FAIL") << " (ratio -> 0)\n";
  std::cout << "  overall: " << (scan.pass() ? "PASS" : "FAIL") << "\n";
  return scan.pass() ? kOk : kInadmissible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Monge-Ampere solutions from weighted Minkowski problems"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--beta", f.beta, "exponent beta of the growth conditions")->check(CLI::PositiveNumber);
    sub->add_option("--tol", f.tol, "solver tolerance on ||grad E||_inf / max(a)")->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", f.max_iters, "solver iteration budget")->check(CLI::Range(1, 10'000'000));
    sub->add_option("--quad-order", f.quad_order, "Gauss-Legendre order per collapsed coordinate")
        ->check(CLI::Range(2, 64));
    sub->add_option("--seed", f.seed, "seed for Monte Carlo cross-checks")->check(CLI::NonNegativeNumber);
  };

  auto* solve = app.add_subcommand("solve", "solve an input measure and verify the result");
  solve->add_option("--input", f.input, "problem JSON")->required();
  solve->add_option("--out", f.out, "output directory");
  solve->add_option("--verify-tol", f.verify_tol, "relative tolerance for the per-atom check");
  add_common(solve);

  auto* verify = app.add_subcommand("verify", "re-check an existing solution.json");
  verify->add_option("--input", f.input, "solution.json")->required();
  verify->add_option("--out", f.out, "output directory for verification.json");
  verify->add_option("--verify-tol", f.verify_tol, "relative tolerance for the per-atom check");

  auto* radial_cmd = app.add_subcommand("radial-demo", "two radial solutions for the Gaussian weight");
  radial_cmd->add_option("--a", f.a, "level a > 0");
  radial_cmd->add_option("--n", f.n, "dimension n (1 or 2)");
  radial_cmd->add_option("--out", f.out, "output directory");

  auto* adm = app.add_subcommand("admissibility", "scan the growth conditions of a weight");
  adm->add_option("--input", f.input, "JSON with a weight block (and optionally dimension)");
  adm->add_option("--weight", f.weight_kind, "constant, gaussian or radial_profile");
  adm->add_option("--value", f.weight_value, "value of a constant weight");
  adm->add_option("--dimension", f.dimension, "dimension n (1 or 2)");
  adm->add_option("--beta", f.beta, "exponent beta")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kSchema;
  }

  try {
    if (*solve) return cmd_solve(f);
    if (*verify) return cmd_verify(f);
    if (*radial_cmd) return cmd_radial(f);
    if (*adm) return cmd_admissibility(f);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSchema;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSchema;
  } catch (const ConcentratedOnHyperplane& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHyperplane;
  } catch (const InadmissibleWeight& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInadmissible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kRuntime;
}
