// hypflow: circle-packing curvature and combinatorial flow toolkit.
//
// Subcommands: validate, curvature, flow, newton, potential, spectrum.
// Exit codes: 0 success/converged, 1 input error, 2 horizon reached,
// 3 divergence / step or solver failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypflow/curvature.hpp"
#include "hypflow/flow.hpp"
#include "hypflow/format.hpp"
#include "hypflow/metric.hpp"
#include "hypflow/solver.hpp"
#include "hypflow/surface.hpp"

namespace {

using namespace hypflow;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitHorizon = 2;
constexpr int kExitDiverged = 3;

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    out.push_back(std::stod(item, &pos));
    if (pos != item.size()) throw std::invalid_argument("bad number '" + item + "' in radii list");
  }
  if (out.empty()) throw std::invalid_argument("empty radii list");
  return out;
}

std::vector<double> read_radii_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open radii file '" + path + "'");
  std::vector<double> out;
  double x;
  while (in >> x) out.push_back(x);
  if (out.empty()) throw std::runtime_error("radii file '" + path + "' holds no numbers");
  return out;
}

// Inline radii win over a radii file, which wins over the mesh's own radii
// section; the fallback is r = 1 everywhere (announced on stderr).
PackingMetric resolve_radii(const ParsedMesh& mesh, const std::string& inline_radii,
                            const std::string& radii_file) {
  const int n = mesh.surface.num_vertices();
  std::vector<double> r;
  if (!inline_radii.empty())
    r = parse_csv_doubles(inline_radii);
  else if (!radii_file.empty())
    r = read_radii_file(radii_file);
  else if (mesh.radii)
    r = *mesh.radii;
  else {
    std::cerr << "notice: no radii given, using r = 1 at every vertex\n";
    r.assign(static_cast<size_t>(n), 1.0);
  }
  if (static_cast<int>(r.size()) != n)
    throw std::invalid_argument("got " + std::to_string(r.size()) + " radii for " +
                                std::to_string(n) + " vertices");
  return PackingMetric::from_radii(r);
}

AreaElement area_element_by_name(const std::string& name) {
  if (name == "unit") return AreaElement::unit();
  if (name == "disk") return AreaElement::disk();
  if (name == "sinh2") return AreaElement::sinh2();
  if (name == "cosh") return AreaElement::custom([](double r) { return std::cosh(r); });
  throw std::invalid_argument("unknown area element '" + name + "'");
}

std::string json_array(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt17(v[i]);
  }
  return out + "]";
}

int cmd_validate(const std::string& mesh_path) {
  const ParsedMesh mesh = parse_cpm_file(mesh_path);
  const Surface& s = mesh.surface;
  std::cout << "vertices = " << s.num_vertices() << "\n";
  std::cout << "edges = " << s.num_edges() << "\n";
  std::cout << "faces = " << s.num_faces() << "\n";
  std::cout << "chi = " << s.euler_characteristic() << "\n";
  std::map<int, int> histogram;
  for (int v = 0; v < s.num_vertices(); ++v) histogram[s.vertex_degree(v)]++;
  std::cout << "degree histogram:\n";
  for (auto [deg, count] : histogram)
    std::cout << "  degree " << deg << ": " << count << (count == 1 ? " vertex" : " vertices")
              << "\n";
  if (mesh.radii) std::cout << "radii section: present\n";
  if (s.euler_characteristic() >= 0)
    std::cout << "warning: Gauss-Bonnet forbids zero curvature (chi >= 0)\n";
  return kExitOk;
}

int cmd_curvature(const std::string& mesh_path, const std::string& radii,
                  const std::string& radii_file, const std::string& kind,
                  const std::string& area_element, const std::string& format) {
  const ParsedMesh mesh = parse_cpm_file(mesh_path);
  const PackingMetric m = resolve_radii(mesh, radii, radii_file);

  CurvatureVector cv;
  if (kind == "K")
    cv = gauss_curvature(mesh.surface, m);
  else if (kind == "R")
    cv = modified_curvature(mesh.surface, m);
  else if (kind == "Rtilde")
    cv = tilde_curvature(mesh.surface, m);
  else if (kind == "A")
    cv = a_curvature(mesh.surface, m, area_element_by_name(area_element));
  else
    throw std::invalid_argument("unknown curvature kind '" + kind + "'");

  const double residual = gauss_bonnet_residual(mesh.surface, m);
  if (format == "json") {
    std::cout << "{\n  \"kind\": \"" << to_string(cv.kind) << "\",\n";
    std::cout << "  \"values\": " << json_array(cv.values) << ",\n";
    std::cout << "  \"kinf\": " << fmt17(cv.max_abs()) << ",\n";
    std::cout << "  \"gauss_bonnet_residual\": " << fmt17(residual) << "\n}\n";
  } else {
    std::cout << "vertex," << to_string(cv.kind) << "\n";
    for (Eigen::Index i = 0; i < cv.values.size(); ++i)
      std::cout << i << "," << fmt17(cv.values[i]) << "\n";
    std::cout << "# kinf = " << fmt17(cv.max_abs()) << "\n";
    std::cout << "# gauss_bonnet_residual = " << fmt17(residual) << "\n";
  }
  return kExitOk;
}

struct FlowCliOptions {
  std::string mesh_path, radii, radii_file;
  std::string flow = "ricci";
  std::string area_element = "sinh2";
  std::string integrator = "euler";
  double dt = 0.0;  // 0: per-integrator default
  double t_max = 100.0;
  double tol = 1e-8;
  int trace_every = 1;
  std::string trace_path, summary_path;
};

int cmd_flow(const FlowCliOptions& opt) {
  const ParsedMesh mesh = parse_cpm_file(opt.mesh_path);
  const PackingMetric m0 = resolve_radii(mesh, opt.radii, opt.radii_file);

  FlowConfig cfg;
  if (opt.flow == "ricci")
    cfg.kind = FlowKind::ricci;
  else if (opt.flow == "chow-luo")
    cfg.kind = FlowKind::chow_luo;
  else if (opt.flow == "calabi")
    cfg.kind = FlowKind::calabi;
  else if (opt.flow == "a-flow")
    cfg.kind = FlowKind::a_flow;
  else
    throw std::invalid_argument("unknown flow '" + opt.flow + "'");
  cfg.area_element = area_element_by_name(opt.area_element);
  cfg.integrator = opt.integrator == "rk4" ? Integrator::rk4 : Integrator::euler;
  cfg.dt = opt.dt > 0.0 ? opt.dt : (cfg.integrator == Integrator::rk4 ? 5e-2 : 1e-2);
  cfg.t_max = opt.t_max;
  cfg.tol = opt.tol;
  cfg.trace_every = opt.trace_every;

  const FlowTrace trace = run_flow(mesh.surface, m0, cfg);

  std::optional<double> rate;
  if (trace.outcome == FlowOutcome::converged) {
    try {
      rate = rate_fit(trace);
    } catch (const std::invalid_argument&) {
      // too few terminal samples; the summary reports null
    }
  }

  if (!opt.trace_path.empty()) {
    std::ofstream out(opt.trace_path);
    if (!out) throw std::runtime_error("cannot write trace file '" + opt.trace_path + "'");
    write_trace_csv(trace, out);
  }
  const std::string summary = trace_summary_json(trace, rate);
  if (!opt.summary_path.empty()) {
    std::ofstream out(opt.summary_path);
    if (!out) throw std::runtime_error("cannot write summary file '" + opt.summary_path + "'");
    out << summary;
    std::cout << "outcome = " << to_string(trace.outcome) << ", steps = " << trace.steps_taken
              << ", final max|K| = " << fmt17(trace.samples.back().k_inf) << "\n";
  } else {
    std::cout << summary;
  }

  switch (trace.outcome) {
    case FlowOutcome::converged: return kExitOk;
    case FlowOutcome::horizon_reached: return kExitHorizon;
    default: return kExitDiverged;
  }
}

int cmd_newton(const std::string& mesh_path, const std::string& radii,
               const std::string& radii_file, double tol, int max_iter, const std::string& format) {
  const ParsedMesh mesh = parse_cpm_file(mesh_path);
  const PackingMetric m0 = resolve_radii(mesh, radii, radii_file);
  const NewtonReport report = newton_zero_curvature(mesh.surface, m0, tol, max_iter);

  if (format == "json") {
    std::cout << "{\n  \"status\": \"" << to_string(report.status) << "\",\n";
    std::cout << "  \"iterations\": " << report.iterations() << ",\n";
    std::cout << "  \"final_radii\": " << json_array(report.final_metric.r()) << ",\n";
    std::cout << "  \"final_kinf\": " << fmt17(report.iterates.back().k_inf) << "\n}\n";
  } else {
    for (size_t i = 0; i < report.iterates.size(); ++i)
      std::cout << "iter " << i << ": max|K| = " << fmt17(report.iterates[i].k_inf) << "\n";
    std::cout << "status = " << to_string(report.status) << "\n";
    std::cout << "final radii:";
    for (Eigen::Index i = 0; i < report.final_metric.r().size(); ++i)
      std::cout << " " << fmt17(report.final_metric.r()[i]);
    std::cout << "\n";
  }
  return report.status == NewtonStatus::converged ? kExitOk : kExitDiverged;
}

int cmd_potential(const std::string& mesh_path, const std::string& base,
                  const std::string& base_file, const std::string& target,
                  const std::string& target_file) {
  const ParsedMesh mesh = parse_cpm_file(mesh_path);
  auto metric_of = [&](const std::string& inline_radii, const std::string& file,
                       const char* which) {
    if (inline_radii.empty() && file.empty())
      throw std::invalid_argument(std::string("missing ") + which + " radii");
    return resolve_radii(mesh, inline_radii, file);
  };
  const PackingMetric mb = metric_of(base, base_file, "base");
  const PackingMetric mt = metric_of(target, target_file, "target");
  std::cout << fmt17(ricci_potential(mesh.surface, mb.u(), mt.u())) << "\n";
  return kExitOk;
}

int cmd_spectrum(const std::string& mesh_path, const std::string& radii,
                 const std::string& radii_file, double curvature_tol, const std::string& format) {
  const ParsedMesh mesh = parse_cpm_file(mesh_path);
  const PackingMetric m = resolve_radii(mesh, radii, radii_file);
  const SpectrumReport report = stability_spectrum(mesh.surface, m, curvature_tol);
  if (format == "json") {
    std::cout << "{\n  \"eigenvalues\": " << json_array(report.eigenvalues) << ",\n";
    std::cout << "  \"predicted_rate\": " << fmt17(report.predicted_rate) << "\n}\n";
  } else {
    for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i)
      std::cout << fmt17(report.eigenvalues[i]) << "\n";
    std::cout << "predicted_rate = " << fmt17(report.predicted_rate) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circle-packing curvature and combinatorial flow toolkit"};
  app.require_subcommand(1);

  std::string mesh_path, radii, radii_file, format = "csv";

  auto* validate = app.add_subcommand("validate", "load a mesh and report its combinatorics");
  validate->add_option("mesh", mesh_path, "mesh file (.cpm)")->required();

  std::string kind = "K", area_element = "unit";
  auto* curvature = app.add_subcommand("curvature", "per-vertex curvature at given radii");
  curvature->add_option("mesh", mesh_path)->required();
  curvature->add_option("--radii", radii, "comma-separated radii");
  curvature->add_option("--radii-file", radii_file, "whitespace-separated radii file");
  curvature->add_option("--kind", kind, "one of K, R, Rtilde, A (default K)");
  curvature->add_option("--area-element", area_element,
                        "for kind A: unit, disk, sinh2 or cosh (default unit)");
  curvature->add_option("--format", format, "csv or json");

  FlowCliOptions fopt;
  auto* flow = app.add_subcommand("flow", "integrate a curvature flow");
  flow->add_option("mesh", fopt.mesh_path)->required();
  flow->add_option("--radii", fopt.radii);
  flow->add_option("--radii-file", fopt.radii_file);
  flow->add_option("--flow", fopt.flow, "ricci, chow-luo, calabi or a-flow (default ricci)");
  flow->add_option("--area-element", fopt.area_element, "a-flow denominator (default sinh2)");
  flow->add_option("--integrator", fopt.integrator, "euler or rk4 (default euler)");
  flow->add_option("--dt", fopt.dt, "step size (default 1e-2 euler, 5e-2 rk4)");
  flow->add_option("--t-max", fopt.t_max, "time horizon (default 100)");
  flow->add_option("--tol", fopt.tol, "stop when max|K| <= tol (default 1e-8)");
  flow->add_option("--trace-every", fopt.trace_every, "sampling stride (default 1)");
  flow->add_option("--trace", fopt.trace_path, "write a CSV trace here");
  flow->add_option("--summary", fopt.summary_path, "write the JSON summary here");

  double tol = 1e-10;
  int max_iter = 50;
  std::string newton_format = "text";
  auto* newton = app.add_subcommand("newton", "solve for the zero-curvature metric");
  newton->add_option("mesh", mesh_path)->required();
  newton->add_option("--radii", radii);
  newton->add_option("--radii-file", radii_file);
  newton->add_option("--tol", tol, "target max|K| (default 1e-10)");
  newton->add_option("--max-iter", max_iter, "iteration cap (default 50)");
  newton->add_option("--format", newton_format, "text or json");

  std::string base, base_file, target, target_file;
  auto* potential = app.add_subcommand("potential", "line integral of sum K_i du_i");
  potential->add_option("mesh", mesh_path)->required();
  potential->add_option("--radii-base", base, "base radii (comma-separated)");
  potential->add_option("--radii-base-file", base_file);
  potential->add_option("--radii", target, "target radii (comma-separated)");
  potential->add_option("--radii-file", target_file);

  double curvature_tol = 1e-6;
  std::string spectrum_format = "text";
  auto* spectrum = app.add_subcommand("spectrum", "linearization spectrum at a solved metric");
  spectrum->add_option("mesh", mesh_path)->required();
  spectrum->add_option("--radii", radii);
  spectrum->add_option("--radii-file", radii_file);
  spectrum->add_option("--curvature-tol", curvature_tol,
                       "max|K| allowed at the input metric (default 1e-6)");
  spectrum->add_option("--format", spectrum_format, "text or json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(mesh_path);
    if (curvature->parsed())
      return cmd_curvature(mesh_path, radii, radii_file, kind, area_element, format);
    if (flow->parsed()) return cmd_flow(fopt);
    if (newton->parsed())
      return cmd_newton(mesh_path, radii, radii_file, tol, max_iter, newton_format);
    if (potential->parsed()) return cmd_potential(mesh_path, base, base_file, target, target_file);
    if (spectrum->parsed())
      return cmd_spectrum(mesh_path, radii, radii_file, curvature_tol, spectrum_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
