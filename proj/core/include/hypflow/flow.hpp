#pragma once

#include <Eigen/Core>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypflow/area_element.hpp"
#include "hypflow/curvature.hpp"
#include "hypflow/metric.hpp"
#include "hypflow/surface.hpp"

namespace hypflow {

enum class FlowKind { ricci, chow_luo, calabi, a_flow };
enum class Integrator { euler, rk4 };
enum class FlowOutcome { converged, horizon_reached, diverged_to_zero_radius, step_failure };

const char* to_string(FlowKind k);
const char* to_string(Integrator k);
const char* to_string(FlowOutcome k);

struct FlowConfig {
  FlowKind kind = FlowKind::ricci;
  AreaElement area_element = AreaElement::sinh2();  // a_flow only
  Integrator integrator = Integrator::euler;
  double dt = 1e-2;          // 5e-2 is a good default for rk4
  double t_max = 100.0;
  double tol = 1e-8;         // stop when max |K_i| <= tol
  int trace_every = 1;       // sampling stride in accepted steps
};

struct FlowSample {
  double t = 0.0;
  Eigen::VectorXd r;
  Eigen::VectorXd curvature;     // K at this metric
  double k_inf = 0.0;            // max |K_i|
  double potential = 0.0;        // running line integral of sum K_i du_i from the start
  double r_min = 0.0, r_max = 0.0;
  double rtilde_min = 0.0, rtilde_max = 0.0;
};

struct FlowTrace {
  FlowKind kind = FlowKind::ricci;
  std::vector<FlowSample> samples;   // times strictly increasing
  FlowOutcome outcome = FlowOutcome::horizon_reached;
  PackingMetric final_metric;
  int steps_taken = 0;
};

struct StepFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flow velocities in u-coordinates.
//
// ricci:    du_i/dt = -K_i / (2 pi sinh^2 r_i)
// chow-luo: du_i/dt = -K_i
// calabi:   du/dt   = -L K  (gradient descent of the Calabi energy sum K_i^2;
//                            validated by the energy-descent tests)
// a-flow:   du_i/dt = -K_i / A_i(r_i)
//
// The sinh2 element reproduces the ricci velocity and the unit element the
// chow-luo velocity, bit for bit.
Eigen::VectorXd ricci_rhs(const Surface& s, const PackingMetric& m);
Eigen::VectorXd chow_luo_rhs(const Surface& s, const PackingMetric& m);
Eigen::VectorXd calabi_rhs(const Surface& s, const PackingMetric& m);
Eigen::VectorXd a_flow_rhs(const Surface& s, const PackingMetric& m, const AreaElement& ae);

using RhsFn = std::function<Eigen::VectorXd(const PackingMetric&)>;

RhsFn make_rhs(const Surface& s, const FlowConfig& cfg);

struct StepResult {
  PackingMetric metric;
  double dt_used = 0.0;
};

// One explicit Euler or classical RK4 step in u-coordinates. Any state with
// a non-negative u component (r would leave (0, inf)) or a non-finite value
// rejects the step; the step size is then halved, up to 30 times, before
// StepFailureError is thrown.
StepResult step(const PackingMetric& m, const RhsFn& rhs, const FlowConfig& cfg);

// Integrates until max |K_i| <= tol (converged), t >= t_max (horizon),
// min r_i < 1e-12 (diverged_to_zero_radius), or a failed step.
FlowTrace run_flow(const Surface& s, const PackingMetric& m0, const FlowConfig& cfg);

// Line integral of the 1-form sum K_i du_i along the straight segment from
// u_base to u, by adaptive Gauss-Legendre quadrature. Well defined because
// the form is closed (dK/du is symmetric). Throws QuadratureError if the
// tolerance cannot be met at maximal refinement.
double ricci_potential(const Surface& s, const Eigen::VectorXd& u_base, const Eigen::VectorXd& u,
                       double tol = 1e-10);

// Residual of the curvature evolution identity along a ricci trace at time t:
// the numerical d(Rtilde)/dt (3-point difference over neighbouring samples)
// minus  -(L Rtilde)_i / (2 pi sinh^2 r_i) + 2 cosh(r_i) Rtilde_i^2.
// O(dt^2) small for an accurately integrated trace.
Eigen::VectorXd evolution_residual(const Surface& s, const FlowTrace& trace, double t);

struct MonitorReport {
  bool ok = true;
  double t = 0.0;       // first violation time (when !ok)
  int vertex = -1;      // offending vertex (when applicable)
  std::string message;  // human-readable finding
};

// Checks, at every sample of a ricci trace:
//   cosh r_i(t) <= cosh r_i(0) + (d_max - 2) t / 2 + eps
//   (2 - d_i) pi < K_i < 2 pi
MonitorReport bound_monitor(const Surface& s, const FlowTrace& trace, double eps = 1e-9);

// Requires the initial Rtilde (equivalently R) to be sign-definite and
// confirms the pattern persists at every sample within `overshoot`.
MonitorReport sign_monitor(const FlowTrace& trace, double overshoot = 1e-12);

// CSV with header t,r_0..r_{N-1},K_0..K_{N-1},Kinf,F,rmin,rmax.
void write_trace_csv(const FlowTrace& trace, std::ostream& out);

// JSON summary: outcome, final metric, final max |K|, potential, fitted rate.
// All numbers carry 17 significant digits so they round-trip exactly.
std::string trace_summary_json(const FlowTrace& trace, std::optional<double> fitted_rate);

}  // namespace hypflow
