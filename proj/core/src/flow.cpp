#include "hypflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hypflow/format.hpp"

namespace hypflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroRadiusFloor = 1e-12;  // accepted state below this: divergence
constexpr double kCollapseRadius = 1e-6;    // failed step below this: divergence
constexpr long kMaxTotalSteps = 20'000'000;

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature
// ---------------------------------------------------------------------------

// 16-point rule on [-1, 1]; nodes solved at startup by Newton iteration on
// the Legendre recurrence, exact to machine precision.
struct Gauss16 {
  std::array<double, 16> x{}, w{};

  Gauss16() {
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double root = std::cos(kPi * (static_cast<double>(i) + 0.75) / (n + 0.5));
      double deriv = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = root;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * root * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        deriv = n * (root * p1 - p0) / (root * root - 1.0);
        double delta = p1 / deriv;
        root -= delta;
        if (std::abs(delta) < 1e-15) break;
      }
      x[static_cast<size_t>(i)] = root;
      w[static_cast<size_t>(i)] = 2.0 / ((1.0 - root * root) * deriv * deriv);
    }
  }
};

const Gauss16& gauss16() {
  static const Gauss16 rule;
  return rule;
}

template <typename F>
double gl16(const F& f, double a, double b) {
  const Gauss16& g = gauss16();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 16; ++i) sum += g.w[static_cast<size_t>(i)] * f(c + h * g.x[static_cast<size_t>(i)]);
  return sum * h;
}

template <typename F>
double adaptive_gl(const F& f, double a, double b, double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl16(f, a, mid);
  const double right = gl16(f, mid, b);
  if (std::abs(left + right - whole) <= tol) return left + right;
  if (depth >= 30)
    throw QuadratureError("potential quadrature did not reach tolerance " + fmt17(tol) +
                          " at maximal refinement");
  return adaptive_gl(f, a, mid, left, 0.5 * tol, depth + 1) +
         adaptive_gl(f, mid, b, right, 0.5 * tol, depth + 1);
}

Eigen::VectorXd rtilde_from(const Eigen::VectorXd& r, const Eigen::VectorXd& k) {
  Eigen::VectorXd v(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) v[i] = k[i] / sinh2_area(r[i]);
  return v;
}

bool admissible_u(const Eigen::VectorXd& u) {
  return u.allFinite() && (u.array() < 0.0).all();
}

// Builds the metric for a candidate u, treating any rejection (sign,
// underflow to r = 0) as an inadmissible state.
std::optional<PackingMetric> metric_from_u(const Eigen::VectorXd& u) {
  if (!admissible_u(u)) return std::nullopt;
  try {
    return PackingMetric::from_u(u);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<Eigen::VectorXd> eval_rhs(const RhsFn& rhs, const PackingMetric& m) {
  try {
    Eigen::VectorXd k = rhs(m);
    if (!k.allFinite()) return std::nullopt;
    return k;
  } catch (const std::exception&) {
    // Degenerate geometry at an extreme trial state; the step gets rejected.
    return std::nullopt;
  }
}

std::optional<PackingMetric> try_step(const PackingMetric& m, const RhsFn& rhs, double h,
                                      Integrator integrator) {
  const Eigen::VectorXd& u0 = m.u();
  auto k1 = eval_rhs(rhs, m);
  if (!k1) return std::nullopt;

  if (integrator == Integrator::euler) return metric_from_u(u0 + h * (*k1));

  auto stage = [&](const Eigen::VectorXd& u) -> std::optional<Eigen::VectorXd> {
    auto mm = metric_from_u(u);
    if (!mm) return std::nullopt;
    return eval_rhs(rhs, *mm);
  };
  auto k2 = stage(u0 + 0.5 * h * (*k1));
  if (!k2) return std::nullopt;
  auto k3 = stage(u0 + 0.5 * h * (*k2));
  if (!k3) return std::nullopt;
  auto k4 = stage(u0 + h * (*k3));
  if (!k4) return std::nullopt;
  return metric_from_u(u0 + (h / 6.0) * ((*k1) + 2.0 * (*k2) + 2.0 * (*k3) + (*k4)));
}

}  // namespace

const char* to_string(FlowKind k) {
  switch (k) {
    case FlowKind::ricci: return "ricci";
    case FlowKind::chow_luo: return "chow-luo";
    case FlowKind::calabi: return "calabi";
    case FlowKind::a_flow: return "a-flow";
  }
  return "?";
}

const char* to_string(Integrator k) { return k == Integrator::euler ? "euler" : "rk4"; }

const char* to_string(FlowOutcome k) {
  switch (k) {
    case FlowOutcome::converged: return "converged";
    case FlowOutcome::horizon_reached: return "horizon_reached";
    case FlowOutcome::diverged_to_zero_radius: return "diverged_to_zero_radius";
    case FlowOutcome::step_failure: return "step_failure";
  }
  return "?";
}

Eigen::VectorXd a_flow_rhs(const Surface& s, const PackingMetric& m, const AreaElement& ae) {
  Eigen::VectorXd k = gauss_curvature(s, m).values;
  for (Eigen::Index i = 0; i < k.size(); ++i) k[i] = -(k[i] / ae(m.r()[i]));
  return k;
}

Eigen::VectorXd ricci_rhs(const Surface& s, const PackingMetric& m) {
  return a_flow_rhs(s, m, AreaElement::sinh2());
}

Eigen::VectorXd chow_luo_rhs(const Surface& s, const PackingMetric& m) {
  return a_flow_rhs(s, m, AreaElement::unit());
}

Eigen::VectorXd calabi_rhs(const Surface& s, const PackingMetric& m) {
  Eigen::VectorXd k = gauss_curvature(s, m).values;
  return -curvature_jacobian(s, m).apply(k);
}

RhsFn make_rhs(const Surface& s, const FlowConfig& cfg) {
  switch (cfg.kind) {
    case FlowKind::ricci:
      return [&s](const PackingMetric& m) { return ricci_rhs(s, m); };
    case FlowKind::chow_luo:
      return [&s](const PackingMetric& m) { return chow_luo_rhs(s, m); };
    case FlowKind::calabi:
      return [&s](const PackingMetric& m) { return calabi_rhs(s, m); };
    case FlowKind::a_flow:
      return [&s, ae = cfg.area_element](const PackingMetric& m) { return a_flow_rhs(s, m, ae); };
  }
  throw std::invalid_argument("unknown flow kind");
}

StepResult step(const PackingMetric& m, const RhsFn& rhs, const FlowConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("step size must be positive");
  double h = cfg.dt;
  for (int halvings = 0; halvings <= 30; ++halvings, h *= 0.5) {
    auto next = try_step(m, rhs, h, cfg.integrator);
    if (next) return {std::move(*next), h};
  }
  throw StepFailureError("step rejected after 30 halvings from dt = " + fmt17(cfg.dt));
}

FlowTrace run_flow(const Surface& s, const PackingMetric& m0, const FlowConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!(cfg.t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (cfg.trace_every < 1) throw std::invalid_argument("trace_every must be >= 1");

  const RhsFn rhs = make_rhs(s, cfg);

  FlowTrace trace;
  trace.kind = cfg.kind;

  double t = 0.0;
  double potential = 0.0;
  PackingMetric m = m0;
  Eigen::VectorXd k = gauss_curvature(s, m).values;

  auto record = [&](double tt) {
    FlowSample sample;
    sample.t = tt;
    sample.r = m.r();
    sample.curvature = k;
    sample.k_inf = k.cwiseAbs().maxCoeff();
    sample.potential = potential;
    sample.r_min = m.r().minCoeff();
    sample.r_max = m.r().maxCoeff();
    Eigen::VectorXd rt = rtilde_from(m.r(), k);
    sample.rtilde_min = rt.minCoeff();
    sample.rtilde_max = rt.maxCoeff();
    trace.samples.push_back(std::move(sample));
  };

  record(0.0);
  if (k.cwiseAbs().maxCoeff() <= cfg.tol) {
    trace.outcome = FlowOutcome::converged;
    trace.final_metric = m;
    return trace;
  }

  long steps = 0;
  while (true) {
    const double remaining = cfg.t_max - t;
    if (remaining < 1e-12) {
      trace.outcome = FlowOutcome::horizon_reached;
      if (trace.samples.back().t < t) record(t);
      break;
    }
    FlowConfig local = cfg;
    local.dt = std::min(cfg.dt, remaining);

    StepResult sr;
    try {
      sr = step(m, rhs, local);
    } catch (const StepFailureError&) {
      // A step that cannot be salvaged by halving at a microscopic radius is
      // the discrete signature of collapse onto r = 0.
      trace.outcome = m.r().minCoeff() < kCollapseRadius ? FlowOutcome::diverged_to_zero_radius
                                                         : FlowOutcome::step_failure;
      if (trace.samples.back().t < t) record(t);
      break;
    }

    Eigen::VectorXd k_next;
    try {
      k_next = gauss_curvature(s, sr.metric).values;
      if (!k_next.allFinite()) throw std::domain_error("non-finite curvature");
    } catch (const std::exception&) {
      // The accepted state is too degenerate to evaluate (radii underflow the
      // supported range); keep the last healthy state as final.
      trace.outcome = sr.metric.r().minCoeff() < kCollapseRadius
                          ? FlowOutcome::diverged_to_zero_radius
                          : FlowOutcome::step_failure;
      if (trace.samples.back().t < t) record(t);
      break;
    }

    try {
      potential += ricci_potential(s, m.u(), sr.metric.u(), 1e-13);
    } catch (const std::exception&) {
      // Segment crosses degenerate territory; retain the previous value.
    }
    m = std::move(sr.metric);
    t += sr.dt_used;
    ++steps;
    k = std::move(k_next);

    bool terminal = true;
    if (m.r().minCoeff() < kZeroRadiusFloor)
      trace.outcome = FlowOutcome::diverged_to_zero_radius;
    else if (k.cwiseAbs().maxCoeff() <= cfg.tol)
      trace.outcome = FlowOutcome::converged;
    else if (cfg.t_max - t < 1e-12)
      trace.outcome = FlowOutcome::horizon_reached;
    else if (steps >= kMaxTotalSteps)
      trace.outcome = FlowOutcome::step_failure;
    else
      terminal = false;

    if (terminal || steps % cfg.trace_every == 0) record(t);
    if (terminal) break;
  }

  trace.final_metric = m;
  trace.steps_taken = static_cast<int>(steps);
  return trace;
}

double ricci_potential(const Surface& s, const Eigen::VectorXd& u_base, const Eigen::VectorXd& u,
                       double tol) {
  if (u_base.size() != s.num_vertices() || u.size() != s.num_vertices())
    throw std::invalid_argument("u vectors must have one entry per vertex");
  if (!admissible_u(u_base) || !admissible_u(u))
    throw std::invalid_argument("u-coordinates must be negative");

  const Eigen::VectorXd d = u - u_base;
  if (d.norm() == 0.0) return 0.0;

  auto integrand = [&](double x) {
    PackingMetric m = PackingMetric::from_u(u_base + x * d);
    return gauss_curvature(s, m).values.dot(d);
  };
  const double whole = gl16(integrand, 0.0, 1.0);
  return adaptive_gl(integrand, 0.0, 1.0, whole, tol, 0);
}

Eigen::VectorXd evolution_residual(const Surface& s, const FlowTrace& trace, double t) {
  if (trace.kind != FlowKind::ricci)
    throw std::invalid_argument("evolution residual is defined along the ricci flow");
  if (trace.samples.size() < 3)
    throw std::invalid_argument("trace has fewer than 3 samples");

  const auto& samples = trace.samples;
  size_t j = 1;
  for (size_t i = 1; i + 1 < samples.size(); ++i)
    if (std::abs(samples[i].t - t) < std::abs(samples[j].t - t)) j = i;
  const double span = samples[j + 1].t - samples[j - 1].t;
  if (std::abs(samples[j].t - t) > span)
    throw std::invalid_argument("t = " + fmt17(t) + " too close to trace boundary");

  const FlowSample& lo = samples[j - 1];
  const FlowSample& mid = samples[j];
  const FlowSample& hi = samples[j + 1];
  const double h1 = mid.t - lo.t, h2 = hi.t - mid.t;

  const Eigen::VectorXd rt_lo = rtilde_from(lo.r, lo.curvature);
  const Eigen::VectorXd rt_mid = rtilde_from(mid.r, mid.curvature);
  const Eigen::VectorXd rt_hi = rtilde_from(hi.r, hi.curvature);

  // 3-point derivative on a possibly non-uniform stencil.
  const Eigen::VectorXd numeric =
      (h1 * h1 * rt_hi - h2 * h2 * rt_lo + (h2 * h2 - h1 * h1) * rt_mid) / (h1 * h2 * (h1 + h2));

  const PackingMetric m = PackingMetric::from_radii(mid.r);
  const CurvatureJacobian jac = curvature_jacobian(s, m);
  const Eigen::VectorXd l_rt = jac.apply(rt_mid);

  Eigen::VectorXd analytic(mid.r.size());
  for (Eigen::Index i = 0; i < mid.r.size(); ++i)
    analytic[i] = -l_rt[i] / sinh2_area(mid.r[i]) + 2.0 * std::cosh(mid.r[i]) * rt_mid[i] * rt_mid[i];

  return numeric - analytic;
}

MonitorReport bound_monitor(const Surface& s, const FlowTrace& trace, double eps) {
  if (trace.kind != FlowKind::ricci)
    throw std::invalid_argument("bound monitor applies to ricci traces");
  if (trace.samples.empty()) throw std::invalid_argument("empty trace");

  const int n = static_cast<int>(trace.samples.front().r.size());
  const double slope = (s.max_degree() - 2) / 2.0;
  Eigen::VectorXd cosh0(n);
  for (int i = 0; i < n; ++i) cosh0[i] = std::cosh(trace.samples.front().r[i]);

  for (const FlowSample& sample : trace.samples) {
    for (int i = 0; i < n; ++i) {
      if (std::cosh(sample.r[i]) > cosh0[i] + slope * sample.t + eps)
        return {false, sample.t, i,
                "cosh r_" + std::to_string(i) + " = " + fmt17(std::cosh(sample.r[i])) +
                    " exceeds the linear bound " + fmt17(cosh0[i] + slope * sample.t) + " at t = " +
                    fmt17(sample.t)};
      const double k = sample.curvature[i];
      const double lo = (2.0 - s.vertex_degree(i)) * kPi;
      if (!(k < 2.0 * kPi) || !(k > lo))
        return {false, sample.t, i,
                "K_" + std::to_string(i) + " = " + fmt17(k) + " outside ((2-d)pi, 2pi) at t = " +
                    fmt17(sample.t)};
    }
  }
  return {true, 0.0, -1, "no violations"};
}

MonitorReport sign_monitor(const FlowTrace& trace, double overshoot) {
  if (trace.samples.empty()) throw std::invalid_argument("empty trace");
  const FlowSample& first = trace.samples.front();

  bool nonpositive;
  if (first.rtilde_max <= 0.0)
    nonpositive = true;
  else if (first.rtilde_min >= 0.0)
    nonpositive = false;
  else
    throw std::invalid_argument("initial curvature is not sign-definite");

  for (const FlowSample& sample : trace.samples) {
    if (nonpositive && sample.rtilde_max > overshoot)
      return {false, sample.t, -1,
              "max Rtilde = " + fmt17(sample.rtilde_max) + " overshoots zero at t = " + fmt17(sample.t)};
    if (!nonpositive && sample.rtilde_min < -overshoot)
      return {false, sample.t, -1,
              "min Rtilde = " + fmt17(sample.rtilde_min) + " undershoots zero at t = " + fmt17(sample.t)};
  }
  return {true, 0.0, -1, nonpositive ? "nonpositive pattern preserved" : "nonnegative pattern preserved"};
}

void write_trace_csv(const FlowTrace& trace, std::ostream& out) {
  if (trace.samples.empty()) return;
  const Eigen::Index n = trace.samples.front().r.size();
  out << "t";
  for (Eigen::Index i = 0; i < n; ++i) out << ",r_" << i;
  for (Eigen::Index i = 0; i < n; ++i) out << ",K_" << i;
  out << ",Kinf,F,rmin,rmax\n";
  for (const FlowSample& sample : trace.samples) {
    out << fmt17(sample.t);
    for (Eigen::Index i = 0; i < n; ++i) out << "," << fmt17(sample.r[i]);
    for (Eigen::Index i = 0; i < n; ++i) out << "," << fmt17(sample.curvature[i]);
    out << "," << fmt17(sample.k_inf) << "," << fmt17(sample.potential) << ","
        << fmt17(sample.r_min) << "," << fmt17(sample.r_max) << "\n";
  }
}

std::string trace_summary_json(const FlowTrace& trace, std::optional<double> fitted_rate) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"flow\": \"" << to_string(trace.kind) << "\",\n";
  out << "  \"outcome\": \"" << to_string(trace.outcome) << "\",\n";
  out << "  \"steps\": " << trace.steps_taken << ",\n";
  out << "  \"samples\": " << trace.samples.size() << ",\n";
  const FlowSample& last = trace.samples.back();
  out << "  \"t_final\": " << fmt17(last.t) << ",\n";
  out << "  \"final_radii\": [";
  for (Eigen::Index i = 0; i < last.r.size(); ++i) out << (i ? ", " : "") << fmt17(last.r[i]);
  out << "],\n";
  out << "  \"final_kinf\": " << fmt17(last.k_inf) << ",\n";
  out << "  \"final_potential\": " << fmt17(last.potential) << ",\n";
  out << "  \"fitted_rate\": " << (fitted_rate ? fmt17(*fitted_rate) : "null") << "\n";
  out << "}\n";
  return out.str();
}

}  // namespace hypflow
