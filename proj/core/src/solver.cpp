#include "hypflow/solver.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hypflow/format.hpp"

namespace hypflow {

const char* to_string(NewtonStatus s) {
  switch (s) {
    case NewtonStatus::converged: return "converged";
    case NewtonStatus::max_iter: return "max_iter";
    case NewtonStatus::line_search_failure: return "line_search_failure";
    case NewtonStatus::singular_jacobian: return "singular_jacobian";
  }
  return "?";
}

NewtonReport newton_zero_curvature(const Surface& s, const PackingMetric& m0, double tol,
                                   int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 0) throw std::invalid_argument("max_iter must be non-negative");

  NewtonReport report;
  PackingMetric m = m0;
  Eigen::VectorXd k = gauss_curvature(s, m).values;
  double k_inf = k.cwiseAbs().maxCoeff();
  report.iterates.push_back({m.u(), k_inf});

  for (int it = 0; it < max_iter; ++it) {
    if (k_inf <= tol) break;

    Eigen::VectorXd delta;
    try {
      delta = curvature_jacobian(s, m).solve(-k);
    } catch (const SingularJacobianError&) {
      report.status = NewtonStatus::singular_jacobian;
      report.final_metric = m;
      return report;
    }

    // Backtrack: the full step is halved while it leaves the admissible cone
    // or fails to decrease max |K|.
    double lambda = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt, lambda *= 0.5) {
      Eigen::VectorXd u_trial = m.u() + lambda * delta;
      if (!(u_trial.array() < 0.0).all()) continue;
      PackingMetric trial;
      try {
        trial = PackingMetric::from_u(u_trial);
      } catch (const std::exception&) {
        continue;
      }
      Eigen::VectorXd k_trial;
      try {
        k_trial = gauss_curvature(s, trial).values;
      } catch (const std::exception&) {
        continue;
      }
      const double k_trial_inf = k_trial.cwiseAbs().maxCoeff();
      if (!std::isfinite(k_trial_inf) || k_trial_inf >= k_inf) continue;

      m = std::move(trial);
      k = std::move(k_trial);
      k_inf = k_trial_inf;
      report.iterates.push_back({m.u(), k_inf});
      accepted = true;
      break;
    }
    if (!accepted) {
      report.status = NewtonStatus::line_search_failure;
      report.final_metric = m;
      return report;
    }
  }

  report.status = k_inf <= tol ? NewtonStatus::converged : NewtonStatus::max_iter;
  report.final_metric = m;
  return report;
}

SpectrumReport stability_spectrum(const Surface& s, const PackingMetric& m_star,
                                  double curvature_tol) {
  const double k_inf = gauss_curvature(s, m_star).values.cwiseAbs().maxCoeff();
  if (k_inf > curvature_tol)
    throw std::invalid_argument("metric is not at zero curvature: max |K| = " + fmt17(k_inf) +
                                " exceeds " + fmt17(curvature_tol));

  const Eigen::MatrixXd l = curvature_jacobian(s, m_star).to_dense();
  const int n = static_cast<int>(l.rows());
  Eigen::VectorXd inv_sinh(n);
  for (int i = 0; i < n; ++i) inv_sinh[i] = 1.0 / std::sinh(m_star.r()[i]);

  Eigen::MatrixXd sym =
      (inv_sinh.asDiagonal() * l * inv_sinh.asDiagonal()) / (2.0 * std::numbers::pi);
  sym = 0.5 * (sym + sym.transpose()).eval();  // exact symmetry for the eigensolver

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");

  SpectrumReport report;
  report.eigenvalues = eig.eigenvalues();  // ascending
  report.predicted_rate = report.eigenvalues[0];
  return report;
}

double rate_fit(const FlowTrace& trace) {
  if (trace.outcome != FlowOutcome::converged)
    throw std::invalid_argument("rate fit requires a converged trace, got outcome " +
                                std::string(to_string(trace.outcome)));
  if (trace.samples.size() < 2) throw std::invalid_argument("trace too short for a rate fit");
  const double t_first = trace.samples.front().t;
  const double t_last = trace.samples.back().t;
  const double t_mid = 0.5 * (t_first + t_last);

  // Fit -ln max|K| against t over the trailing half.
  std::vector<std::pair<double, double>> pts;
  for (const FlowSample& sample : trace.samples)
    if (sample.t >= t_mid && sample.k_inf > 0.0) pts.push_back({sample.t, -std::log(sample.k_inf)});
  if (pts.size() < 20)
    throw std::invalid_argument("insufficient samples in the terminal regime: " +
                                std::to_string(pts.size()) + " < 20");

  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (auto [t, y] : pts) {
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double n = static_cast<double>(pts.size());
  const double denom = n * stt - st * st;
  if (denom <= 0.0) throw std::invalid_argument("degenerate time axis in rate fit");
  return (n * sty - st * sy) / denom;
}

}  // namespace hypflow
