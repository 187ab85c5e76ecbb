#pragma once

#include <Eigen/Core>
#include <vector>

#include "hypflow/curvature.hpp"
#include "hypflow/flow.hpp"
#include "hypflow/metric.hpp"
#include "hypflow/surface.hpp"

namespace hypflow {

enum class NewtonStatus { converged, max_iter, line_search_failure, singular_jacobian };

const char* to_string(NewtonStatus s);

struct NewtonIterate {
  Eigen::VectorXd u;
  double k_inf = 0.0;
};

struct NewtonReport {
  std::vector<NewtonIterate> iterates;  // includes the start point
  NewtonStatus status = NewtonStatus::max_iter;
  PackingMetric final_metric;

  int iterations() const { return static_cast<int>(iterates.size()) - 1; }
};

// Damped Newton iteration for the zero-curvature metric: solve L delta = -K
// and backtrack the step until u stays negative and max |K| strictly
// decreases. Singular Cholesky factorizations are reported, never patched,
// since L is positive definite for every valid metric.
NewtonReport newton_zero_curvature(const Surface& s, const PackingMetric& m0, double tol = 1e-10,
                                   int max_iter = 50);

struct SpectrumReport {
  Eigen::VectorXd eigenvalues;   // ascending, of (1/2pi) S^{-1/2} L S^{-1/2}
  double predicted_rate = 0.0;   // smallest eigenvalue
};

// Stability spectrum of the linearized flow at a (near) zero-curvature
// metric m_star: eigenvalues of (1/2pi) Sigma^{-1/2} L Sigma^{-1/2} with
// Sigma = diag(sinh^2 r_i). All positive at a solved metric; the smallest
// one predicts the exponential decay rate of the curvature norm.
SpectrumReport stability_spectrum(const Surface& s, const PackingMetric& m_star,
                                  double curvature_tol = 1e-6);

// Least-squares slope of -ln max|K(t)| over the trailing half (by time) of
// a trace; positive for converged runs. Requires at least 20 samples in the
// fit window.
double rate_fit(const FlowTrace& trace);

}  // namespace hypflow
