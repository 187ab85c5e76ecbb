#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hypflow/curvature.hpp"
#include "hypflow/metric.hpp"
#include "hypflow/surface.hpp"

namespace hft {

// Deterministic by default; HYPFLOW_SEED overrides.
std::uint64_t test_seed();
std::mt19937_64 make_rng(std::uint64_t salt = 0);

std::string fixture_path(const std::string& name);
hypflow::Surface load_fixture(const std::string& name);
std::string read_file(const std::string& path);

// Uniform radii in (lo, hi).
hypflow::PackingMetric random_metric(int n, std::mt19937_64& rng, double lo, double hi);

// Copy of s with per-edge weights replaced.
hypflow::Surface with_weights(hypflow::Surface s, const std::vector<double>& weights);
std::vector<double> random_weights(int count, std::mt19937_64& rng);

// Central-difference Jacobian of K with respect to u.
Eigen::MatrixXd fd_curvature_jacobian(const hypflow::Surface& s, const hypflow::PackingMetric& m,
                                      double h = 1e-6);

// One round of combinatorial 1->4 subdivision (simple meshes only, all
// weights zero); returns .cpm text ready for parsing.
std::string subdivide_cpm(const hypflow::Surface& s);

inline bool close_rel(double a, double b, double rel, double abs_floor) {
  const double d = std::abs(a - b);
  return d <= rel * std::max(std::abs(a), std::abs(b)) || d <= abs_floor;
}

}  // namespace hft
