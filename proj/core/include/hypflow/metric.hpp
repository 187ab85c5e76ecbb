#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace hypflow {

// u = ln tanh(r/2), the conformal coordinate. Maps (0, inf) onto (-inf, 0);
// computed via log1p/expm1 so the round trip is exact to machine precision
// across the whole range.
double u_from_r(double r);
double r_from_u(double u);

// Per-vertex circle packing radii together with their u-coordinates.
// Immutable; the tag is a value hash used to match derived quantities
// (curvature vectors) to the metric they were evaluated at.
class PackingMetric {
 public:
  PackingMetric() = default;

  static PackingMetric from_radii(const Eigen::VectorXd& r);
  static PackingMetric from_radii(const std::vector<double>& r);
  static PackingMetric from_u(const Eigen::VectorXd& u);

  const Eigen::VectorXd& r() const { return r_; }
  const Eigen::VectorXd& u() const { return u_; }
  int size() const { return static_cast<int>(r_.size()); }
  std::uint64_t tag() const { return tag_; }

 private:
  Eigen::VectorXd r_, u_;
  std::uint64_t tag_ = 0;
};

}  // namespace hypflow
