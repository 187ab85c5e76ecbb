#pragma once

#include <Eigen/Core>
#include <array>

namespace hypflow {

// arccosh with the argument clamped to [1, inf); rounding can push values
// that are >= 1 analytically slightly below 1.
double acosh_clamped(double x);

// Length of the edge between circles of radius r_i and r_j meeting at
// intersection angle phi:  cosh l = cosh r_i cosh r_j + sinh r_i sinh r_j cos phi.
// phi = 0 gives exact tangency, l = r_i + r_j.
double edge_length(double r_i, double r_j, double phi);

// Corner angles of the hyperbolic triangle with side lengths (l1, l2, l3);
// angles[m] is the angle opposite side lm. Requires strict triangle
// inequalities. The cosine argument is clamped to [-1, 1].
std::array<double, 3> corner_angles(double l1, double l2, double l3);

// Hyperbolic area, pi minus the angle sum. Throws if the sum reaches pi.
double triangle_area(const std::array<double, 3>& angles);

struct TriangleGeom {
  std::array<double, 3> lengths;  // lengths[c]: side opposite corner c
  std::array<double, 3> angles;   // angles[c]: angle at corner c
  double area = 0.0;              // pi - angle sum
};

// Full geometry of the triangle packed with radii r[0..2] and weights
// phi[c] on the side opposite corner c.
TriangleGeom triangle_geom(const std::array<double, 3>& r, const std::array<double, 3>& phi);

// Analytic partials M(a, b) = d angle_a / d r_b, by the chain rule through
// the cosine laws. Matches central finite differences to ~1e-5 relative.
Eigen::Matrix3d angle_partials(const std::array<double, 3>& r, const std::array<double, 3>& phi);

}  // namespace hypflow
