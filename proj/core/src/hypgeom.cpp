#include "hypflow/hypgeom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hypflow/format.hpp"

namespace hypflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

void check_radius(double r, const char* name) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument(std::string(name) + " must be a positive radius, got " + fmt17(r));
}

void check_weight(double phi) {
  if (!(phi >= 0.0 && phi <= kHalfPi))
    throw std::invalid_argument("weight " + fmt17(phi) + " outside [0, pi/2]");
}

void check_lengths(double l1, double l2, double l3) {
  if (!(l1 > 0.0 && l2 > 0.0 && l3 > 0.0))
    throw std::domain_error("side lengths must be positive");
  if (!(l1 < l2 + l3 && l2 < l1 + l3 && l3 < l1 + l2))
    throw std::domain_error("triangle inequality violated for sides (" + fmt17(l1) + ", " +
                            fmt17(l2) + ", " + fmt17(l3) + ")");
}

double clamped_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

}  // namespace

double acosh_clamped(double x) {
  x = std::max(x, 1.0);
  return std::log(x + std::sqrt(x * x - 1.0));
}

double edge_length(double r_i, double r_j, double phi) {
  check_radius(r_i, "r_i");
  check_radius(r_j, "r_j");
  check_weight(phi);
  double c = std::cosh(r_i) * std::cosh(r_j) + std::sinh(r_i) * std::sinh(r_j) * std::cos(phi);
  return acosh_clamped(c);
}

std::array<double, 3> corner_angles(double l1, double l2, double l3) {
  check_lengths(l1, l2, l3);
  const double ch1 = std::cosh(l1), ch2 = std::cosh(l2), ch3 = std::cosh(l3);
  const double sh1 = std::sinh(l1), sh2 = std::sinh(l2), sh3 = std::sinh(l3);
  return {
      clamped_acos((ch2 * ch3 - ch1) / (sh2 * sh3)),
      clamped_acos((ch1 * ch3 - ch2) / (sh1 * sh3)),
      clamped_acos((ch1 * ch2 - ch3) / (sh1 * sh2)),
  };
}

double triangle_area(const std::array<double, 3>& angles) {
  double sum = 0.0;
  for (double a : angles) {
    if (!(a > 0.0 && a < kPi))
      throw std::domain_error("corner angle " + fmt17(a) + " outside (0, pi)");
    sum += a;
  }
  if (!(sum < kPi))
    throw std::domain_error("angle sum " + fmt17(sum) + " is not below pi (degenerate triangle)");
  return kPi - sum;
}

TriangleGeom triangle_geom(const std::array<double, 3>& r, const std::array<double, 3>& phi) {
  TriangleGeom g;
  // lengths[c] joins the two corners other than c.
  g.lengths = {edge_length(r[1], r[2], phi[0]), edge_length(r[0], r[2], phi[1]),
               edge_length(r[0], r[1], phi[2])};
  g.angles = corner_angles(g.lengths[0], g.lengths[1], g.lengths[2]);
  g.area = triangle_area(g.angles);
  return g;
}

Eigen::Matrix3d angle_partials(const std::array<double, 3>& r, const std::array<double, 3>& phi) {
  const TriangleGeom g = triangle_geom(r, phi);

  std::array<double, 3> ch, sh;
  for (int m = 0; m < 3; ++m) {
    ch[static_cast<size_t>(m)] = std::cosh(g.lengths[static_cast<size_t>(m)]);
    sh[static_cast<size_t>(m)] = std::sinh(g.lengths[static_cast<size_t>(m)]);
  }

  // d angle_a / d l_m. With k_a = sinh(l_a) / (sin(angle_a) sinh(l_b) sinh(l_c)):
  //   d theta_a / d l_a = k_a
  //   d theta_a / d l_b = -k_a cos(theta_c),  d theta_a / d l_c = -k_a cos(theta_b).
  Eigen::Matrix3d dtheta_dl;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    const double s = std::sin(g.angles[static_cast<size_t>(a)]);
    if (s <= 0.0) throw std::domain_error("degenerate triangle: zero corner angle");
    const double k = sh[static_cast<size_t>(a)] / (s * sh[static_cast<size_t>(b)] * sh[static_cast<size_t>(c)]);
    dtheta_dl(a, a) = k;
    dtheta_dl(a, b) = -k * std::cos(g.angles[static_cast<size_t>(c)]);
    dtheta_dl(a, c) = -k * std::cos(g.angles[static_cast<size_t>(b)]);
  }

  // d l_m / d r_p: side m joins the two corners other than m, so it only
  // responds to their radii. From the cosine law,
  //   d l_m / d r_p = (sinh r_p cosh r_q + cosh r_p sinh r_q cos phi_m) / sinh l_m.
  Eigen::Matrix3d dl_dr = Eigen::Matrix3d::Zero();
  for (int m = 0; m < 3; ++m) {
    const int p = (m + 1) % 3, q = (m + 2) % 3;
    const double rp = r[static_cast<size_t>(p)], rq = r[static_cast<size_t>(q)];
    const double cw = std::cos(phi[static_cast<size_t>(m)]);
    dl_dr(m, p) = (std::sinh(rp) * std::cosh(rq) + std::cosh(rp) * std::sinh(rq) * cw) /
                  sh[static_cast<size_t>(m)];
    dl_dr(m, q) = (std::sinh(rq) * std::cosh(rp) + std::cosh(rq) * std::sinh(rp) * cw) /
                  sh[static_cast<size_t>(m)];
  }

  return dtheta_dl * dl_dr;
}

}  // namespace hypflow
