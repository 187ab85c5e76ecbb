#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypflow/hypgeom.hpp"
#include "support/oracles.hpp"
#include "support/testutil.hpp"

using namespace hypflow;
namespace nums = std::numbers;

namespace {

// Central differences of the corner angles with respect to one radius.
Eigen::Vector3d fd_angles(const std::array<double, 3>& r, const std::array<double, 3>& phi, int b,
                          double h = 1e-6) {
  auto shifted = [&](double delta) {
    std::array<double, 3> rr = r;
    rr[static_cast<size_t>(b)] += delta;
    const TriangleGeom g = triangle_geom(rr, phi);
    return Eigen::Vector3d(g.angles[0], g.angles[1], g.angles[2]);
  };
  return (shifted(h) - shifted(-h)) / (2.0 * h);
}

// Richardson-extrapolated differences, O(h^4) truncation; a sharper oracle
// for spiky triangles where the plain h^2 term dominates.
Eigen::Vector3d fd_angles_richardson(const std::array<double, 3>& r,
                                     const std::array<double, 3>& phi, int b) {
  const double h = 1e-4 * std::max(1.0, r[static_cast<size_t>(b)]);
  return (4.0 * fd_angles(r, phi, b, h / 2.0) - fd_angles(r, phi, b, h)) / 3.0;
}

}  // namespace

TEST_CASE("edge_length tangency and orthogonal cases") {
  CHECK(edge_length(1.0, 1.0, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(edge_length(0.5, 2.0, 0.0) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(edge_length(1.0, 1.0, nums::pi / 2.0) ==
        doctest::Approx(oracle::kLenUnitRadiiOrthogonal).epsilon(1e-14));
}

TEST_CASE("edge_length argument validation") {
  CHECK_THROWS_AS(edge_length(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(edge_length(1.0, -2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(edge_length(1.0, 1.0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(edge_length(1.0, 1.0, 1.6), std::invalid_argument);
}

TEST_CASE("edge_length bounds and monotonicity") {
  auto rng = hft::make_rng(10);
  std::uniform_real_distribution<double> rad(0.05, 6.0), wt(0.0, nums::pi / 2.0);
  for (int it = 0; it < 2000; ++it) {
    const double ri = rad(rng), rj = rad(rng), phi = wt(rng);
    const double l = edge_length(ri, rj, phi);
    CHECK(l > std::abs(ri - rj));
    CHECK(l <= ri + rj + 1e-12);
    // increasing in each radius, decreasing in the weight
    CHECK(edge_length(ri + 1e-3, rj, phi) > l);
    CHECK(edge_length(ri, rj + 1e-3, phi) > l);
    if (phi + 1e-3 <= nums::pi / 2.0) CHECK(edge_length(ri, rj, phi + 1e-3) <= l);
  }
}

TEST_CASE("corner_angles on the side-2 equilateral triangle") {
  const auto a = corner_angles(2.0, 2.0, 2.0);
  for (double x : a) CHECK(x == doctest::Approx(oracle::kEquilateralSide2Angle).epsilon(1e-14));
  CHECK(a[0] + a[1] + a[2] == doctest::Approx(3.0 * oracle::kEquilateralSide2Angle).epsilon(1e-14));
  CHECK(a[0] + a[1] + a[2] < nums::pi);
}

TEST_CASE("corner_angles symmetry for random equilateral triangles") {
  auto rng = hft::make_rng(11);
  std::uniform_real_distribution<double> len(0.05, 8.0);
  for (int it = 0; it < 200; ++it) {
    const double l = len(rng);
    const auto a = corner_angles(l, l, l);
    CHECK(a[0] == doctest::Approx(a[1]).epsilon(1e-13));
    CHECK(a[1] == doctest::Approx(a[2]).epsilon(1e-13));
  }
}

TEST_CASE("corner_angles rejects violated triangle inequalities") {
  CHECK_THROWS_AS(corner_angles(1.0, 1.0, 2.5), std::domain_error);
  CHECK_THROWS_AS(corner_angles(5.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(corner_angles(-1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("triangle_area") {
  CHECK(triangle_area({nums::pi / 3, nums::pi / 3, nums::pi / 3 - 0.1}) ==
        doctest::Approx(0.1).epsilon(1e-12));
  const auto a = corner_angles(2.0, 2.0, 2.0);
  CHECK(triangle_area(a) == doctest::Approx(oracle::kTetraFaceArea).epsilon(1e-14));
  CHECK_THROWS_AS(triangle_area({nums::pi / 3, nums::pi / 3, nums::pi / 3}), std::domain_error);
  CHECK_THROWS_AS(triangle_area({0.0, 0.1, 0.1}), std::domain_error);
}

TEST_CASE("packed triangles always satisfy strict triangle inequalities") {
  auto rng = hft::make_rng(12);
  std::uniform_real_distribution<double> logr(std::log(1e-3), std::log(10.0));
  std::uniform_real_distribution<double> wt(0.0, nums::pi / 2.0);
  for (int it = 0; it < 2000; ++it) {
    std::array<double, 3> r{std::exp(logr(rng)), std::exp(logr(rng)), std::exp(logr(rng))};
    std::array<double, 3> phi{wt(rng), wt(rng), wt(rng)};
    const TriangleGeom g = triangle_geom(r, phi);  // throws if inequalities fail
    CHECK(g.lengths[0] < g.lengths[1] + g.lengths[2]);
    CHECK(g.lengths[1] < g.lengths[0] + g.lengths[2]);
    CHECK(g.lengths[2] < g.lengths[0] + g.lengths[1]);
    for (double th : g.angles) {
      CHECK(th > 0.0);
      CHECK(th < nums::pi);
    }
    CHECK(g.angles[0] + g.angles[1] + g.angles[2] < nums::pi);
    CHECK(g.area > 0.0);
    CHECK(g.area < nums::pi);
    CHECK(g.area == doctest::Approx(nums::pi - g.angles[0] - g.angles[1] - g.angles[2]));
  }
}

TEST_CASE("corner angle decays as the incident radius grows") {
  double prev = nums::pi;
  for (double ri : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const TriangleGeom g = triangle_geom({ri, 1.0, 1.0}, {0.0, 0.0, 0.0});
    CHECK(g.angles[0] < prev);
    prev = g.angles[0];
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("angle_partials is cyclic-symmetric on symmetric input") {
  const Eigen::Matrix3d m = angle_partials({1.3, 1.3, 1.3}, {0.2, 0.2, 0.2});
  // invariant under simultaneous cyclic permutation of rows and columns
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(m(a, b) == doctest::Approx(m((a + 1) % 3, (b + 1) % 3)).epsilon(1e-12));
}

TEST_CASE("angle_partials matches finite differences") {
  {
    const std::array<double, 3> r{1.0, 1.0, 1.0}, phi{0.0, 0.0, 0.0};
    const Eigen::Matrix3d m = angle_partials(r, phi);
    for (int b = 0; b < 3; ++b) {
      const Eigen::Vector3d fd = fd_angles(r, phi, b);
      for (int a = 0; a < 3; ++a) CHECK(hft::close_rel(m(a, b), fd[a], 1e-5, 1e-9));
    }
  }
  auto rng = hft::make_rng(13);
  std::uniform_real_distribution<double> rad(0.2, 3.0), wt(0.0, nums::pi / 2.0);
  for (int it = 0; it < 200; ++it) {
    const std::array<double, 3> r{rad(rng), rad(rng), rad(rng)};
    const std::array<double, 3> phi{wt(rng), wt(rng), wt(rng)};
    const Eigen::Matrix3d m = angle_partials(r, phi);
    for (int b = 0; b < 3; ++b) {
      const Eigen::Vector3d fd = fd_angles(r, phi, b);
      for (int a = 0; a < 3; ++a) CHECK(hft::close_rel(m(a, b), fd[a], 1e-5, 1e-8));
    }
  }
}

TEST_CASE("angle_partials over a wide radius range, Richardson oracle") {
  // Plain h = 1e-6 central differences lose accuracy on spiky triangles
  // (the h^2 truncation term carries the third derivative), so the wide
  // sweep uses an extrapolated oracle. The tolerance is 1e-4 here: angles
  // at high radius ratios are acos values within ~1e-7 of the branch point,
  // where the evaluation itself carries noise that any difference quotient
  // amplifies by 1/h.
  auto rng = hft::make_rng(14);
  std::uniform_real_distribution<double> logr(std::log(0.1), std::log(6.0));
  std::uniform_real_distribution<double> wt(0.0, nums::pi / 2.0);
  for (int it = 0; it < 300; ++it) {
    const std::array<double, 3> r{std::exp(logr(rng)), std::exp(logr(rng)), std::exp(logr(rng))};
    const std::array<double, 3> phi{wt(rng), wt(rng), wt(rng)};
    const Eigen::Matrix3d m = angle_partials(r, phi);
    for (int b = 0; b < 3; ++b) {
      const Eigen::Vector3d fd = fd_angles_richardson(r, phi, b);
      for (int a = 0; a < 3; ++a) CHECK(hft::close_rel(m(a, b), fd[a], 1e-4, 1e-8));
    }
  }
}

TEST_CASE("angle_partials row sums match the uniform scaling direction") {
  const std::array<double, 3> r{0.9, 1.4, 2.1}, phi{0.1, 0.7, 1.2};
  const Eigen::Matrix3d m = angle_partials(r, phi);
  const double eps = 1e-6;
  auto angles_at = [&](double d) {
    const TriangleGeom g = triangle_geom({r[0] + d, r[1] + d, r[2] + d}, phi);
    return Eigen::Vector3d(g.angles[0], g.angles[1], g.angles[2]);
  };
  const Eigen::Vector3d dir = (angles_at(eps) - angles_at(-eps)) / (2.0 * eps);
  for (int a = 0; a < 3; ++a) CHECK(m.row(a).sum() == doctest::Approx(dir[a]).epsilon(1e-5));
}

TEST_CASE("acosh_clamped guards arguments below one") {
  CHECK(acosh_clamped(1.0) == 0.0);
  CHECK(acosh_clamped(1.0 - 1e-18) == 0.0);
  CHECK(acosh_clamped(std::cosh(2.0)) == doctest::Approx(2.0).epsilon(1e-14));
}
