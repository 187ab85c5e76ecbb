#pragma once

#include <cmath>
#include <functional>
#include <numbers>

namespace hypflow {

// Area of the hyperbolic disk of radius r.
inline double disk_area(double r) {
  double s = std::sinh(r / 2.0);
  return 4.0 * std::numbers::pi * s * s;
}

// 2 pi sinh^2 r, the denominator that turns K into the flow velocity.
inline double sinh2_area(double r) {
  double s = std::sinh(r);
  return 2.0 * std::numbers::pi * s * s;
}

// A positive per-vertex "area element" A(r) used as the denominator of a
// generalized curvature K/A. Canonical choices:
//   unit  -> 1            (classical curvature)
//   disk  -> 4 pi sinh^2(r/2)
//   sinh2 -> 2 pi sinh^2 r
// Custom elements supply any positive evaluator; evaluation throws if the
// result is not a positive finite number.
struct AreaElement {
  enum class Kind { unit, disk, sinh2, custom };

  Kind kind = Kind::sinh2;
  std::function<double(double)> eval;  // custom only

  static AreaElement unit() { return {Kind::unit, nullptr}; }
  static AreaElement disk() { return {Kind::disk, nullptr}; }
  static AreaElement sinh2() { return {Kind::sinh2, nullptr}; }
  static AreaElement custom(std::function<double(double)> f) { return {Kind::custom, std::move(f)}; }

  double operator()(double r) const;
};

const char* to_string(AreaElement::Kind k);

}  // namespace hypflow
