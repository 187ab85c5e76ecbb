#include "hypflow/metric.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "hypflow/format.hpp"

namespace hypflow {

double u_from_r(double r) {
  // ln tanh(r/2) = log1p(-e^{-r}) - log1p(e^{-r})
  double e = std::exp(-r);
  return std::log1p(-e) - std::log1p(e);
}

double r_from_u(double u) {
  // 2 atanh(e^u) = log1p(e^u) - ln(-expm1(u))
  return std::log1p(std::exp(u)) - std::log(-std::expm1(u));
}

namespace {

std::uint64_t fnv1a(const Eigen::VectorXd& v) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::uint64_t bits;
    double x = v[i];
    std::memcpy(&bits, &x, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace

PackingMetric PackingMetric::from_radii(const Eigen::VectorXd& r) {
  if (r.size() == 0) throw std::invalid_argument("empty radius vector");
  PackingMetric m;
  m.r_ = r;
  m.u_.resize(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !std::isfinite(r[i]))
      throw std::invalid_argument("non-positive radius " + fmt17(r[i]) + " at vertex " +
                                  std::to_string(i));
    m.u_[i] = u_from_r(r[i]);
  }
  m.tag_ = fnv1a(m.r_);
  return m;
}

PackingMetric PackingMetric::from_radii(const std::vector<double>& r) {
  return from_radii(Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size())));
}

PackingMetric PackingMetric::from_u(const Eigen::VectorXd& u) {
  if (u.size() == 0) throw std::invalid_argument("empty u vector");
  PackingMetric m;
  m.u_ = u;
  m.r_.resize(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!(u[i] < 0.0) || !std::isfinite(u[i]))
      throw std::invalid_argument("u-coordinate " + fmt17(u[i]) + " at vertex " +
                                  std::to_string(i) + " is not negative");
    m.r_[i] = r_from_u(u[i]);
    if (!(m.r_[i] > 0.0))  // exp(u) underflow for extremely negative u
      throw std::invalid_argument("u-coordinate " + fmt17(u[i]) + " at vertex " +
                                  std::to_string(i) + " maps below the representable radius range");
  }
  m.tag_ = fnv1a(m.r_);
  return m;
}

}  // namespace hypflow
