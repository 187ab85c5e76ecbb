#include "hypflow/area_element.hpp"

#include <stdexcept>

#include "hypflow/format.hpp"

namespace hypflow {

const char* to_string(AreaElement::Kind k) {
  switch (k) {
    case AreaElement::Kind::unit: return "unit";
    case AreaElement::Kind::disk: return "disk";
    case AreaElement::Kind::sinh2: return "sinh2";
    case AreaElement::Kind::custom: return "custom";
  }
  return "?";
}

double AreaElement::operator()(double r) const {
  double a;
  switch (kind) {
    case Kind::unit: a = 1.0; break;
    case Kind::disk: a = disk_area(r); break;
    case Kind::sinh2: a = sinh2_area(r); break;
    case Kind::custom:
      if (!eval) throw std::invalid_argument("custom area element has no evaluator");
      a = eval(r);
      break;
    default: a = 0.0;
  }
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::domain_error("area element evaluated to " + fmt17(a) + " at r = " + fmt17(r) +
                            "; it must be positive");
  return a;
}

}  // namespace hypflow
