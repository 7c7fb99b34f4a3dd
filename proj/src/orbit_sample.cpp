#include "lieorbit/orbit_sample.hpp"

#include "lieorbit/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace lieorbit {

DeformationParameter DeformationParameter::finite(double r) {
  if (!(r > 0.0) || std::isinf(r)) throw DomainError("deformation parameter must be a finite r > 0");
  return DeformationParameter(r);
}

DeformationParameter DeformationParameter::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "+inf") return infinity();
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigurationError("cannot parse deformation parameter '" + s + "'");
  }
  if (!(v > 0.0) || std::isinf(v)) throw ConfigurationError("deformation parameter must be > 0, got '" + s + "'");
  return DeformationParameter(v);
}

double DeformationParameter::value() const {
  if (is_infinite()) throw DomainError("operation requires a finite deformation parameter");
  return value_;
}

double DeformationParameter::psi_coefficient() const {
  if (is_infinite()) return 1.0;
  return (value_ - 1.0) / (value_ + 1.0);
}

std::string DeformationParameter::str() const {
  if (is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

std::string kind_name(OrbitKind k) {
  switch (k) {
    case OrbitKind::flag: return "flag";
    case OrbitKind::adjoint: return "adjoint";
    case OrbitKind::deformed: return "deformed";
    case OrbitKind::semidirect: return "semidirect";
  }
  return "?";
}

OrbitKind parse_kind(std::string_view text) {
  if (text == "flag") return OrbitKind::flag;
  if (text == "adjoint") return OrbitKind::adjoint;
  if (text == "deformed") return OrbitKind::deformed;
  if (text == "semidirect") return OrbitKind::semidirect;
  throw ConfigurationError("unknown orbit kind '" + std::string(text) + "'");
}

}  // namespace lieorbit
