#pragma once

#include "lieorbit/numerics.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

namespace lieorbit {

/// Deformation parameter r in (0, +inf].
class DeformationParameter {
 public:
  static DeformationParameter finite(double r);
  static DeformationParameter infinity() { return DeformationParameter(std::numeric_limits<double>::infinity()); }
  /// Accepts a positive decimal or "inf".
  static DeformationParameter parse(std::string_view text);

  [[nodiscard]] bool is_infinite() const { return std::isinf(value_); }
  /// Finite value; throws DomainError at infinity.
  [[nodiscard]] double value() const;
  /// (r - 1) / (r + 1), or 1 at infinity.
  [[nodiscard]] double psi_coefficient() const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const DeformationParameter&, const DeformationParameter&) = default;
  friend auto operator<=>(const DeformationParameter& a, const DeformationParameter& b) {
    return a.value_ <=> b.value_;
  }

 private:
  explicit DeformationParameter(double v) : value_(v) {}
  double value_;
};

enum class OrbitKind { flag, adjoint, deformed, semidirect };

std::string kind_name(OrbitKind k);
OrbitKind parse_kind(std::string_view text);

/// A point on one of the orbits, together with the data it was built from.
///
/// For flag / adjoint / deformed samples: point = base + psi_r(fiber_source),
/// base = Ad(k) H, fiber_source = Ad(k) X with X in n_H^+ (psi_1 = id).
/// For semidirect samples: point = base + mu(base ^ fiber_source), with
/// fiber_source in the representation space.
struct OrbitSample {
  OrbitKind kind = OrbitKind::flag;
  DeformationParameter r = DeformationParameter::finite(1.0);
  int base_tag = 0;
  int fiber_tag = 0;
  Vec k_params;      // coordinates of the exponents A_1..A_m on the k basis
  Vec fiber_coeffs;  // coordinates of the fiber element on its basis
  Vec base;
  Vec fiber_source;
  Vec point;
  bool tagged = true;
};

}  // namespace lieorbit
