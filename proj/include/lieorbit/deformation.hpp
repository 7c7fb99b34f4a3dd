#pragma once

#include "lieorbit/cartan.hpp"
#include "lieorbit/orbit_sample.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace lieorbit {

/// The algebra g_r: the same vector space as g with bracket
/// [X, Y]_r = T_r [T_r^{-1} X, T_r^{-1} Y], where T_r = r on k and 1 on s.
/// At r = inf only psi_r (then X + theta X) is available.
struct DeformationContext {
  std::shared_ptr<const CartanData> cartan;
  DeformationParameter r = DeformationParameter::finite(1.0);
  Mat T_r;      // empty at r = inf
  Mat T_r_inv;  // empty at r = inf
  std::vector<Mat> ad_basis_r;  // deformed structure tensor, same layout as LieAlgebraData::ad_basis
  Mat psi_r;

  [[nodiscard]] const CartanData& cd() const { return *cartan; }
  [[nodiscard]] const LieAlgebraData& alg() const { return cartan->alg(); }
  [[nodiscard]] int dim() const { return cartan->dim(); }
};

DeformationContext make_deformation_context(std::shared_ptr<const CartanData> cartan, DeformationParameter r);

Vec bracket_r(const DeformationContext& ctx, const Vec& x, const Vec& y);
Mat ad_r(const DeformationContext& ctx, const Vec& x);
/// <T_r^{-1} X, T_r^{-1} Y>.
double killing_r(const DeformationContext& ctx, const Vec& x, const Vec& y);
/// tr(ad_r X ad_r Y), computed from the deformed structure tensor.
double killing_r_trace(const DeformationContext& ctx, const Vec& x, const Vec& y);

Vec psi_r_map(const DeformationContext& ctx, const Vec& z);

/// exp(t ad_r A) Y for A in k.
Vec ad_r_exp_orbit(const DeformationContext& ctx, const Vec& a, double t, const Vec& y);

/// psi_r(n_H^+), and independently the sum of the eigenspaces of ad_r(H)
/// with positive eigenvalue (finite r only).
Mat psi_n_plus(const DeformationContext& ctx, const Vec& h);
Mat r_positive_subspace(const DeformationContext& ctx, const Vec& h);

/// Points Ad(k) H + psi_r(Ad(k) X) with X in n_H^+, n_base values of k and
/// n_fiber values of X per k.
std::vector<OrbitSample> sample_deformed_orbit(const DeformationContext& ctx, const Vec& h, std::uint64_t seed,
                                               int n_base, int n_fiber);

/// Pushes a tagged sample through the fiber-preserving map: same base point,
/// fiber element sent through psi_r.
OrbitSample tilde_psi_r(const DeformationContext& ctx, const OrbitSample& p);

/// max |tilde_psi_r(p) - tilde_psi_inf(p)| over a tagged adjoint-orbit grid
/// of n base points with one fiber element each.
double limit_deviation(const DeformationContext& ctx, const Vec& h, std::uint64_t seed, int n);

}  // namespace lieorbit
