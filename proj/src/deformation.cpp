#include "lieorbit/deformation.hpp"

#include "lieorbit/errors.hpp"

#include <algorithm>

namespace lieorbit {

namespace {

void require_finite(const DeformationContext& ctx, const char* op) {
  if (ctx.r.is_infinite()) {
    throw DomainError(std::string(op) + ": the deformed bracket is not formed at r = inf");
  }
}

void require_dim(const DeformationContext& ctx, const Vec& v, const char* op) {
  if (v.size() != ctx.dim()) throw DimensionError(std::string(op) + ": coefficient length mismatch");
}

}  // namespace

DeformationContext make_deformation_context(std::shared_ptr<const CartanData> cartan, DeformationParameter r) {
  DeformationContext ctx;
  ctx.cartan = std::move(cartan);
  ctx.r = r;
  const CartanData& cd = *ctx.cartan;
  const int d = cd.dim();
  ctx.psi_r = Mat::Identity(d, d) + r.psi_coefficient() * cd.theta;
  if (r.is_infinite()) return ctx;

  const double rv = r.value();
  ctx.T_r = rv * cd.k_proj + cd.s_proj;
  ctx.T_r_inv = cd.k_proj / rv + cd.s_proj;
  ctx.ad_basis_r.reserve(d);
  for (int i = 0; i < d; ++i) {
    const Vec pre = ctx.T_r_inv.col(i);
    ctx.ad_basis_r.push_back(ctx.T_r * ad(cd.alg(), pre) * ctx.T_r_inv);
  }
  return ctx;
}

Vec bracket_r(const DeformationContext& ctx, const Vec& x, const Vec& y) {
  require_finite(ctx, "bracket_r");
  require_dim(ctx, x, "bracket_r");
  require_dim(ctx, y, "bracket_r");
  return ctx.T_r * bracket(ctx.alg(), ctx.T_r_inv * x, ctx.T_r_inv * y);
}

Mat ad_r(const DeformationContext& ctx, const Vec& x) {
  require_finite(ctx, "ad_r");
  require_dim(ctx, x, "ad_r");
  Mat m = Mat::Zero(ctx.dim(), ctx.dim());
  for (int i = 0; i < ctx.dim(); ++i) {
    if (x(i) != 0.0) m += x(i) * ctx.ad_basis_r[i];
  }
  return m;
}

double killing_r(const DeformationContext& ctx, const Vec& x, const Vec& y) {
  require_finite(ctx, "killing_r");
  require_dim(ctx, x, "killing_r");
  require_dim(ctx, y, "killing_r");
  return killing(ctx.alg(), ctx.T_r_inv * x, ctx.T_r_inv * y);
}

double killing_r_trace(const DeformationContext& ctx, const Vec& x, const Vec& y) {
  return (ad_r(ctx, x) * ad_r(ctx, y)).trace();
}

Vec psi_r_map(const DeformationContext& ctx, const Vec& z) {
  require_dim(ctx, z, "psi_r_map");
  return ctx.psi_r * z;
}

Vec ad_r_exp_orbit(const DeformationContext& ctx, const Vec& a, double t, const Vec& y) {
  require_finite(ctx, "ad_r_exp_orbit");
  require_dim(ctx, a, "ad_r_exp_orbit");
  require_dim(ctx, y, "ad_r_exp_orbit");
  const Tolerance tol;
  if ((ctx.cd().s_proj * a).norm() > tol.scale(a.norm())) {
    throw DomainError("ad_r_exp_orbit: A must lie in k");
  }
  return matrix_exp(t * ad_r(ctx, a)) * y;
}

Mat psi_n_plus(const DeformationContext& ctx, const Vec& h) {
  const HSubspaces hs = h_subspaces(ctx.cd(), h);
  return ctx.psi_r * hs.n_plus;
}

Mat r_positive_subspace(const DeformationContext& ctx, const Vec& h) {
  require_finite(ctx, "r_positive_subspace");
  if (!in_closed_chamber(ctx.cd(), h)) throw DomainError("r_positive_subspace: H outside the closed positive Weyl chamber");
  const int d = ctx.dim();
  Mat out(d, 0);
  const Mat adh = ad_r(ctx, h);
  const double eps = Tolerance{}.scale(adh.norm());
  for (const auto& sp : simultaneous_eigenspaces({adh})) {
    if (sp.eigenvalues(0) <= eps) continue;
    Mat grown(d, out.cols() + sp.basis.cols());
    grown << out, sp.basis;
    out = std::move(grown);
  }
  return out;
}

std::vector<OrbitSample> sample_deformed_orbit(const DeformationContext& ctx, const Vec& h, std::uint64_t seed,
                                               int n_base, int n_fiber) {
  require_dim(ctx, h, "sample_deformed_orbit");
  const CartanData& cd = ctx.cd();
  const HSubspaces hs = h_subspaces(cd, h);
  const bool undeformed = !ctx.r.is_infinite() && ctx.r.value() == 1.0;
  NormalSource rng(seed);
  NormalSource fiber_rng(derived_seed(seed, 1));
  std::vector<OrbitSample> out;
  out.reserve(static_cast<std::size_t>(std::max(n_base, 0) * std::max(n_fiber, 0)));
  for (int i = 0; i < n_base; ++i) {
    const Vec k_params = random_k_params(cd, rng);
    const Mat g = ad_group_element(cd, k_params);
    const Vec base = g * h;
    for (int j = 0; j < n_fiber; ++j) {
      OrbitSample s;
      s.kind = undeformed ? OrbitKind::adjoint : OrbitKind::deformed;
      s.r = ctx.r;
      s.base_tag = i;
      s.fiber_tag = j;
      s.k_params = k_params;
      s.fiber_coeffs = fiber_rng.vector(hs.n_plus.cols());
      s.base = base;
      s.fiber_source = g * (hs.n_plus * s.fiber_coeffs);
      s.point = base + ctx.psi_r * s.fiber_source;
      out.push_back(std::move(s));
    }
  }
  return out;
}

OrbitSample tilde_psi_r(const DeformationContext& ctx, const OrbitSample& p) {
  if (!p.tagged || p.base.size() != ctx.dim() || p.fiber_source.size() != ctx.dim()) {
    throw RepresentationError("tilde_psi_r: sample carries no fiber decomposition");
  }
  OrbitSample out = p;
  out.r = ctx.r;
  out.kind = (!ctx.r.is_infinite() && ctx.r.value() == 1.0) ? OrbitKind::adjoint : OrbitKind::deformed;
  out.point = p.base + ctx.psi_r * p.fiber_source;
  return out;
}

double limit_deviation(const DeformationContext& ctx, const Vec& h, std::uint64_t seed, int n) {
  require_finite(ctx, "limit_deviation");
  const DeformationContext one = make_deformation_context(ctx.cartan, DeformationParameter::finite(1.0));
  const DeformationContext inf = make_deformation_context(ctx.cartan, DeformationParameter::infinity());
  double worst = 0.0;
  for (const auto& p : sample_deformed_orbit(one, h, seed, n, 1)) {
    worst = std::max(worst, (tilde_psi_r(ctx, p).point - tilde_psi_r(inf, p).point).norm());
  }
  return worst;
}

}  // namespace lieorbit
