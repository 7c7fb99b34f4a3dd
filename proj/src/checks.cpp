#include "lieorbit/checks.hpp"

#include "lieorbit/deformation.hpp"
#include "lieorbit/errors.hpp"
#include "lieorbit/semidirect.hpp"
#include "lieorbit/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lieorbit {

namespace {

const double kRGrid[] = {0.1, 0.5, 1.0, 2.0, 10.0, 100.0};

class Recorder {
 public:
  Recorder(VerifyReport& report, std::string suite, double scale)
      : report_(report), suite_(std::move(suite)), scale_(scale) {}

  void upper(const std::string& name, const std::string& anchor, double residual, double threshold) {
    const double t = threshold * scale_;
    report_.checks.push_back({suite_, name, anchor, residual, t, false, residual < t});
  }
  void lower(const std::string& name, const std::string& anchor, double value, double bound) {
    report_.checks.push_back({suite_, name, anchor, value, bound, true, value > bound});
  }
  void note(const std::string& text) { report_.notes.push_back(suite_ + ": " + text); }

 private:
  VerifyReport& report_;
  std::string suite_;
  double scale_;
};

struct Setup {
  std::shared_ptr<const CartanData> cd;
  Vec h;
};

Setup make_setup(const VerifyConfig& cfg) {
  Setup s;
  s.cd = std::make_shared<const CartanData>(cartan_structure(build_algebra(cfg.algebra)));
  s.h = chamber_element(*s.cd, cfg.h_spec);
  return s;
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void algebra_suite(const Setup& s, const VerifyConfig& cfg, Recorder& rec) {
  const CartanData& cd = *s.cd;
  const LieAlgebraData& alg = cd.alg();
  NormalSource rng(cfg.seed);

  double jac = 0.0, inv = 0.0, expo = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Vec x = rng.vector(alg.dim), y = rng.vector(alg.dim), z = rng.vector(alg.dim);
    const double j = jacobi_residual([&](const Vec& a, const Vec& b) { return bracket(alg, a, b); }, x, y, z);
    jac = std::max(jac, j / (x.norm() * y.norm() * z.norm()));
    inv = std::max(inv, std::abs(killing(alg, bracket(alg, x, y), z) + killing(alg, y, bracket(alg, x, z))) /
                            (x.norm() * y.norm() * z.norm() * alg.killing.norm()));
  }
  for (int t = 0; t < 20; ++t) {
    Mat a = ad(alg, rng.vector(alg.dim));
    a *= 5.0 / a.norm();
    expo = std::max(expo, max_abs(matrix_exp(a) * matrix_exp(Mat(-a)) - Mat::Identity(alg.dim, alg.dim)));
  }
  rec.upper("jacobi", "Jacobi identity of the bracket", jac, 1e-10);
  rec.upper("killing_ad_invariance", "ad-invariance of the Killing form", inv, 1e-9);
  rec.upper("matrix_exp_inverse", "exp(A) exp(-A) = I", expo, 1e-10);

  double closure = 0.0;
  for (Eigen::Index i = 0; i < cd.k_basis.cols(); ++i) {
    for (Eigen::Index j = 0; j < cd.k_basis.cols(); ++j)
      closure = std::max(closure, (cd.s_proj * bracket(alg, cd.k_basis.col(i), cd.k_basis.col(j))).norm());
    for (Eigen::Index j = 0; j < cd.s_basis.cols(); ++j)
      closure = std::max(closure, (cd.k_proj * bracket(alg, cd.k_basis.col(i), cd.s_basis.col(j))).norm());
  }
  for (Eigen::Index i = 0; i < cd.s_basis.cols(); ++i)
    for (Eigen::Index j = 0; j < cd.s_basis.cols(); ++j)
      closure = std::max(closure, (cd.s_proj * bracket(alg, cd.s_basis.col(i), cd.s_basis.col(j))).norm());
  rec.upper("cartan_brackets", "[k,k] in k, [k,s] in s, [s,s] in k", closure, 1e-10);
  rec.upper("killing_k_s_orthogonal", "k and s are Killing-orthogonal",
            cd.k_basis.cols() && cd.s_basis.cols() ? max_abs(cd.k_basis.transpose() * alg.killing * cd.s_basis) : 0.0,
            1e-10);
  rec.lower("b_theta_positive", "B_theta is positive definite",
            Eigen::SelfAdjointEigenSolver<Mat>(cd.b_theta).eigenvalues().minCoeff(), 0.0);

  double eig = 0.0, sym = 0.0;
  Eigen::Index total = 0;
  for (const auto& r : cd.roots) {
    total += r.space_basis.cols();
    for (Eigen::Index i = 0; i < cd.a_basis.cols(); ++i)
      eig = std::max(eig, max_abs(ad(alg, cd.a_basis.col(i)) * r.space_basis - r.functional(i) * r.space_basis));
    sym = std::max(sym, containment_residual(cd.theta * r.space_basis,
                                             column_space(cd.roots[r.theta_image_index].space_basis)));
  }
  rec.upper("root_eigenvectors", "ad(H) X_alpha = alpha(H) X_alpha on a", eig, 1e-9);
  rec.upper("theta_root_symmetry", "theta maps g_alpha onto g_-alpha", sym, 1e-9);
  const Eigen::Index centralizer = nullspace(ad(alg, cd.chamber_H)).cols();
  rec.upper("root_decomposition_dimension", "g is the centralizer of a plus the root spaces",
            std::abs(static_cast<double>(total + centralizer - alg.dim)), 0.5);

  const double hh = killing(alg, s.h, s.h);
  double flag = 0.0;
  for (const auto& p : flag_orbit_sample(cd, s.h, cfg.seed, 50)) {
    flag = std::max(flag, std::abs(killing(alg, p.point, p.point) - hh) / (1 + std::abs(hh)) + (cd.k_proj * p.point).norm());
  }
  rec.upper("flag_orbit_killing_norm", "Ad(K) H stays in s with <x,x> = <H,H>", flag, 1e-8);
}

void deformation_suite(const Setup& s, const VerifyConfig& cfg, Recorder& rec) {
  const CartanData& cd = *s.cd;
  const LieAlgebraData& alg = cd.alg();
  const Vec& h = s.h;
  NormalSource rng(cfg.seed);
  double jac = 0.0, iso = 0.0, kill = 0.0, eig = 0.0, equi = 0.0, nplus = 0.0, inv = 0.0;
  const double hh = killing(alg, h, h);
  for (double r : kRGrid) {
    const auto ctx = make_deformation_context(s.cd, DeformationParameter::finite(r));
    for (int t = 0; t < 100; ++t) {
      const Vec x = rng.vector(alg.dim), y = rng.vector(alg.dim), z = rng.vector(alg.dim);
      jac = std::max(jac, jacobi_residual([&](const Vec& a, const Vec& b) { return bracket_r(ctx, a, b); }, x, y, z) /
                              (x.norm() * y.norm() * z.norm() * std::max(1.0, r * r)));
      iso = std::max(iso, (ctx.T_r * bracket(alg, x, y) - bracket_r(ctx, ctx.T_r * x, ctx.T_r * y)).norm() /
                              (x.norm() * y.norm() * std::max(1.0, r)));
      kill = std::max(kill, std::abs(killing_r(ctx, x, y) - killing_r_trace(ctx, x, y)) /
                                (1 + x.norm() * y.norm() * std::max(1.0, 1 / (r * r))));
    }
    if (cd.a_basis.cols() > 0) {
      const Mat adrh = ad_r(ctx, h);
      for (const auto& root : cd.roots) {
        const Mat img = ctx.psi_r * root.space_basis;
        eig = std::max(eig, max_abs(adrh * img - root_value(cd, root, h) * img));
      }
      nplus = std::max(nplus, subspace_distance(column_space(psi_n_plus(ctx, h)), column_space(r_positive_subspace(ctx, h))));
    }
    for (int t = 0; t < 10 && cd.k_basis.cols() > 0; ++t) {
      const Vec a = cd.k_basis * rng.vector(cd.k_basis.cols());
      const Vec x = rng.vector(alg.dim);
      const Vec lhs = ad_r_exp_orbit(ctx, a, 0.7, psi_r_map(ctx, x));
      const Vec rhs = psi_r_map(ctx, matrix_exp((0.7 / r) * ad(alg, a)) * x);
      equi = std::max(equi, (lhs - rhs).norm() / (1 + x.norm()));
    }
    for (const auto& p : sample_deformed_orbit(ctx, h, cfg.seed, 10, 5)) {
      inv = std::max(inv, std::abs(killing_r(ctx, p.point, p.point) - hh) / (1 + p.point.squaredNorm()));
    }
  }
  rec.upper("jacobi_r", "Jacobi identity of [X,Y]_r = T_r[T_r^-1 X, T_r^-1 Y]", jac, 1e-10);
  rec.upper("t_r_isomorphism", "T_r[X,Y] = [T_r X, T_r Y]_r", iso, 1e-12);
  rec.upper("killing_r_trace", "<X,Y>_r = <T_r^-1 X, T_r^-1 Y> = tr(ad_r X ad_r Y)", kill, 1e-8);
  rec.upper("psi_r_eigenvectors", "ad_r(H) psi_r(X_alpha) = alpha(H) psi_r(X_alpha)", eig, 1e-9);
  rec.upper("psi_r_equivariance", "exp(t ad_r A) psi_r = psi_r exp((t/r) ad A) for A in k", equi, 1e-8);
  rec.upper("n_r_plus", "positive r-root spaces of H equal psi_r(n_H^+)", nplus, 1e-9);
  rec.upper("deformed_orbit_invariance", "<p,p>_r = <H,H> on Ad_r(G) H", inv, 1e-6);

  const auto one = make_deformation_context(s.cd, DeformationParameter::finite(1.0));
  double prev = limit_deviation(one, h, cfg.seed, 20), increase = 0.0;
  for (double r : {10.0, 100.0, 1000.0}) {
    const double d = limit_deviation(make_deformation_context(s.cd, DeformationParameter::finite(r)), h, cfg.seed, 20);
    increase = std::max(increase, d - prev);
    prev = d;
  }
  rec.upper("limit_deviation_monotone", "Ad_r(G) H approaches the r = inf orbit as r grows", std::max(0.0, increase), 1e-12);

  if (alg.family == Family::sl_real && alg.n == 2) {
    double hyper = 0.0, quad = 0.0, cyl = 0.0, closed = 0.0;
    const double h0 = h(0);
    for (const auto& p : sample_deformed_orbit(one, h, cfg.seed, 50, 20)) {
      const Vec& v = p.point;
      hyper = std::max(hyper, std::abs(v(0) * v(0) + v(1) * v(1) - v(2) * v(2) - h0 * h0));
    }
    for (double r : kRGrid) {
      const auto ctx = make_deformation_context(s.cd, DeformationParameter::finite(r));
      for (const auto& p : sample_deformed_orbit(ctx, h, cfg.seed, 20, 10)) {
        const Vec& v = p.point;
        quad = std::max(quad, std::abs(v(0) * v(0) + v(1) * v(1) - v(2) * v(2) / (r * r) - h0 * h0));
      }
    }
    const auto inf = make_deformation_context(s.cd, DeformationParameter::infinity());
    for (const auto& p : sample_deformed_orbit(inf, h, cfg.seed, 50, 20)) {
      cyl = std::max(cyl, std::abs(p.point(0) * p.point(0) + p.point(1) * p.point(1) - h0 * h0));
    }
    // fiber coefficient c of Ad(k)(c E_12) is sqrt(2) |theta Ad(k) X|
    const auto samples = sample_deformed_orbit(one, h, cfg.seed, 20, 1);
    double cmax = 0.0;
    for (const auto& p : samples) cmax = std::max(cmax, std::sqrt(2.0) * (cd.theta * p.fiber_source).norm());
    for (double r : {10.0, 100.0, 1000.0}) {
      const double d = limit_deviation(make_deformation_context(s.cd, DeformationParameter::finite(r)), h, cfg.seed, 20);
      const double model = std::sqrt(2.0) * cmax / (r + 1);
      closed = std::max(closed, std::abs(d - model) / model);
    }
    rec.upper("sl2_hyperboloid", "adjoint orbit x^2 + y^2 - z^2 = 1", hyper, 1e-8);
    rec.upper("sl2_deformed_quadric", "deformed orbit x^2 + y^2 - z^2 / r^2 = 1", quad, 1e-6);
    rec.upper("sl2_cylinder_r_inf", "r = inf orbit x^2 + y^2 = 1", cyl, 1e-9);
    rec.upper("sl2_limit_closed_form", "deviation = sqrt(2) c / (r + 1)", closed, 0.1);
    rec.note("the invariant of the deformed sl(2,R) orbit is x^2 + y^2 - z^2/r^2 = 1; a z^2/r form does not follow from T_r");
  }
}

void semidirect_suite(const Setup& s, const VerifyConfig& cfg, Recorder& rec) {
  const CartanData& cd = *s.cd;
  std::vector<std::pair<SemidirectModel, Vec>> models;
  if (cd.s_basis.cols() > 0) models.emplace_back(SemidirectModel::from_cartan(s.cd), s.h);
  const SemidirectModel so3 = SemidirectModel::canonical_so(3);
  models.emplace_back(so3, so3.v_embed.col(0));

  double jac = 0.0, dual = 0.0, rank = 0.0, inverse = 0.0, equi = 0.0, disjoint = 0.0;
  for (const auto& [m, x] : models) {
    NormalSource rng(cfg.seed);
    auto rand_el = [&]() { return SemidirectElement{m.k_embed * rng.vector(m.k_dim), m.v_embed * rng.vector(m.v_dim)}; };
    for (int t = 0; t < 100; ++t) {
      const auto a = rand_el(), b = rand_el(), c = rand_el();
      auto br = [&](const SemidirectElement& p, const SemidirectElement& q) { return semidirect_bracket(m, p, q); };
      const auto j1 = br(a, br(b, c)), j2 = br(b, br(c, a)), j3 = br(c, br(a, b));
      const double scale = (a.k_part.norm() + a.s_part.norm()) * (b.k_part.norm() + b.s_part.norm()) * (c.k_part.norm() + c.s_part.norm());
      jac = std::max(jac, ((j1.k_part + j2.k_part + j3.k_part).norm() + (j1.s_part + j2.s_part + j3.s_part).norm()) / scale);
    }
    for (int t = 0; t < 20; ++t) {
      const auto e = rand_el();
      dual = std::max(dual, max_abs(ad_rho_matrix(m, e).transpose() + coad_star_matrix(m, e)));
    }
    const auto samples = sample_semidirect_orbit(m, x, cfg.seed, 10, 3);
    for (const auto& p : samples) {
      const auto c = phi_cotangent(m, p);
      const int fiber = static_cast<int>(coadjoint_fiber(m, c.base).fiber_basis.cols());
      rank = std::max(rank, std::abs(static_cast<double>(phi_fiber_rank(m, c.base) - fiber)) +
                                std::abs(static_cast<double>(orbit_tangent(m, c.base).cols() - fiber)));
      const auto back = cotangent_moment(m, c.base, c.covector);
      inverse = std::max(inverse, (back.k_part + back.s_part - p.point).norm());
      equi = std::max(equi, moment_equivariance_residual(m, c.base, c.covector, rng.vector(3 * m.k_dim)));
      for (const auto& q : samples) {
        if ((p.base - q.base).norm() > 1e-6 && (m.v_coords(p.point) - m.v_coords(q.point)).norm() <= 1e-6) disjoint += 1;
      }
    }
  }
  rec.upper("jacobi_semidirect", "Jacobi identity of ([X,Y], rho(X)w - rho(Y)v)", jac, 1e-10);
  rec.upper("coadjoint_duality", "ad* is the negative transpose of ad_rho", dual, 1e-9);
  rec.upper("phi_fiber_rank", "phi is a linear isomorphism on each fiber", rank, 0.5);
  rec.upper("moment_inverts_phi", "m(phi(p)) = p with m = mu(cov ^ y) + y", inverse, 1e-9);
  rec.upper("moment_equivariance", "m(k.y, k.cov) = Ad*(k) m(y, cov)", equi, 1e-8);
  rec.upper("fiber_disjointness", "fibers over distinct base points are disjoint", disjoint, 0.5);
  rec.note("semidirect checks run on the Cartan model of the algebra (when s is nonzero) and on so(3) acting on R^3");

  if (cd.s_basis.cols() == 0 || cd.a_basis.cols() == 0) return;
  const auto& m = models.front().first;
  const auto inf = make_deformation_context(s.cd, DeformationParameter::infinity());
  const double fiber = subspace_distance(coadjoint_fiber(m, s.h).fiber_basis, column_space(psi_n_plus(inf, s.h)));
  rec.upper("fiber_is_psi_n_plus", "the fiber over H is [H, s] = psi(n_H^+)", fiber, 1e-9);
  const auto semi = sample_semidirect_orbit(m, s.h, cfg.seed, 10, 4);
  const auto defo = sample_deformed_orbit(inf, s.h, cfg.seed, 10, 4);
  const Mat psi = psi_n_plus(inf, s.h);
  double hd = 0.0;
  for (std::size_t i = 0; i < semi.size(); ++i) {
    hd = std::max(hd, (semi[i].base - defo[i].base).norm());
    hd = std::max(hd, distance_to_fiber(m, defo[i].base, defo[i].point));
    const Mat span = column_space(ad_group_element(cd, semi[i].k_params) * psi);
    Vec r = semi[i].point - semi[i].base;
    r -= span * (span.transpose() * r);
    hd = std::max(hd, r.norm());
  }
  rec.upper("matches_deformed_r_inf", "K_ad H agrees with Ad_r(G) H at r = inf on matched tags", hd, 1e-8);
  if (cd.alg().family == Family::sl_real && cd.alg().n == 2) {
    double cyl = 0.0;
    for (const auto& p : sample_semidirect_orbit(m, s.h, cfg.seed, 50, 20))
      cyl = std::max(cyl, std::abs(p.point(0) * p.point(0) + p.point(1) * p.point(1) - s.h(0) * s.h(0)));
    rec.upper("sl2_cylinder", "semidirect orbit x^2 + y^2 = 1", cyl, 1e-9);
  }
}

void symplectic_suite(const Setup& s, const VerifyConfig& cfg, Recorder& rec) {
  if (!s.cd->alg().is_complex()) {
    rec.note("not applicable: the Hermitian structure needs a complex algebra");
    return;
  }
  const CartanData& cd = *s.cd;
  const auto ctx = make_hermitian_context(s.cd);
  const int d = ctx.dim();
  NormalSource rng(cfg.seed);

  double anti = 0.0, inv = 0.0, breal = 0.0, pos = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 50; ++t) {
    const Vec x = rng.vector(d), y = rng.vector(d);
    anti = std::max(anti, std::abs(omega(ctx, x, x)));
    breal = std::max(breal, std::abs(x.dot(ctx.b_tau * y) - 2 * hermitian_form(ctx, x, y).real()) / (x.norm() * y.norm()));
    pos = std::min(pos, hermitian_form(ctx, x, x).real() / x.squaredNorm());
  }
  for (int t = 0; t < 10; ++t) {
    const Mat g = matrix_exp(ad(ctx.alg(), cd.k_basis * rng.vector(cd.k_basis.cols())));
    inv = std::max(inv, max_abs(g.transpose() * ctx.omega.gram * g - ctx.omega.gram));
  }
  rec.upper("omega_alternating", "Omega(X, X) = 0", anti, 1e-300);
  rec.upper("b_tau_real_part", "B_tau = 2 Re H_tau", breal, 1e-9);
  rec.lower("h_tau_positive", "H_tau is positive definite", pos, 0.0);
  rec.upper("omega_ad_u_invariance", "Omega is Ad(U)-invariant", inv, 1e-8);
  rec.upper("u_lagrangian", "u is Lagrangian for Omega", max_abs(cd.k_basis.transpose() * ctx.omega.gram * cd.k_basis), 1e-10);

  const auto semi = sample_semidirect_orbit(cd, s.h, cfg.seed, 100, 1);
  const auto rep = check_symplectic_on_orbit(ctx, semi, OrbitKind::semidirect);
  rec.upper("orbit_form_full_rank", "Omega restricted to U_ad H is non-degenerate",
            static_cast<double>(rep.expected_dim - rep.min_rank), 0.5);
  rec.lower("orbit_form_singular_ratio", "smallest / largest singular value of the restricted form", rep.min_singular_ratio, 1e-8);
  rec.upper("fiber_isotropic", "fiber tangents [w, s] are isotropic", rep.fiber_isotropy, 1e-10);
  rec.upper("fiber_maximal_isotropic", "fiber tangents are maximal isotropic", rep.fiber_maximal ? 0.0 : 1.0, 0.5);

  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 9, half = static_cast<int>(rng.next() * 1e6) % (n / 2 + 1);
    const int hr = std::abs(half);
    Mat l(2 * hr, n);
    for (Eigen::Index i = 0; i < l.size(); ++i) l.data()[i] = rng.next();
    Mat j = Mat::Zero(2 * hr, 2 * hr);
    j.topRightCorner(hr, hr).setIdentity();
    j.bottomLeftCorner(hr, hr) = -Mat::Identity(hr, hr);
    const SkewFormData f(l.transpose() * j * l);
    if (2 * max_isotropic(f, cfg.seed + t).cols() != n + radical(f).cols()) ++mismatches;
  }
  rec.upper("max_isotropic_dimension", "2 dim W = dim V + dim radical", mismatches, 0.5);

  const Vec n = s.h;
  rec.upper("gradient_hamiltonian", "iY is Hamiltonian for f o pi", gradient_hamiltonian_residual(ctx, n, sample_semidirect_orbit(cd, s.h, cfg.seed, 10, 2)), 1e-6);
  const auto field = gradient_field(ctx, n, flag_orbit_sample(cd, s.h, cfg.seed, 20));
  double section = 0.0, cross = 0.0;
  for (double t : {0.0, 0.5, 1.0, 2.0}) {
    const auto sec = lagrangian_section(ctx, field, t);
    section = std::max(section, section_isotropy(ctx, sec));
    for (std::size_t i = 0; i < sec.base_points.size(); ++i)
      cross = std::max(cross, max_abs(section_tangents(ctx, sec, i) - section_tangents_formula(ctx, sec, i)));
  }
  rec.upper("lagrangian_sections", "x + t i grad f(x) is Lagrangian in U_ad H", section, 1e-6);
  rec.upper("section_tangent_formula", "section tangents match [A,x] + ti[Y,A~](x) + ti[A,Y(x)]", cross, 1e-6);

  const auto one = make_deformation_context(s.cd, DeformationParameter::finite(1.0));
  const auto adj = sample_deformed_orbit(one, s.h, cfg.seed, 50, 1);
  for (auto r : {DeformationParameter::finite(2.0), DeformationParameter::finite(10.0), DeformationParameter::infinity()}) {
    rec.upper("symplectomorphism_r" + r.str(), "psi~_r pulls Omega back to Omega", pullback_check(ctx, r, adj), 1e-5);
  }
  rec.note("psi_r scales Omega on fiber tangents by 1 - ((r-1)/(r+1))^2, so the symplectomorphism checks fail for r != 1");

  double normal = 0.0;
  CMat diag = CMat::Zero(ctx.alg().n, ctx.alg().n);
  for (int t = 0; t < 50; ++t) {
    std::complex<double> trace = 0.0;
    for (int i = 0; i + 1 < ctx.alg().n; ++i) {
      diag(i, i) = {rng.next(), rng.next()};
      trace += diag(i, i);
    }
    diag(ctx.alg().n - 1, ctx.alg().n - 1) = -trace;
    const Mat g = matrix_exp(ad(ctx.alg(), cd.k_basis * rng.vector(cd.k_basis.cols())));
    normal = std::max(normal, u_moment(ctx, g * to_coeffs(ctx.alg(), diag)).norm());
  }
  double nilpotent = std::numeric_limits<double>::infinity();
  for (const auto& root : cd.roots) {
    for (Eigen::Index c = 0; c < root.space_basis.cols(); ++c)
      nilpotent = std::min(nilpotent, u_moment(ctx, root.space_basis.col(c)).norm());
  }
  rec.upper("u_moment_normal", "mu(x) = -i[tau x, x] vanishes on normal x", normal, 1e-9);
  rec.lower("u_moment_nilpotent", "mu(x) is nonzero on root vectors", nilpotent, 1e-2);

  const auto iso = unique_isotropic_orbit_check(ctx, s.h, cfg.seed, 20);
  rec.upper("flag_half_dimension", "dim F_H = dim Ad(G) H / 2", std::abs(2.0 * iso.flag_dim - iso.orbit_dim), 0.5);
  rec.upper("flag_lagrangian", "Omega vanishes on the flag", iso.flag_form_max, 1e-10);
  rec.lower("stabilizer_drop", "dim U_H - dim U_{H+X} for X in n_H^+", iso.stabilizer_H - iso.max_stabilizer_X, 0.5);
  rec.lower("moment_off_flag", "mu(H + X) != 0 for X in n_H^+", iso.min_moment, 1e-8);

  std::vector<Vec> points;
  const Mat np = h_subspaces(cd, s.h).n_plus;
  for (int t = 0; t < 10; ++t) {
    const Mat g = matrix_exp(ad(ctx.alg(), cd.k_basis * rng.vector(cd.k_basis.cols())));
    points.push_back(g * s.h);
    if (np.cols() > 0) points.push_back(g * (s.h + np * rng.vector(np.cols())));
  }
  const auto crit = isotropy_criterion(ctx, points);
  rec.upper("isotropic_when_commuting", "orbits with [tau x, x] = 0 are isotropic", crit.worst_isotropic, 1e-8);
  if (crit.nonisotropic_points > 0)
    rec.lower("nonisotropic_otherwise", "orbits with [tau x, x] != 0 are not isotropic", crit.weakest_nonisotropic, 1e-8);

  rec.upper("hamiltonian_q", "ad(A) is Hamiltonian with function Q/2",
            hamiltonian_Q_check(ctx, cd.k_basis * rng.vector(cd.k_basis.cols()), cfg.seed), 1e-6);
}

}  // namespace

bool VerifyReport::pass() const { return failures() == 0; }

int VerifyReport::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
}

double threshold_scale(const Tolerance& tol) {
  const Tolerance def;
  return std::max(tol.abs_eps / def.abs_eps, tol.rel_eps / def.rel_eps);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"algebra", "deformation", "semidirect", "symplectic"};
  return names;
}

VerifyReport run_suite(const std::string& suite, const VerifyConfig& cfg) {
  if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw ConfigurationError("unknown suite '" + suite + "'");
  }
  if (!(cfg.tol.abs_eps >= 0.0) || !(cfg.tol.rel_eps >= 0.0)) throw ConfigurationError("tolerances must be >= 0");
  const Setup s = make_setup(cfg);
  VerifyReport report;
  const double scale = threshold_scale(cfg.tol);
  for (const auto& name : suite_names()) {
    if (suite != "all" && suite != name) continue;
    Recorder rec(report, name, scale);
    if (name == "algebra") algebra_suite(s, cfg, rec);
    if (name == "deformation") deformation_suite(s, cfg, rec);
    if (name == "semidirect") semidirect_suite(s, cfg, rec);
    if (name == "symplectic") symplectic_suite(s, cfg, rec);
  }
  return report;
}

}  // namespace lieorbit
