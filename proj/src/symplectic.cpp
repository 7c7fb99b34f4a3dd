#include "lieorbit/symplectic.hpp"

#include "lieorbit/errors.hpp"

#include <algorithm>

namespace lieorbit {

namespace {

const Tolerance kRankTol{1e-12, 1e-8};

Mat positive_space(const HermitianContext& ctx, const Vec& x) {
  const int d = ctx.dim();
  Mat out(d, 0);
  if (x.norm() == 0.0) return out;
  const Mat adx = ad(ctx.alg(), x);
  const double eps = Tolerance{}.scale(adx.norm());
  for (const auto& sp : simultaneous_eigenspaces({adx})) {
    if (sp.eigenvalues(0) <= eps) continue;
    Mat grown(d, out.cols() + sp.basis.cols());
    grown << out, sp.basis;
    out = std::move(grown);
  }
  return out;
}

Mat flag_tangent(const HermitianContext& ctx, const Vec& x) {
  return column_space(ad(ctx.alg(), x) * ctx.cd().k_basis, kRankTol);
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Vec section_point(const HermitianContext& ctx, const Vec& n, const Vec& x, double t) {
  return x + t * (ctx.J * gradient_at(ctx, n, x));
}

}  // namespace

SkewFormData::SkewFormData(const Mat& g, const Tolerance& t) : gram(0.5 * (g - g.transpose())), tol(t) {
  if (g.rows() != g.cols()) throw DimensionError("skew form: Gram matrix must be square");
}

double SkewFormData::operator()(const Vec& x, const Vec& y) const {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < gram.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) sum += gram(i, j) * (x(i) * y(j) - x(j) * y(i));
  }
  return sum;
}

SkewFormData restrict_form(const SkewFormData& form, const Mat& basis) {
  if (basis.rows() != form.dim()) throw DimensionError("restrict_form: basis length mismatch");
  if (numeric_rank(basis, form.tol) < basis.cols()) throw DimensionError("restrict_form: basis is linearly dependent");
  return SkewFormData(basis.transpose() * form.gram * basis, form.tol);
}

Mat radical(const SkewFormData& form) { return nullspace(form.gram, form.tol); }

Mat max_isotropic(const SkewFormData& form, std::uint64_t seed) {
  const int n = form.dim();
  NormalSource rng(seed);
  Mat w = radical(form);
  while (w.cols() < n) {
    // form-orthogonal complement of span(w), with span(w) itself removed
    const Mat perp = w.cols() == 0 ? Mat(Mat::Identity(n, n)) : nullspace(w.transpose() * form.gram, form.tol);
    Mat rest = perp - w * (w.transpose() * perp);
    rest = column_space(rest, form.tol);
    if (rest.cols() == 0) break;
    Vec v = rest * rng.vector(rest.cols());
    v.normalize();
    Mat grown(n, w.cols() + 1);
    grown << w, v;
    w = column_space(grown, form.tol);
  }
  return w;
}

HermitianContext make_hermitian_context(std::shared_ptr<const CartanData> cartan) {
  if (!cartan->alg().is_complex()) throw DomainError("Hermitian structure requires a complex algebra");
  HermitianContext ctx;
  ctx.J = cartan->alg().complex_structure;
  ctx.b_tau = cartan->b_theta;
  ctx.omega = SkewFormData(ctx.J.transpose() * ctx.b_tau);
  ctx.cartan = std::move(cartan);
  return ctx;
}

std::complex<double> hermitian_form(const HermitianContext& ctx, const Vec& x, const Vec& y) {
  // complex Killing form of sl(n, C) is 2n tr(XY) and tau(Y) = -Y^*
  const CMat mx = to_matrix(ctx.alg(), x), my = to_matrix(ctx.alg(), y);
  return 2.0 * ctx.alg().n * (mx * my.adjoint()).trace();
}

double omega(const HermitianContext& ctx, const Vec& x, const Vec& y) { return ctx.omega(x, y); }

int flag_dimension(const HermitianContext& ctx, const Vec& x) { return static_cast<int>(positive_space(ctx, x).cols()); }

Mat orbit_tangent_basis(const HermitianContext& ctx, const OrbitSample& p, OrbitKind kind) {
  const CartanData& cd = ctx.cd();
  const Vec& base = p.base.size() == ctx.dim() ? p.base : p.point;
  const int fdim = flag_dimension(ctx, base);
  Mat span;
  int expected = 2 * fdim;
  switch (kind) {
    case OrbitKind::flag:
      span = ad(ctx.alg(), p.point) * cd.k_basis;
      expected = fdim;
      break;
    case OrbitKind::adjoint:
      span = ad(ctx.alg(), p.point);
      break;
    case OrbitKind::deformed: {
      if (p.r.is_infinite()) {
        span.resize(ctx.dim(), cd.k_basis.cols() + cd.s_basis.cols());
        span << ad(ctx.alg(), p.point) * cd.k_basis, ad(ctx.alg(), base) * cd.s_basis;
        break;
      }
      const auto dctx = make_deformation_context(ctx.cartan, p.r);
      span.resize(ctx.dim(), ctx.dim());
      for (int j = 0; j < ctx.dim(); ++j) span.col(j) = dctx.ad_basis_r[j] * p.point;
      break;
    }
    case OrbitKind::semidirect:
      span.resize(ctx.dim(), cd.k_basis.cols() + cd.s_basis.cols());
      span << ad(ctx.alg(), p.point) * cd.k_basis, ad(ctx.alg(), base) * cd.s_basis;
      break;
  }
  const Mat basis = column_space(span, kRankTol);
  if (basis.cols() < expected) {
    throw SamplingError("orbit_tangent_basis: rank " + std::to_string(basis.cols()) + " below expected " +
                        std::to_string(expected) + " (" + kind_name(kind) + ")");
  }
  return basis;
}

SymplecticReport check_symplectic_on_orbit(const HermitianContext& ctx, const std::vector<OrbitSample>& samples,
                                           OrbitKind kind, double rank_ratio, double fiber_tol) {
  SymplecticReport rep;
  rep.kind = kind;
  rep.samples = static_cast<int>(samples.size());
  rep.min_singular_ratio = samples.empty() ? 0.0 : 1.0;
  rep.min_rank = std::numeric_limits<int>::max();
  rep.min_singular_value = std::numeric_limits<double>::infinity();
  const double scale = singular_values(ctx.omega.gram)(0);
  rep.fiber_checked = kind == OrbitKind::semidirect;
  rep.fiber_maximal = rep.fiber_checked;
  bool ok = !samples.empty();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const OrbitSample& p = samples[i];
    const Vec& base = p.base.size() == ctx.dim() ? p.base : p.point;
    const int fdim = flag_dimension(ctx, base);
    const int expected = kind == OrbitKind::flag ? fdim : 2 * fdim;
    rep.expected_dim = std::max(rep.expected_dim, expected);
    Mat t;
    try {
      t = orbit_tangent_basis(ctx, p, kind);
    } catch (const SamplingError&) {
      rep.min_rank = 0;
      if (rep.offending < 0) rep.offending = static_cast<int>(i);
      ok = false;
      continue;
    }
    const SkewFormData restricted = restrict_form(ctx.omega, t);
    const Vec sv = singular_values(restricted.gram);
    const double ratio = sv.size() == 0 || sv(0) == 0.0 ? 0.0 : sv(sv.size() - 1) / sv(0);
    const double smallest = sv.size() == 0 ? 0.0 : sv(sv.size() - 1) / scale;
    // singular values count when above rank_ratio relative to both the restricted and the ambient form
    const int rank = numeric_rank(restricted.gram, Tolerance{rank_ratio * scale, rank_ratio});
    rep.min_singular_value = std::min(rep.min_singular_value, smallest);
    rep.min_rank = std::min(rep.min_rank, rank);
    rep.min_singular_ratio = std::min(rep.min_singular_ratio, ratio);
    bool sample_ok = rank == t.cols() && t.cols() == expected && ratio > rank_ratio && smallest > rank_ratio;
    if (rep.fiber_checked) {
      const Mat v = column_space(ad(ctx.alg(), base) * ctx.cd().s_basis, kRankTol);
      const double iso = max_abs(v.transpose() * ctx.omega.gram * v);
      rep.fiber_isotropy = std::max(rep.fiber_isotropy, iso);
      const int wdim = static_cast<int>(max_isotropic(restricted, 1000 + i).cols());
      const bool maximal = v.cols() == wdim && containment_residual(v, t) < 1e-9;
      rep.fiber_maximal = rep.fiber_maximal && maximal;
      sample_ok = sample_ok && iso < fiber_tol && maximal;
    }
    if (!sample_ok) {
      ok = false;
      if (rep.offending < 0) rep.offending = static_cast<int>(i);
    }
  }
  if (rep.min_rank == std::numeric_limits<int>::max()) rep.min_rank = 0;
  if (samples.empty()) rep.min_singular_value = 0.0;
  rep.pass = ok;
  return rep;
}

Vec gradient_at(const HermitianContext& ctx, const Vec& n, const Vec& x) {
  const Mat t = flag_tangent(ctx, x);
  if (t.cols() == 0) return Vec::Zero(ctx.dim());
  const Mat& b = ctx.b_tau;
  const Mat g = t.transpose() * b * t;
  return t * g.ldlt().solve(t.transpose() * (b * n));
}

SectionSample gradient_field(const HermitianContext& ctx, const Vec& n, const std::vector<OrbitSample>& flag_samples) {
  if (n.size() != ctx.dim()) throw DimensionError("gradient_field: N length mismatch");
  SectionSample s;
  s.n = n;
  for (const auto& p : flag_samples) {
    s.base_points.push_back(p.point);
    s.field_values.push_back(gradient_at(ctx, n, p.point));
    s.section_points.push_back(p.point);
  }
  return s;
}

SectionSample lagrangian_section(const HermitianContext& ctx, const SectionSample& field, double t) {
  SectionSample s = field;
  s.t = t;
  for (std::size_t i = 0; i < s.base_points.size(); ++i) {
    s.section_points[i] = s.base_points[i] + t * (ctx.J * s.field_values[i]);
  }
  return s;
}

Mat section_tangents(const HermitianContext& ctx, const SectionSample& s, std::size_t i, double step) {
  const Mat& kb = ctx.cd().k_basis;
  const Vec& x = s.base_points.at(i);
  Mat out(ctx.dim(), kb.cols());
  for (Eigen::Index a = 0; a < kb.cols(); ++a) {
    const Mat ada = ad(ctx.alg(), kb.col(a));
    const Vec xp = matrix_exp(step * ada) * x, xm = matrix_exp(-step * ada) * x;
    out.col(a) = (section_point(ctx, s.n, xp, s.t) - section_point(ctx, s.n, xm, s.t)) / (2 * step);
  }
  return out;
}

Mat section_tangents_formula(const HermitianContext& ctx, const SectionSample& s, std::size_t i, double step) {
  const Mat& kb = ctx.cd().k_basis;
  const Vec& x = s.base_points.at(i);
  const Vec y = gradient_at(ctx, s.n, x);
  Mat out(ctx.dim(), kb.cols());
  for (Eigen::Index a = 0; a < kb.cols(); ++a) {
    const Vec av = kb.col(a);
    const Mat ada = ad(ctx.alg(), av);
    const Vec dy = (gradient_at(ctx, s.n, matrix_exp(step * ada) * x) - gradient_at(ctx, s.n, matrix_exp(-step * ada) * x)) /
                   (2 * step);
    // [Y, A~](x) = dY(A~(x)) - [A, Y(x)]
    const Vec lie = dy - bracket(ctx.alg(), av, y);
    out.col(a) = bracket(ctx.alg(), av, x) + s.t * (ctx.J * lie) + s.t * (ctx.J * bracket(ctx.alg(), av, y));
  }
  return out;
}

double section_isotropy(const HermitianContext& ctx, const SectionSample& s, double step) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.base_points.size(); ++i) {
    const Mat t = section_tangents(ctx, s, i, step);
    worst = std::max(worst, max_abs(t.transpose() * ctx.omega.gram * t));
  }
  return worst;
}

double gradient_hamiltonian_residual(const HermitianContext& ctx, const Vec& n, const std::vector<OrbitSample>& samples,
                                     double step) {
  const CartanData& cd = ctx.cd();
  const Mat& b = ctx.b_tau;
  double worst = 0.0;
  for (const auto& p : samples) {
    const Vec iy = ctx.J * gradient_at(ctx, n, p.base);
    auto check = [&](const Vec& pp, const Vec& pm, const Vec& basep, const Vec& basem) {
      const Vec w = (pp - pm) / (2 * step);
      const double df = (basep - basem).dot(b * n) / (2 * step);
      worst = std::max(worst, std::abs(df - ctx.omega(w, iy)));
    };
    for (Eigen::Index a = 0; a < cd.k_basis.cols(); ++a) {
      const Mat ada = ad(ctx.alg(), cd.k_basis.col(a));
      const Mat gp = matrix_exp(step * ada), gm = matrix_exp(-step * ada);
      check(gp * p.point, gm * p.point, gp * p.base, gm * p.base);
    }
    const Mat vertical = ad(ctx.alg(), p.base) * cd.s_basis;
    for (Eigen::Index j = 0; j < vertical.cols(); ++j) {
      check(p.point + step * vertical.col(j), p.point - step * vertical.col(j), p.base, p.base);
    }
  }
  return worst;
}

double pullback_check(const HermitianContext& ctx, DeformationParameter r, const std::vector<OrbitSample>& samples,
                      double step) {
  const auto dctx = make_deformation_context(ctx.cartan, r);
  const CartanData& cd = ctx.cd();
  double worst = 0.0;
  for (const auto& p : samples) {
    if (!p.tagged) throw RepresentationError("pullback_check: untagged sample");
    std::vector<Vec> v, dv;
    auto push = [&](const OrbitSample& plus, const OrbitSample& minus) {
      v.push_back((plus.point - minus.point) / (2 * step));
      dv.push_back((tilde_psi_r(dctx, plus).point - tilde_psi_r(dctx, minus).point) / (2 * step));
    };
    for (Eigen::Index a = 0; a < cd.k_basis.cols(); ++a) {
      const Mat ada = ad(ctx.alg(), cd.k_basis.col(a));
      OrbitSample plus = p, minus = p;
      const Mat gp = matrix_exp(step * ada), gm = matrix_exp(-step * ada);
      plus.base = gp * p.base;
      plus.fiber_source = gp * p.fiber_source;
      plus.point = plus.base + plus.fiber_source;
      minus.base = gm * p.base;
      minus.fiber_source = gm * p.fiber_source;
      minus.point = minus.base + minus.fiber_source;
      push(plus, minus);
    }
    const Mat fiber = positive_space(ctx, p.base);
    for (Eigen::Index j = 0; j < fiber.cols(); ++j) {
      OrbitSample plus = p, minus = p;
      plus.fiber_source = p.fiber_source + step * fiber.col(j);
      plus.point = plus.base + plus.fiber_source;
      minus.fiber_source = p.fiber_source - step * fiber.col(j);
      minus.point = minus.base + minus.fiber_source;
      push(plus, minus);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        worst = std::max(worst, std::abs(ctx.omega(dv[i], dv[j]) - ctx.omega(v[i], v[j])));
      }
    }
  }
  return worst;
}

Vec u_moment(const HermitianContext& ctx, const Vec& x) {
  return -(ctx.J * bracket(ctx.alg(), ctx.cd().theta * x, x));
}

double hamiltonian_Q_check(const HermitianContext& ctx, const Vec& a, std::uint64_t seed, int trials) {
  if ((ctx.cd().s_proj * a).norm() > Tolerance{}.scale(a.norm())) throw DomainError("hamiltonian_Q_check: A must lie in u");
  const Mat ada = ad(ctx.alg(), a);
  auto beta = [&](const Vec& x, const Vec& y) { return ctx.omega(ada * x, y); };
  const double h = 1e-5;
  NormalSource rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Vec x0 = rng.vector(ctx.dim()), v = rng.vector(ctx.dim()), w = rng.vector(ctx.dim());
    // alpha(s) = x0 + s v + s^2 w, so alpha(0) = x0 and alpha'(0) = v
    auto alpha = [&](double s) { return Vec(x0 + s * v + s * s * w); };
    const double fd = (0.5 * beta(alpha(h), alpha(h)) - 0.5 * beta(alpha(-h), alpha(-h))) / (2 * h);
    worst = std::max(worst, std::abs(fd - ctx.omega(ada * v, x0)));
    worst = std::max(worst, std::abs(beta(x0, v) - beta(v, x0)));
  }
  return worst;
}

IsotropyReport unique_isotropic_orbit_check(const HermitianContext& ctx, const Vec& h, std::uint64_t seed, int trials) {
  const CartanData& cd = ctx.cd();
  IsotropyReport rep;
  rep.trials = trials;
  const HSubspaces hs = h_subspaces(cd, h);
  const Mat tf = flag_tangent(ctx, h);
  const Mat to = column_space(ad(ctx.alg(), h), kRankTol);
  rep.flag_dim = static_cast<int>(tf.cols());
  rep.orbit_dim = static_cast<int>(to.cols());
  rep.flag_form_max = max_abs(tf.transpose() * ctx.omega.gram * tf);
  const int ku = static_cast<int>(cd.k_basis.cols());
  rep.stabilizer_H = ku - numeric_rank(ad(ctx.alg(), h) * cd.k_basis, kRankTol);
  rep.min_moment = std::numeric_limits<double>::infinity();
  NormalSource rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Vec x = hs.n_plus * rng.vector(hs.n_plus.cols());
    const Vec p = h + x;
    rep.max_stabilizer_X = std::max(rep.max_stabilizer_X, ku - numeric_rank(ad(ctx.alg(), p) * cd.k_basis, kRankTol));
    rep.min_moment = std::min(rep.min_moment, u_moment(ctx, p).norm());
  }
  if (trials == 0) rep.min_moment = 0.0;
  const double scale = 1.0 + ctx.b_tau.norm() * h.squaredNorm();
  rep.pass = h.norm() > 0.0 && rep.flag_dim > 0 && 2 * rep.flag_dim == rep.orbit_dim &&
             rep.flag_form_max < 1e-10 * scale && (trials == 0 || (rep.max_stabilizer_X < rep.stabilizer_H && rep.min_moment > 1e-8));
  return rep;
}

IsotropyCriterion isotropy_criterion(const HermitianContext& ctx, const std::vector<Vec>& points, double small,
                                     double large) {
  IsotropyCriterion out;
  out.weakest_nonisotropic = std::numeric_limits<double>::infinity();
  for (const auto& x : points) {
    const double m = bracket(ctx.alg(), ctx.cd().theta * x, x).norm();
    const Mat t = flag_tangent(ctx, x);
    const double q = max_abs(t.transpose() * ctx.omega.gram * t);
    if (m < small) {
      out.worst_isotropic = std::max(out.worst_isotropic, q);
      ++out.isotropic_points;
    } else if (m > large) {
      out.weakest_nonisotropic = std::min(out.weakest_nonisotropic, q);
      ++out.nonisotropic_points;
    }
  }
  if (out.nonisotropic_points == 0) out.weakest_nonisotropic = 0.0;
  return out;
}

}  // namespace lieorbit
