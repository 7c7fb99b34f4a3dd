#include "lieorbit/semidirect.hpp"

#include "lieorbit/errors.hpp"

#include <algorithm>

namespace lieorbit {

namespace {

constexpr double kPartTol = 1e-10;

void require_ambient(const SemidirectModel& m, const Vec& v, const char* op) {
  if (v.size() != m.ambient_dim) throw DimensionError(std::string(op) + ": ambient vector length mismatch");
}

Mat k_bracket_matrix(const SemidirectModel& m, const Vec& x) {
  Mat out = Mat::Zero(m.k_dim, m.k_dim);
  for (int a = 0; a < m.k_dim; ++a) out += x(a) * m.ad_k[a];
  return out;
}

Mat rho_matrix(const SemidirectModel& m, const Vec& x) {
  Mat out = Mat::Zero(m.v_dim, m.v_dim);
  for (int a = 0; a < m.k_dim; ++a) out += x(a) * m.rho[a];
  return out;
}

// R(v)(Y) = rho(Y) v
Mat r_operator(const SemidirectModel& m, const Vec& v_orth) {
  Mat out(m.v_dim, m.k_dim);
  for (int a = 0; a < m.k_dim; ++a) out.col(a) = m.rho[a] * v_orth;
  return out;
}

Vec mu_orth(const SemidirectModel& m, const Vec& v, const Vec& w) {
  Vec out(m.k_dim);
  for (int a = 0; a < m.k_dim; ++a) out(a) = v.dot(m.rho[a] * w);
  return out;
}

Mat group_product(const std::vector<Mat>& gens, int k_dim, int n, const Vec& params) {
  Mat g = Mat::Identity(n, n);
  if (k_dim == 0 || params.size() == 0) return g;
  if (params.size() % k_dim != 0) throw DimensionError("group element: parameter length not a multiple of dim k");
  for (Eigen::Index f = 0; f < params.size() / k_dim; ++f) {
    Mat gen = Mat::Zero(n, n);
    for (int a = 0; a < k_dim; ++a) gen += params(f * k_dim + a) * gens[a];
    g = g * matrix_exp(gen);
  }
  return g;
}

}  // namespace

SemidirectModel SemidirectModel::from_cartan(std::shared_ptr<const CartanData> cd) {
  SemidirectModel m;
  const CartanData& c = *cd;
  m.name = descriptor_string(c.alg().family, c.alg().n);
  m.k_dim = static_cast<int>(c.k_basis.cols());
  m.v_dim = static_cast<int>(c.s_basis.cols());
  m.ambient_dim = c.dim();
  m.k_embed = c.k_basis;
  m.v_embed = c.s_basis;
  m.metric = c.b_theta;
  for (int a = 0; a < m.k_dim; ++a) {
    const Mat ada = ad(c.alg(), c.k_basis.col(a));
    m.ad_k.push_back(c.k_basis.transpose() * c.b_theta * ada * c.k_basis);
    m.rho.push_back(c.s_basis.transpose() * c.b_theta * ada * c.s_basis);
  }
  m.cartan = std::move(cd);
  return m;
}

SemidirectModel SemidirectModel::canonical_so(int n) {
  const LieAlgebraData so = build_algebra(Family::so, n);
  SemidirectModel m;
  m.name = "so" + std::to_string(n) + "+R" + std::to_string(n);
  m.k_dim = so.dim;
  m.v_dim = n;
  m.ambient_dim = so.dim + n;
  m.k_embed = Mat::Zero(m.ambient_dim, m.k_dim);
  m.k_embed.topRows(m.k_dim).setIdentity();
  m.v_embed = Mat::Zero(m.ambient_dim, n);
  m.v_embed.bottomRows(n).setIdentity();
  m.metric = Mat::Identity(m.ambient_dim, m.ambient_dim);
  // the elementary A_ij are orthonormal for (1/2) tr(B^T C)
  for (int a = 0; a < so.dim; ++a) {
    m.ad_k.push_back(so.ad_basis[a]);
    m.rho.push_back(so.basis[a].real());
  }
  return m;
}

SemidirectElement make_semidirect_element(const SemidirectModel& m, const Vec& k_part, const Vec& s_part) {
  require_ambient(m, k_part, "semidirect element");
  require_ambient(m, s_part, "semidirect element");
  if ((m.k_embed * m.k_coords(k_part) - k_part).norm() > kPartTol * (1 + k_part.norm())) {
    throw DomainError("semidirect element: k part outside k");
  }
  if ((m.v_embed * m.v_coords(s_part) - s_part).norm() > kPartTol * (1 + s_part.norm())) {
    throw DomainError("semidirect element: V part outside V");
  }
  return {k_part, s_part};
}

SemidirectElement semidirect_bracket(const SemidirectModel& m, const SemidirectElement& a, const SemidirectElement& b) {
  const auto ea = make_semidirect_element(m, a.k_part, a.s_part);
  const auto eb = make_semidirect_element(m, b.k_part, b.s_part);
  const Vec x = m.k_coords(ea.k_part), y = m.k_coords(eb.k_part);
  const Vec v = m.v_coords(ea.s_part), w = m.v_coords(eb.s_part);
  const Vec k = k_bracket_matrix(m, x) * y;
  const Vec s = rho_matrix(m, x) * w - rho_matrix(m, y) * v;
  return {m.k_embed * k, m.v_embed * s};
}

Vec moment_mu(const SemidirectModel& m, const Vec& v, const Vec& w) {
  require_ambient(m, v, "moment_mu");
  require_ambient(m, w, "moment_mu");
  const Vec vo = m.v_coords(v), wo = m.v_coords(w);
  if ((m.v_embed * vo - v).norm() > kPartTol * (1 + v.norm()) || (m.v_embed * wo - w).norm() > kPartTol * (1 + w.norm())) {
    throw DomainError("moment_mu: arguments must lie in V");
  }
  return m.k_embed * mu_orth(m, vo, wo);
}

Mat a_operator(const SemidirectModel& m, const Vec& v_orth) {
  if (v_orth.size() != m.v_dim) throw DimensionError("a_operator: coordinate length mismatch");
  Mat out(m.k_dim, m.v_dim);
  for (int j = 0; j < m.v_dim; ++j) out.col(j) = mu_orth(m, v_orth, Vec::Unit(m.v_dim, j));
  return out;
}

Mat ad_rho_matrix(const SemidirectModel& m, const SemidirectElement& e) {
  const Vec x = m.k_coords(e.k_part), v = m.v_coords(e.s_part);
  Mat out = Mat::Zero(m.k_dim + m.v_dim, m.k_dim + m.v_dim);
  out.topLeftCorner(m.k_dim, m.k_dim) = k_bracket_matrix(m, x);
  out.bottomLeftCorner(m.v_dim, m.k_dim) = -r_operator(m, v);
  out.bottomRightCorner(m.v_dim, m.v_dim) = rho_matrix(m, x);
  return out;
}

Mat coad_star_matrix(const SemidirectModel& m, const SemidirectElement& e) {
  const Vec x = m.k_coords(e.k_part), v = m.v_coords(e.s_part);
  Mat out = Mat::Zero(m.k_dim + m.v_dim, m.k_dim + m.v_dim);
  out.topLeftCorner(m.k_dim, m.k_dim) = k_bracket_matrix(m, x);
  out.topRightCorner(m.k_dim, m.v_dim) = -a_operator(m, v);
  out.bottomRightCorner(m.v_dim, m.v_dim) = rho_matrix(m, x);
  return out;
}

Mat group_rho(const SemidirectModel& m, const Vec& params) { return group_product(m.rho, m.k_dim, m.v_dim, params); }

Mat group_ad_k(const SemidirectModel& m, const Vec& params) { return group_product(m.ad_k, m.k_dim, m.k_dim, params); }

CoadjointFiber coadjoint_fiber(const SemidirectModel& m, const Vec& w) {
  require_ambient(m, w, "coadjoint_fiber");
  return {w, column_space(m.k_embed * a_operator(m, m.v_coords(w)))};
}

Mat orbit_tangent(const SemidirectModel& m, const Vec& w) {
  require_ambient(m, w, "orbit_tangent");
  return column_space(m.v_embed * r_operator(m, m.v_coords(w)));
}

std::vector<OrbitSample> sample_semidirect_orbit(const SemidirectModel& m, const Vec& x, std::uint64_t seed, int n_base,
                                                 int n_fiber) {
  require_ambient(m, x, "sample_semidirect_orbit");
  if (m.cartan && !in_closed_chamber(*m.cartan, x)) {
    throw DomainError("sample_semidirect_orbit: H outside the closed positive Weyl chamber");
  }
  const Vec xo = m.v_coords(x);
  if ((m.v_embed * xo - x).norm() > kPartTol * (1 + x.norm())) throw DomainError("sample_semidirect_orbit: base point outside V");
  NormalSource rng(seed);
  NormalSource fiber_rng(derived_seed(seed, 1));
  std::vector<OrbitSample> out;
  out.reserve(static_cast<std::size_t>(std::max(n_base, 0) * std::max(n_fiber, 0)));
  for (int i = 0; i < n_base; ++i) {
    const Vec k_params = rng.vector(3 * m.k_dim);
    const Vec wo = group_rho(m, k_params) * xo;
    const Mat a_w = a_operator(m, wo);
    for (int j = 0; j < n_fiber; ++j) {
      OrbitSample s;
      s.kind = OrbitKind::semidirect;
      s.r = DeformationParameter::infinity();
      s.base_tag = i;
      s.fiber_tag = j;
      s.k_params = k_params;
      s.fiber_coeffs = fiber_rng.vector(m.v_dim);
      s.base = m.v_embed * wo;
      s.fiber_source = m.v_embed * s.fiber_coeffs;
      s.point = s.base + m.k_embed * (a_w * s.fiber_coeffs);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<OrbitSample> sample_semidirect_orbit(const CartanData& cd, const Vec& h, std::uint64_t seed, int n_base,
                                                 int n_fiber) {
  const auto model = SemidirectModel::from_cartan(std::make_shared<const CartanData>(cd));
  return sample_semidirect_orbit(model, h, seed, n_base, n_fiber);
}

CotangentPoint phi_cotangent(const SemidirectModel& m, const OrbitSample& p) {
  if (!p.tagged || p.base.size() != m.ambient_dim || p.point.size() != m.ambient_dim) {
    throw RepresentationError("phi_cotangent: sample carries no base / fiber decomposition");
  }
  const Vec wo = m.v_coords(p.base);
  const Vec xk = m.k_coords(p.point);
  // mu(v ^ w) = -A(w) v
  const Mat a_w = a_operator(m, wo);
  const Vec v = -a_w.completeOrthogonalDecomposition().solve(xk);
  if ((a_w * v + xk).norm() > Tolerance{}.scale(xk.norm())) {
    throw RepresentationError("phi_cotangent: k part of the sample is not in the fiber over its base");
  }
  return {p.base, m.v_embed * v};
}

int phi_fiber_rank(const SemidirectModel& m, const Vec& w) {
  require_ambient(m, w, "phi_fiber_rank");
  const Mat a_w = a_operator(m, m.v_coords(w));
  // phi on the fiber is X -> -pinv(A(w)) X, restricted to the image of A(w)
  const Mat image = column_space(a_w);
  if (image.cols() == 0) return 0;
  const Mat pinv = a_w.completeOrthogonalDecomposition().pseudoInverse();
  return numeric_rank(pinv * image);
}

SemidirectElement cotangent_moment(const SemidirectModel& m, const Vec& y, const Vec& covector, const Vec& k_params) {
  require_ambient(m, y, "cotangent_moment");
  require_ambient(m, covector, "cotangent_moment");
  Vec yo = m.v_coords(y), co = m.v_coords(covector);
  if (k_params.size() > 0) {
    const Mat g = group_rho(m, k_params);
    yo = g * yo;
    co = g * co;
  }
  return {m.k_embed * mu_orth(m, co, yo), m.v_embed * yo};
}

double moment_equivariance_residual(const SemidirectModel& m, const Vec& y, const Vec& covector, const Vec& k_params) {
  const SemidirectElement moved = cotangent_moment(m, y, covector, k_params);
  const SemidirectElement here = cotangent_moment(m, y, covector);
  const Vec k = m.k_embed * (group_ad_k(m, k_params) * m.k_coords(here.k_part));
  const Vec s = m.v_embed * (group_rho(m, k_params) * m.v_coords(here.s_part));
  return (moved.k_part - k).norm() + (moved.s_part - s).norm();
}

double distance_to_fiber(const SemidirectModel& m, const Vec& w, const Vec& point) {
  require_ambient(m, point, "distance_to_fiber");
  const CoadjointFiber f = coadjoint_fiber(m, w);
  Vec d = point - w;
  // fiber basis columns are Euclidean-orthonormal
  d -= f.fiber_basis * (f.fiber_basis.transpose() * d);
  return d.norm();
}

}  // namespace lieorbit
