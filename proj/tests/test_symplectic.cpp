#include "doctest.h"

#include "lieorbit/errors.hpp"
#include "lieorbit/semidirect.hpp"
#include "lieorbit/symplectic.hpp"

#include <cmath>

using namespace lieorbit;

namespace {

std::shared_ptr<const CartanData> cartan_of(const char* d) {
  return std::make_shared<const CartanData>(cartan_structure(build_algebra(d)));
}

Mat standard_symplectic(int m) {
  Mat j = Mat::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m) = Mat::Identity(m, m);
  j.bottomLeftCorner(m, m) = -Mat::Identity(m, m);
  return j;
}

Mat random_skew(NormalSource& rng, int n, int half_rank) {
  Mat l(2 * half_rank, n);
  for (Eigen::Index i = 0; i < l.size(); ++i) l.data()[i] = rng.next();
  return l.transpose() * standard_symplectic(half_rank) * l;
}

Vec coeffs_of(const HermitianContext& ctx, const CMat& m) { return to_coeffs(ctx.alg(), m); }

}  // namespace

TEST_CASE("SkewFormData: antisymmetrized on construction") {
  Mat g(2, 2);
  g << 1, 2, 0, 3;
  const SkewFormData f(g);
  CHECK((f.gram + f.gram.transpose()).norm() == 0.0);
  CHECK(f.gram(0, 1) == 1.0);
}

TEST_CASE("radical: examples") {
  CHECK(radical(SkewFormData(standard_symplectic(2))).cols() == 0);
  CHECK(radical(SkewFormData(Mat::Zero(4, 4))).cols() == 4);
  Mat j = Mat::Zero(4, 4);
  j.topLeftCorner(2, 2) = standard_symplectic(1);
  CHECK(radical(SkewFormData(j)).cols() == 2);
}

TEST_CASE("max_isotropic: examples") {
  CHECK(max_isotropic(SkewFormData(standard_symplectic(2)), 1).cols() == 2);
  CHECK(max_isotropic(SkewFormData(Mat::Zero(3, 3)), 1).cols() == 3);
  Mat j = Mat::Zero(4, 4);
  j.topLeftCorner(2, 2) = standard_symplectic(1);
  const SkewFormData f(j);
  const Mat w = max_isotropic(f, 1);
  CHECK(w.cols() == 3);
  CHECK((w.transpose() * f.gram * w).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("max_isotropic: 2 dim W = dim V + dim radical on random forms of mixed rank") {
  NormalSource rng(17);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 9;
    const int half = t % (n / 2 + 1);
    const SkewFormData f(random_skew(rng, n, half));
    const Mat rad = radical(f);
    const Mat w = max_isotropic(f, 100 + t);
    CHECK(rad.cols() == n - 2 * half);
    CHECK(2 * w.cols() == n + rad.cols());
    CHECK((w.transpose() * f.gram * w).cwiseAbs().maxCoeff() < 1e-8 * (1 + f.gram.norm()));
  }
}

TEST_CASE("restrict_form: examples and dependent basis") {
  const SkewFormData f(standard_symplectic(2));
  const SkewFormData one = restrict_form(f, Vec::Unit(4, 0));
  CHECK(one.gram.rows() == 1);
  CHECK(one.gram(0, 0) == 0.0);
  Mat dep(4, 2);
  dep << 1, 2, 0, 0, 0, 0, 0, 0;
  CHECK_THROWS_AS(restrict_form(f, dep), DimensionError);
}

TEST_CASE("make_hermitian_context: real families are rejected") {
  CHECK_THROWS_AS(make_hermitian_context(cartan_of("sl2r")), DomainError);
  CHECK_THROWS_AS(make_hermitian_context(cartan_of("so3")), DomainError);
}

TEST_CASE("hermitian_form: sl(2,C) value on H and positivity") {
  const auto ctx = make_hermitian_context(cartan_of("sl2c"));
  Vec h = Vec::Zero(6);
  h(0) = 1.0;
  // complex Killing of sl(2,C) is 4 tr(XY), tau H = -H, tr(H^2) = 2
  CHECK(hermitian_form(ctx, h, h).real() == doctest::Approx(8.0));
  CHECK(std::abs(hermitian_form(ctx, h, h).imag()) < 1e-14);

  NormalSource rng(3);
  for (int t = 0; t < 20; ++t) {
    const Vec x = rng.vector(6), y = rng.vector(6);
    const auto hx = hermitian_form(ctx, x, x);
    CHECK(hx.real() > 0.0);
    CHECK(std::abs(hx.imag()) < 1e-12);
    // sesquilinear: H(iX, Y) = i H(X, Y), H(X, iY) = -i H(X, Y)
    const std::complex<double> i(0, 1);
    CHECK(std::abs(hermitian_form(ctx, ctx.J * x, y) - i * hermitian_form(ctx, x, y)) < 1e-10);
    CHECK(std::abs(hermitian_form(ctx, x, ctx.J * y) + i * hermitian_form(ctx, x, y)) < 1e-10);
    CHECK(std::abs(hermitian_form(ctx, y, x) - std::conj(hermitian_form(ctx, x, y))) < 1e-10);
  }
}

TEST_CASE("Hermitian structure identities") {
  for (const char* d : {"sl2c", "sl3c"}) {
    const auto ctx = make_hermitian_context(cartan_of(d));
    const auto& cd = ctx.cd();
    NormalSource rng(4);
    for (int t = 0; t < 20; ++t) {
      const Vec x = rng.vector(ctx.dim()), y = rng.vector(ctx.dim());
      CHECK(x.dot(ctx.b_tau * y) == doctest::Approx(2.0 * hermitian_form(ctx, x, y).real()).epsilon(1e-10));
      CHECK((ctx.J * x).dot(ctx.b_tau * (ctx.J * y)) == doctest::Approx(x.dot(ctx.b_tau * y)).epsilon(1e-10));
      CHECK(omega(ctx, x, x) == 0.0);
      CHECK(omega(ctx, x, y) == doctest::Approx(-omega(ctx, y, x)));
    }
    // u is Lagrangian, and so is s = iu
    CHECK((cd.k_basis.transpose() * ctx.omega.gram * cd.k_basis).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((cd.s_basis.transpose() * ctx.omega.gram * cd.s_basis).cwiseAbs().maxCoeff() < 1e-12);
    // restriction of H_tau to s is the Killing form
    for (Eigen::Index i = 0; i < cd.s_basis.cols(); ++i) {
      const Vec s = cd.s_basis.col(i);
      CHECK(hermitian_form(ctx, s, s).real() == doctest::Approx(killing(ctx.alg(), s, s) / 2.0).epsilon(1e-10));
    }
    // Ad(U) invariance
    for (int t = 0; t < 5; ++t) {
      const Mat g = matrix_exp(ad(ctx.alg(), cd.k_basis * rng.vector(cd.k_basis.cols())));
      CHECK((g.transpose() * ctx.omega.gram * g - ctx.omega.gram).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("orbit_tangent_basis: dimensions on sl(2,C)") {
  const auto cd = cartan_of("sl2c");
  const auto ctx = make_hermitian_context(cd);
  const auto semi = sample_semidirect_orbit(*cd, cd->chamber_H, 2, 3, 2);
  for (const auto& p : semi) CHECK(orbit_tangent_basis(ctx, p, OrbitKind::semidirect).cols() == 4);
  for (const auto& p : flag_orbit_sample(*cd, cd->chamber_H, 2, 5)) CHECK(orbit_tangent_basis(ctx, p, OrbitKind::flag).cols() == 2);
  const auto one = make_deformation_context(cd, DeformationParameter::finite(1.0));
  for (const auto& p : sample_deformed_orbit(one, cd->chamber_H, 2, 3, 2)) {
    CHECK(orbit_tangent_basis(ctx, p, OrbitKind::adjoint).cols() == 4);
  }
  const auto three = make_deformation_context(cd, DeformationParameter::finite(3.0));
  for (const auto& p : sample_deformed_orbit(three, cd->chamber_H, 2, 3, 2)) {
    CHECK(orbit_tangent_basis(ctx, p, OrbitKind::deformed).cols() == 4);
  }
  OrbitSample zero;
  zero.base = Vec::Zero(6);
  zero.point = Vec::Zero(6);
  CHECK(orbit_tangent_basis(ctx, zero, OrbitKind::semidirect).cols() == 0);
}

TEST_CASE("check_symplectic_on_orbit: semidirect orbits of sl(2,C) and sl(3,C)") {
  for (const char* d : {"sl2c", "sl3c"}) {
    INFO(d);
    const auto cd = cartan_of(d);
    const auto ctx = make_hermitian_context(cd);
    const auto rep = check_symplectic_on_orbit(ctx, sample_semidirect_orbit(*cd, cd->chamber_H, 5, 30, 1), OrbitKind::semidirect);
    CHECK(rep.pass);
    CHECK(rep.min_rank == rep.expected_dim);
    CHECK(rep.expected_dim == (std::string(d) == "sl2c" ? 4 : 12));
    CHECK(rep.fiber_isotropy < 1e-10);
    CHECK(rep.fiber_maximal);
  }
}

TEST_CASE("check_symplectic_on_orbit: adjoint orbit is symplectic (complex submanifold)") {
  const auto cd = cartan_of("sl3c");
  const auto ctx = make_hermitian_context(cd);
  const auto one = make_deformation_context(cd, DeformationParameter::finite(1.0));
  const auto rep = check_symplectic_on_orbit(ctx, sample_deformed_orbit(one, cd->chamber_H, 6, 10, 2), OrbitKind::adjoint);
  CHECK(rep.pass);
  CHECK_FALSE(rep.fiber_checked);
}

TEST_CASE("check_symplectic_on_orbit: the flag alone is isotropic, so it is reported degenerate") {
  const auto cd = cartan_of("sl2c");
  const auto ctx = make_hermitian_context(cd);
  const auto rep = check_symplectic_on_orbit(ctx, flag_orbit_sample(*cd, cd->chamber_H, 7, 5), OrbitKind::flag);
  CHECK_FALSE(rep.pass);
  CHECK(rep.offending == 0);
}

TEST_CASE("gradient_field: height function on the sphere of sl(2,C)") {
  const auto cd = cartan_of("sl2c");
  const auto ctx = make_hermitian_context(cd);
  const Vec h = cd->chamber_H;
  CHECK(gradient_at(ctx, h, h).norm() < 1e-12);
  CHECK(gradient_at(ctx, h, -h).norm() < 1e-12);
  CHECK(gradient_at(ctx, h, Vec::Zero(6)).norm() == 0.0);

  const auto flags = flag_orbit_sample(*cd, h, 8, 30);
  const auto field = gradient_field(ctx, h, flags);
  const Mat& kb = cd->k_basis;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    const Vec& x = field.base_points[i];
    const Vec& y = field.field_values[i];
    const Mat tangent = column_space(ad(ctx.alg(), x) * kb);
    CHECK(containment_residual(y, tangent) < 1e-9);
    const Mat vertical = column_space(ad(ctx.alg(), x) * cd->s_basis);
    if (y.norm() > 1e-9) CHECK(containment_residual(ctx.J * y, vertical) < 1e-9);
    // away from the poles Y does not vanish
    const double cos_angle = x.dot(ctx.b_tau * h) / h.dot(ctx.b_tau * h);
    if (std::abs(std::abs(cos_angle) - 1.0) > 1e-3) CHECK(y.norm() > 1e-6);
    // B(Y, v) is the directional derivative of f_N along v = [A, x]
    for (Eigen::Index a = 0; a < kb.cols(); ++a) {
      const Mat ada = ad(ctx.alg(), kb.col(a));
      const double step = 1e-5;
      const double fd = ((matrix_exp(step * ada) * x - matrix_exp(-step * ada) * x).dot(ctx.b_tau * h)) / (2 * step);
      CHECK(std::abs(y.dot(ctx.b_tau * (ada * x)) - fd) < 1e-6);
    }
  }
}

TEST_CASE("gradient_field: a point orbit has the zero field") {
  const auto cd = cartan_of("sl2c");
  const auto ctx = make_hermitian_context(cd);
  const auto field = gradient_field(ctx, cd->chamber_H, flag_orbit_sample(*cd, Vec::Zero(6), 1, 5));
  for (const auto& y : field.field_values) CHECK(y.norm() == 0.0);
}

TEST_CASE("lagrangian_section: sections of the height gradient are isotropic") {
  for (const char* d : {"sl2c", "sl3c"}) {
    const auto cd = cartan_of(d);
    const auto ctx = make_hermitian_context(cd);
    const auto field = gradient_field(ctx, cd->chamber_H, flag_orbit_sample(*cd, cd->chamber_H, 9, 15));
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
      const auto s = lagrangian_section(ctx, field, t);
      CHECK(section_isotropy(ctx, s) < 1e-6);
      for (std::size_t i = 0; i < s.base_points.size(); ++i) {
        CHECK((s.section_points[i] - s.base_points[i] - t * (ctx.J * s.field_values[i])).norm() < 1e-14);
        CHECK((section_tangents(ctx, s, i) - section_tangents_formula(ctx, s, i)).cwiseAbs().maxCoeff() < 1e-6);
      }
    }
    if (std::string(d) == "sl2c") {
      // t = 0 is the flag itself
      const auto s0 = lagrangian_section(ctx, field, 0.0);
      for (std::size_t i = 0; i < s0.base_points.size(); ++i) CHECK(s0.section_points[i] == s0.base_points[i]);
    }
  }
}

TEST_CASE("gradient / Hamiltonian correspondence on the semidirect orbit") {
  for (const char* d : {"sl2c", "sl3c"}) {
    const auto cd = cartan_of(d);
    const auto ctx = make_hermitian_context(cd);
    const auto semi = sample_semidirect_orbit(*cd, cd->chamber_H, 11, 8, 2);
    CHECK(gradient_hamiltonian_residual(ctx, cd->chamber_H, semi) < 1e-6);
  }
}

TEST_CASE("pullback_check: identity at r = 1") {
  const auto cd = cartan_of("sl2c");
  const auto ctx = make_hermitian_context(cd);
  const auto one = make_deformation_context(cd, DeformationParameter::finite(1.0));
  CHECK(pullback_check(ctx, DeformationParameter::finite(1.0), sample_deformed_orbit(one, cd->chamber_H, 12, 10, 1)) < 1e-9);
}

TEST_CASE("psi_r scales Omega on fiber tangents by 1 - c^2") {
  const auto cd = cartan_of("sl2c");
  const auto ctx = make_hermitian_context(cd);
  const Mat n_plus = h_subspaces(*cd, cd->chamber_H).n_plus;
  REQUIRE(n_plus.cols() == 2);
  const Vec v1 = n_plus.col(0), v2 = ctx.J * v1;
  CHECK(omega(ctx, v1, v2) == doctest::Approx(1.0));  // Omega(V, iV) = B(V, V)
  for (double r : {0.5, 2.0, 10.0}) {
    const auto dctx = make_deformation_context(cd, DeformationParameter::finite(r));
    const double c = (r - 1) / (r + 1);
    CHECK(omega(ctx, dctx.psi_r * v1, dctx.psi_r * v2) == doctest::Approx((1 - c * c) * omega(ctx, v1, v2)).epsilon(1e-10));
  }
  const auto inf = make_deformation_context(cd, DeformationParameter::infinity());
  CHECK(std::abs(omega(ctx, inf.psi_r * v1, inf.psi_r * v2)) < 1e-12);
}

TEST_CASE("u_moment: examples") {
  const auto cd = cartan_of("sl3c");
  const auto ctx = make_hermitian_context(cd);
  NormalSource rng(13);
  // complex diagonal
  CMat diag = CMat::Zero(3, 3);
  diag(0, 0) = {1.0, 2.0};
  diag(1, 1) = {-0.5, 1.0};
  diag(2, 2) = -diag(0, 0) - diag(1, 1);
  const Vec x = coeffs_of(ctx, diag);
  CHECK(u_moment(ctx, x).norm() < 1e-12);
  // unitary conjugate of a diagonal matrix is normal
  for (int t = 0; t < 10; ++t) {
    const Mat g = matrix_exp(ad(ctx.alg(), cd->k_basis * rng.vector(cd->k_basis.cols())));
    const Vec y = g * x;
    const Vec m = u_moment(ctx, y);
    CHECK(m.norm() < 1e-9);
  }
  // E12 in sl(2,C)
  const auto c2 = cartan_of("sl2c");
  const auto ctx2 = make_hermitian_context(c2);
  CMat e12 = CMat::Zero(2, 2);
  e12(0, 1) = 1.0;
  const Vec m = u_moment(ctx2, coeffs_of(ctx2, e12));
  CMat expected = CMat::Zero(2, 2);
  expected(0, 0) = {0.0, -1.0};
  expected(1, 1) = {0.0, 1.0};
  CHECK((to_matrix(ctx2.alg(), m) - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((c2->s_proj * m).norm() < 1e-12);
  // always in u
  for (int t = 0; t < 10; ++t) CHECK((cd->s_proj * u_moment(ctx, rng.vector(16))).norm() < 1e-9);
}

TEST_CASE("hamiltonian_Q_check") {
  const auto cd = cartan_of("sl3c");
  const auto ctx = make_hermitian_context(cd);
  CHECK(hamiltonian_Q_check(ctx, Vec::Zero(16), 1) == 0.0);
  NormalSource rng(14);
  CHECK(hamiltonian_Q_check(ctx, cd->k_basis * rng.vector(8), 2) < 1e-6);
  CHECK_THROWS_AS(hamiltonian_Q_check(ctx, cd->chamber_H, 3), DomainError);
}

TEST_CASE("unique_isotropic_orbit_check") {
  const auto c2 = cartan_of("sl2c");
  const auto r2 = unique_isotropic_orbit_check(make_hermitian_context(c2), c2->chamber_H, 1);
  CHECK(r2.pass);
  CHECK(r2.flag_dim == 2);
  CHECK(r2.orbit_dim == 4);
  CHECK(r2.stabilizer_H == 1);
  CHECK(r2.max_stabilizer_X == 0);

  const auto c3 = cartan_of("sl3c");
  const auto r3 = unique_isotropic_orbit_check(make_hermitian_context(c3), c3->chamber_H, 2);
  CHECK(r3.pass);
  CHECK(r3.flag_dim == 6);
  CHECK(r3.orbit_dim == 12);

  const auto r0 = unique_isotropic_orbit_check(make_hermitian_context(c2), c2->chamber_H, 1, 0);
  CHECK(r0.pass);
}

TEST_CASE("isotropy_criterion: commuting with tau x decides isotropy") {
  const auto cd = cartan_of("sl3c");
  const auto ctx = make_hermitian_context(cd);
  NormalSource rng(15);
  std::vector<Vec> points;
  const Vec n_plus_dir = h_subspaces(*cd, cd->chamber_H).n_plus.col(0);
  for (int t = 0; t < 10; ++t) {
    const Mat g = matrix_exp(ad(ctx.alg(), cd->k_basis * rng.vector(8)));
    points.push_back(g * cd->chamber_H);
    points.push_back(g * (cd->chamber_H + n_plus_dir));
  }
  const auto c = isotropy_criterion(ctx, points);
  CHECK(c.isotropic_points == 10);
  CHECK(c.nonisotropic_points == 10);
  CHECK(c.worst_isotropic < 1e-8);
  CHECK(c.weakest_nonisotropic > 1e-6);
}
