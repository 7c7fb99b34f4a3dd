#pragma once

#include "lieorbit/cartan.hpp"
#include "lieorbit/deformation.hpp"
#include "lieorbit/orbit_sample.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace lieorbit {

/// A skew-symmetric bilinear form given by its Gram matrix.
struct SkewFormData {
  Mat gram;
  /// Rank decisions use singular values above max(abs_eps, rel_eps * largest).
  Tolerance tol{1e-12, 1e-8};

  SkewFormData() = default;
  explicit SkewFormData(const Mat& g, const Tolerance& t = {1e-12, 1e-8});
  [[nodiscard]] int dim() const { return static_cast<int>(gram.rows()); }
  /// Summed over i < j as g_ij (x_i y_j - x_j y_i), so value(x, x) is exactly 0.
  [[nodiscard]] double operator()(const Vec& x, const Vec& y) const;
};

/// Gram matrix of the form on span(basis). Throws DimensionError when the
/// columns are linearly dependent.
SkewFormData restrict_form(const SkewFormData& form, const Mat& basis);
Mat radical(const SkewFormData& form);
/// Greedy maximal isotropic subspace: the radical extended one random vector
/// of the form-orthogonal complement at a time.
Mat max_isotropic(const SkewFormData& form, std::uint64_t seed);

/// Hermitian data of a complex semisimple algebra with compact real form u:
/// H_tau(X, Y) = -<X, tau Y> (complex Killing form), B_tau = 2 Re H_tau and
/// Omega(X, Y) = B_tau(iX, Y).
struct HermitianContext {
  std::shared_ptr<const CartanData> cartan;
  Mat J;      // multiplication by i
  Mat b_tau;  // real inner product
  SkewFormData omega;

  [[nodiscard]] const CartanData& cd() const { return *cartan; }
  [[nodiscard]] const LieAlgebraData& alg() const { return cartan->alg(); }
  [[nodiscard]] int dim() const { return cartan->dim(); }
};

/// Throws DomainError for real families.
HermitianContext make_hermitian_context(std::shared_ptr<const CartanData> cartan);

std::complex<double> hermitian_form(const HermitianContext& ctx, const Vec& x, const Vec& y);
double omega(const HermitianContext& ctx, const Vec& x, const Vec& y);

/// Real dimension of the positive eigenspaces of ad(x) for x in s, i.e. the
/// dimension of the flag manifold through x.
int flag_dimension(const HermitianContext& ctx, const Vec& x);

/// Orthonormal basis of the tangent space at a tagged sample:
/// flag [u, x]; adjoint [g, x]; deformed [g, x]_r; semidirect
/// [u, x] + [base, s]. Throws SamplingError when the rank falls below the
/// expected orbit dimension.
Mat orbit_tangent_basis(const HermitianContext& ctx, const OrbitSample& p, OrbitKind kind);

struct SymplecticReport {
  OrbitKind kind = OrbitKind::semidirect;
  int samples = 0;
  int expected_dim = 0;
  int min_rank = 0;
  double min_singular_ratio = 0.0;  // smallest / largest singular value of the restricted form
  double min_singular_value = 0.0;  // smallest singular value, in units of |Omega|
  bool fiber_checked = false;
  double fiber_isotropy = 0.0;      // max |Omega| on fiber tangents
  bool fiber_maximal = false;       // fiber dimension equals the maximal isotropic dimension
  bool pass = false;
  int offending = -1;
};

/// Certifies that Omega restricted to the orbit is non-degenerate at every
/// sample, and for semidirect samples that fiber tangents are maximal isotropic.
SymplecticReport check_symplectic_on_orbit(const HermitianContext& ctx, const std::vector<OrbitSample>& samples,
                                           OrbitKind kind, double rank_ratio = 1e-8, double fiber_tol = 1e-10);

/// B_tau-orthogonal projection of N onto the tangent space of the flag at x.
Vec gradient_at(const HermitianContext& ctx, const Vec& n, const Vec& x);

struct SectionSample {
  Vec n;  // height function f_N(x) = B_tau(x, N)
  std::vector<Vec> base_points;
  std::vector<Vec> field_values;
  double t = 0.0;
  std::vector<Vec> section_points;
};

SectionSample gradient_field(const HermitianContext& ctx, const Vec& n, const std::vector<OrbitSample>& flag_samples);
/// Section points x + t i Y(x).
SectionSample lagrangian_section(const HermitianContext& ctx, const SectionSample& field, double t);

/// Tangents of the section at base point i along the curves Ad(e^{eps A}) x,
/// A running over the u basis, by central differences.
Mat section_tangents(const HermitianContext& ctx, const SectionSample& s, std::size_t i, double step = 1e-5);
/// The same tangents from [A, x] + t i [Y, A~](x) + t i [A, Y(x)], with the
/// Lie derivative term estimated by differences of Y along A~.
Mat section_tangents_formula(const HermitianContext& ctx, const SectionSample& s, std::size_t i, double step = 1e-5);
/// max |Omega(v, w)| over pairs of section tangents at every base point.
double section_isotropy(const HermitianContext& ctx, const SectionSample& s, double step = 1e-5);

/// max |dF(w) - Omega(w, iY)| for F = f_N o pi on semidirect samples, over
/// horizontal and vertical tangent curves.
double gradient_hamiltonian_residual(const HermitianContext& ctx, const Vec& n, const std::vector<OrbitSample>& samples,
                                     double step = 1e-5);

/// max |Omega(d psi~ v, d psi~ w) - Omega(v, w)| over tangent pairs at tagged
/// adjoint samples, all derivatives by central differences of tagged curves.
double pullback_check(const HermitianContext& ctx, DeformationParameter r, const std::vector<OrbitSample>& samples,
                      double step = 1e-5);

/// -i [tau x, x].
Vec u_moment(const HermitianContext& ctx, const Vec& x);

/// Max of the finite-difference mismatch of d/dt Q(alpha)/2 against
/// Omega(ad(A) alpha', alpha) and the asymmetry of beta_A.
double hamiltonian_Q_check(const HermitianContext& ctx, const Vec& a, std::uint64_t seed, int trials = 20);

struct IsotropyReport {
  int flag_dim = 0;
  int orbit_dim = 0;
  double flag_form_max = 0.0;
  int stabilizer_H = 0;
  int max_stabilizer_X = 0;   // largest dim U_{H+X} over the random X
  double min_moment = 0.0;    // smallest |u_moment(H + X)|
  int trials = 0;
  bool pass = false;
};

IsotropyReport unique_isotropic_orbit_check(const HermitianContext& ctx, const Vec& h, std::uint64_t seed,
                                            int trials = 20);

/// Max |Omega| on T(Ad(U) x) restricted, for points with |[tau x, x]| below
/// `small`; and min of that quantity for points above `large`.
struct IsotropyCriterion {
  double worst_isotropic = 0.0;
  double weakest_nonisotropic = 0.0;
  int isotropic_points = 0;
  int nonisotropic_points = 0;
};
IsotropyCriterion isotropy_criterion(const HermitianContext& ctx, const std::vector<Vec>& points, double small = 1e-10,
                                     double large = 1e-3);

}  // namespace lieorbit
