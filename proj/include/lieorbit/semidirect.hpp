#pragma once

#include "lieorbit/cartan.hpp"
#include "lieorbit/orbit_sample.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace lieorbit {

/// A semidirect product k x_rho V of a compact algebra k acting on a real
/// vector space V by a representation rho preserving an inner product.
///
/// Internally k and V carry orthonormal coordinates. Externally elements are
/// ambient vectors of length ambient_dim, with k_embed / v_embed mapping
/// orthonormal coordinates into the ambient space and `metric` the ambient
/// inner product. For the Cartan instantiation the ambient space is g itself
/// (V = s, metric B_theta); for so(n) acting on R^n it is the concatenation
/// [so(n) coefficients; R^n] with the pairing (1/2) tr(B^T C) on so(n).
///
/// The moment map is fixed by <mu(v ^ w), Y> = <v, rho(Y) w>, and
/// A(v)(w) = mu(v ^ w).
struct SemidirectModel {
  std::string name;
  int k_dim = 0;
  int v_dim = 0;
  int ambient_dim = 0;
  Mat k_embed;
  Mat v_embed;
  Mat metric;
  std::vector<Mat> ad_k;  // ad of the orthonormal k basis, on k
  std::vector<Mat> rho;   // rho of the orthonormal k basis, on V
  std::shared_ptr<const CartanData> cartan;  // null for so(n)

  static SemidirectModel from_cartan(std::shared_ptr<const CartanData> cd);
  static SemidirectModel canonical_so(int n);

  [[nodiscard]] Vec k_coords(const Vec& ambient) const { return k_embed.transpose() * (metric * ambient); }
  [[nodiscard]] Vec v_coords(const Vec& ambient) const { return v_embed.transpose() * (metric * ambient); }
};

struct SemidirectElement {
  Vec k_part;  // ambient vector in k
  Vec s_part;  // ambient vector in V
};

/// Validates that the parts lie in k and V (tolerance 1e-10) and builds the element.
SemidirectElement make_semidirect_element(const SemidirectModel& m, const Vec& k_part, const Vec& s_part);

SemidirectElement semidirect_bracket(const SemidirectModel& m, const SemidirectElement& a, const SemidirectElement& b);

/// mu(v ^ w) as an ambient vector in k; v and w are ambient vectors in V.
Vec moment_mu(const SemidirectModel& m, const Vec& v, const Vec& w);

/// Matrix of A(v) from orthonormal V coordinates to orthonormal k coordinates.
Mat a_operator(const SemidirectModel& m, const Vec& v_orth);
/// [[ad X, 0], [-R(v), rho(X)]] with R(v)(Y) = rho(Y) v, orthonormal (k, V) coordinates.
Mat ad_rho_matrix(const SemidirectModel& m, const SemidirectElement& e);
/// [[ad X, -A(v)], [0, rho(X)]], the negative transpose of ad_rho_matrix.
Mat coad_star_matrix(const SemidirectModel& m, const SemidirectElement& e);

/// Action of exp(A_1) ... exp(A_m) on V and on k (orthonormal coordinates);
/// params are back to back k coordinates.
Mat group_rho(const SemidirectModel& m, const Vec& params);
Mat group_ad_k(const SemidirectModel& m, const Vec& params);

struct CoadjointFiber {
  Vec base;
  Mat fiber_basis;  // ambient columns spanning A(w)(V)
};

CoadjointFiber coadjoint_fiber(const SemidirectModel& m, const Vec& w);
/// Ambient orthonormal basis of T_w(K . w) = rho(k) w.
Mat orbit_tangent(const SemidirectModel& m, const Vec& w);

/// Points rho(k) x + mu(rho(k) x ^ s) for random k and random s in V.
/// Base points use the seed stream shared with the other samplers, so
/// matching base tags give matching k.
std::vector<OrbitSample> sample_semidirect_orbit(const SemidirectModel& m, const Vec& x, std::uint64_t seed, int n_base,
                                                 int n_fiber);
std::vector<OrbitSample> sample_semidirect_orbit(const CartanData& cd, const Vec& h, std::uint64_t seed, int n_base,
                                                 int n_fiber);

struct CotangentPoint {
  Vec base;      // w, ambient
  Vec covector;  // B-dual representative in T_w, ambient
};

/// (w, v) with mu(v ^ w) equal to the k part of the sample, v of minimum norm.
CotangentPoint phi_cotangent(const SemidirectModel& m, const OrbitSample& p);
/// Rank of the linear map A(w)(V) -> T*_w given by phi over w.
int phi_fiber_rank(const SemidirectModel& m, const Vec& w);

/// mu(cov ^ y) + y after moving (y, cov) by the group element given by
/// k_params (identity when empty).
SemidirectElement cotangent_moment(const SemidirectModel& m, const Vec& y, const Vec& covector,
                                   const Vec& k_params = Vec());

/// | m(k.y, k.cov) - Ad*(k) m(y, cov) |.
double moment_equivariance_residual(const SemidirectModel& m, const Vec& y, const Vec& covector, const Vec& k_params);

/// Distance from an ambient point to the affine fiber w + A(w)(V).
double distance_to_fiber(const SemidirectModel& m, const Vec& w, const Vec& point);

}  // namespace lieorbit
