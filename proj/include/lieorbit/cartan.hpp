#pragma once

#include "lieorbit/algebra.hpp"
#include "lieorbit/orbit_sample.hpp"

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

namespace lieorbit {

struct RootDatum {
  Vec functional;      // alpha(H_i) for the columns H_i of CartanData::a_basis
  Vec diagonal_form;   // the same functional on traceless diagonal matrices
  Mat space_basis;     // B_theta-orthonormal basis of g_alpha
  int theta_image_index = -1;  // index of -alpha
  bool positive = false;
};

/// Cartan decomposition g = k + s with the restricted-root data of a maximal
/// abelian a in s. In the complex case theta is tau(X) = -X^*, k = u and s = iu.
struct CartanData {
  std::shared_ptr<const LieAlgebraData> algebra;
  Mat theta;
  Mat k_proj;   // (I + theta) / 2
  Mat s_proj;   // (I - theta) / 2
  Mat k_basis;  // B_theta-orthonormal columns
  Mat s_basis;
  Mat b_theta;  // B_theta(X, Y) = -<X, theta Y>
  Mat a_basis;  // columns H_i
  std::vector<RootDatum> roots;
  std::vector<int> positive_set;
  std::vector<int> simple_set;
  Vec chamber_H;  // default element: the "regular" preset

  [[nodiscard]] const LieAlgebraData& alg() const { return *algebra; }
  [[nodiscard]] int dim() const { return algebra->dim; }
};

CartanData cartan_structure(std::shared_ptr<const LieAlgebraData> alg);
CartanData cartan_structure(const LieAlgebraData& alg);

/// Coordinates of H on a_basis; throws DomainError if H is not in a.
Vec a_coordinates(const CartanData& cd, const Vec& h);
double root_value(const CartanData& cd, const RootDatum& root, const Vec& h);
bool in_closed_chamber(const CartanData& cd, const Vec& h, const Tolerance& tol = {});

/// "regular" (every simple root equal to 2 on H), "wall:k" (simple root k,
/// 1-based, vanishes, the others equal 2), or comma separated coordinates on
/// a_basis. Throws ConfigurationError for malformed presets and DomainError
/// for coordinates outside cl(a^+).
Vec chamber_element(const CartanData& cd, std::string_view spec);

struct HSubspaces {
  Mat n_plus;   // sum of root spaces with alpha(H) > 0 (B_theta-orthonormal)
  Mat n_minus;  // alpha(H) < 0
  Mat z_H;      // centralizer of H (orthonormal)
};

HSubspaces h_subspaces(const CartanData& cd, const Vec& h);

/// Matrix of Ad(exp(A_1) ... exp(A_m)) where k_params holds the coordinates
/// of A_1..A_m on k_basis back to back.
Mat ad_group_element(const CartanData& cd, const Vec& k_params);

/// Draws k_params for a product of three exponentials of normal k elements.
Vec random_k_params(const CartanData& cd, NormalSource& rng);

std::vector<OrbitSample> flag_orbit_sample(const CartanData& cd, const Vec& h, std::uint64_t seed, int count);

}  // namespace lieorbit
