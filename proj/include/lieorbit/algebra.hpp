#pragma once

#include "lieorbit/numerics.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lieorbit {

enum class Family { sl_real, sl_complex, so };

std::string family_name(Family f);

/// A concrete matrix Lie algebra viewed as a real vector space.
///
/// Elements are coefficient vectors on `basis`. Complex algebras are stored
/// with real dimension 2 * dim_C: the first half of the basis is a complex
/// basis made of real matrices, the second half is i times the first half,
/// and `complex_structure` is the matrix of multiplication by i.
///
/// Basis order for sl(n, R): H_1..H_{n-1} (H_i = E_ii - E_{i+1,i+1}), then
/// S_ij = E_ij + E_ji and A_ij = E_ij - E_ji interleaved per pair i < j.
/// For n = 2 this is exactly (H, S, A). For so(n): A_ij, i < j.
struct LieAlgebraData {
  Family family = Family::sl_real;
  int n = 0;
  int dim = 0;
  std::vector<CMat> basis;
  /// ad_basis[i] is the matrix of ad(e_i); column j holds the coefficients of
  /// [e_i, e_j], so ad_basis[i](k, j) is the structure constant c_ij^k.
  std::vector<Mat> ad_basis;
  /// Killing form of the underlying real algebra, tr(ad e_i ad e_j).
  Mat killing;
  /// Multiplication by i (complex families only; empty otherwise).
  Mat complex_structure;

  [[nodiscard]] bool is_complex() const { return family == Family::sl_complex; }
  [[nodiscard]] double structure_constant(int i, int j, int k) const { return ad_basis[i](k, j); }

  // Real stacking [Re vec(M); Im vec(M)] of the basis and its pseudo-inverse,
  // for converting matrices back to coefficients.
  Mat embedding;
  Mat embedding_pinv;
};

/// Parses descriptors like "sl2r", "sl3c", "so3".
struct AlgebraDescriptor {
  Family family;
  int n;
};
AlgebraDescriptor parse_descriptor(std::string_view text);
std::string descriptor_string(Family family, int n);

LieAlgebraData build_algebra(Family family, int n);
LieAlgebraData build_algebra(std::string_view descriptor);

CMat to_matrix(const LieAlgebraData& alg, const Vec& coeffs);
/// Coefficients of a matrix in the algebra; throws DomainError when the
/// matrix is not in the algebra (residual above tolerance).
Vec to_coeffs(const LieAlgebraData& alg, const CMat& m, const Tolerance& tol = {});

Vec bracket(const LieAlgebraData& alg, const Vec& x, const Vec& y);
Mat ad(const LieAlgebraData& alg, const Vec& x);
double killing(const LieAlgebraData& alg, const Vec& x, const Vec& y);

/// max |[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]| for the given bracket.
template <typename Bracket>
double jacobi_residual(Bracket&& br, const Vec& x, const Vec& y, const Vec& z) {
  const Vec r = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y));
  return r.cwiseAbs().maxCoeff();
}

}  // namespace lieorbit
