#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace lieorbit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Comparison policy shared by every rank, nullspace and clustering decision.
///
/// Two scalars are close when |a - b| <= abs_eps + rel_eps * max(|a|, |b|).
/// For matrices the same rule is applied to singular values against the
/// largest singular value.
struct Tolerance {
  double abs_eps = 1e-9;
  double rel_eps = 1e-7;

  [[nodiscard]] bool close(double a, double b) const;
  /// Threshold below which a quantity of the given magnitude counts as zero.
  [[nodiscard]] double scale(double magnitude) const { return abs_eps + rel_eps * magnitude; }
};

// Matrix exponential (Padé approximant with scaling and squaring).
Mat matrix_exp(const Mat& a);
CMat matrix_exp(const CMat& a);
template <typename Derived>
auto matrix_exp(const Eigen::MatrixBase<Derived>& a) {
  return matrix_exp(typename Derived::PlainObject(a));
}

/// Orthonormal basis (columns) of {v : |Av| <= tol.scale(|A|)}.
/// Returns a matrix with zero columns when A has full column rank.
Mat nullspace(const Mat& a, const Tolerance& tol = {});

/// Orthonormal basis of the column space of A, with the same rank rule.
Mat column_space(const Mat& a, const Tolerance& tol = {});

int numeric_rank(const Mat& a, const Tolerance& tol = {});

/// Singular values in decreasing order.
Vec singular_values(const Mat& a);

/// Largest distance from a column of `vectors` to span(basis); `basis` must be
/// orthonormal. Used for subspace-containment residuals.
double containment_residual(const Mat& vectors, const Mat& basis);

/// max(containment(a in b), containment(b in a)) for orthonormal a, b.
double subspace_distance(const Mat& a, const Mat& b);

/// Basis of span(V) that is orthonormal for the inner product with Gram `gram`.
Mat gram_orthonormal_basis(const Mat& v, const Mat& gram, const Tolerance& tol = {});

struct JointEigenspace {
  Vec eigenvalues;  // one entry per operator
  Mat basis;        // orthonormal columns
};

/// Joint eigenspace decomposition of pairwise commuting, real-diagonalizable
/// operators. Eigenvalues closer than tol.scale(|op|) are merged.
/// Throws StructureError for non-commuting or non-diagonalizable input.
std::vector<JointEigenspace> simultaneous_eigenspaces(const std::vector<Mat>& ops,
                                                      const Tolerance& tol = {});

/// Seeded source of standard normal draws. The same seed reproduces the same
/// stream bit for bit within one build.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double next() { return dist_(engine_); }
  Vec vector(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

/// Seed of an independent stream derived from `seed` (splitmix64 step).
std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace lieorbit
