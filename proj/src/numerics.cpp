#include "lieorbit/numerics.hpp"

#include "lieorbit/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>

namespace lieorbit {

bool Tolerance::close(double a, double b) const {
  return std::abs(a - b) <= abs_eps + rel_eps * std::max(std::abs(a), std::abs(b));
}

namespace {

template <typename M>
M exp_impl(const M& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("matrix_exp: expected a square matrix, got " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()));
  }
  if (!a.allFinite()) throw DomainError("matrix_exp: non-finite entries");
  if (a.isZero(0.0)) return M::Identity(a.rows(), a.cols());
  return a.exp();
}

}  // namespace

Mat matrix_exp(const Mat& a) { return exp_impl(a); }
CMat matrix_exp(const CMat& a) { return exp_impl(a); }

Vec singular_values(const Mat& a) {
  if (a.size() == 0) return Vec();
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues();
}

Mat nullspace(const Mat& a, const Tolerance& tol) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Mat(0, 0);
  if (a.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const Vec& sv = svd.singularValues();
  const double thresh = tol.scale(sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > thresh) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

Mat column_space(const Mat& a, const Tolerance& tol) {
  if (a.cols() == 0 || a.rows() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const Vec& sv = svd.singularValues();
  const double thresh = tol.scale(sv(0));
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > thresh) ++rank;
  return svd.matrixU().leftCols(rank);
}

int numeric_rank(const Mat& a, const Tolerance& tol) {
  return static_cast<int>(column_space(a, tol).cols());
}

double containment_residual(const Mat& vectors, const Mat& basis) {
  if (vectors.cols() == 0) return 0.0;
  Mat rest = vectors;
  if (basis.cols() > 0) rest -= basis * (basis.transpose() * vectors);
  return rest.colwise().norm().maxCoeff();
}

double subspace_distance(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) return 1.0;
  return std::max(containment_residual(a, b), containment_residual(b, a));
}

Mat gram_orthonormal_basis(const Mat& v, const Mat& gram, const Tolerance& tol) {
  const Mat q = column_space(v, tol);
  if (q.cols() == 0) return q;
  const Mat g = q.transpose() * gram * q;
  Eigen::LLT<Mat> llt(0.5 * (g + g.transpose()));
  if (llt.info() != Eigen::Success) {
    throw StructureError("gram_orthonormal_basis: inner product not positive definite on span");
  }
  // q * L^{-T}
  Mat lt = llt.matrixU();
  return lt.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(q);
}

namespace {

// Splits the invariant subspace spanned by the orthonormal columns of q into
// eigenspaces of op, appending the pieces (with their eigenvalue) to out.
void split_subspace(const Mat& op, const Mat& q, const Vec& prefix, const Tolerance& tol,
                    std::vector<JointEigenspace>& out) {
  const Eigen::Index d = q.cols();
  const Mat m = q.transpose() * op * q;
  const double op_norm = op.norm();
  if ((op * q - q * m).norm() > tol.scale(op_norm) * std::sqrt(static_cast<double>(d))) {
    throw StructureError("simultaneous_eigenspaces: subspace not invariant under operator");
  }

  Eigen::EigenSolver<Mat> es(m, false);
  if (es.info() != Eigen::Success) throw StructureError("simultaneous_eigenspaces: eigensolver failed");
  const double thresh = tol.scale(op_norm);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    const std::complex<double> ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) > std::max(thresh, 1e-6 * std::max(1.0, op_norm))) {
      throw StructureError("simultaneous_eigenspaces: operator has non-real eigenvalues");
    }
    values.push_back(ev.real());
  }
  std::sort(values.begin(), values.end());

  // cluster consecutive values
  std::vector<double> centers;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values[i] - values[i - 1] > thresh) {
      double sum = 0.0;
      for (std::size_t j = start; j < i; ++j) sum += values[j];
      centers.push_back(sum / static_cast<double>(i - start));
      start = i;
    }
  }

  Eigen::Index total = 0;
  for (double c : centers) {
    const Mat shifted = m - c * Mat::Identity(d, d);
    Mat ns = nullspace(shifted, Tolerance{thresh, 0.0});
    if (ns.cols() == 0) continue;
    Vec ev(prefix.size() + 1);
    ev << prefix, c;
    Mat basis = q * ns;
    // re-orthonormalize against rounding
    Eigen::HouseholderQR<Mat> qr(basis);
    basis = qr.householderQ() * Mat::Identity(basis.rows(), basis.cols());
    out.push_back({ev, basis});
    total += ns.cols();
  }
  if (total != d) {
    throw StructureError("simultaneous_eigenspaces: operator is not diagonalizable (eigenspace dims " +
                         std::to_string(total) + " of " + std::to_string(d) + ")");
  }
}

}  // namespace

std::vector<JointEigenspace> simultaneous_eigenspaces(const std::vector<Mat>& ops, const Tolerance& tol) {
  if (ops.empty()) return {};
  const Eigen::Index n = ops.front().rows();
  for (const Mat& op : ops) {
    if (op.rows() != n || op.cols() != n) throw DimensionError("simultaneous_eigenspaces: operator shape");
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      const double comm = (ops[i] * ops[j] - ops[j] * ops[i]).norm();
      if (comm > tol.scale(ops[i].norm() * ops[j].norm())) {
        throw StructureError("simultaneous_eigenspaces: operators " + std::to_string(i) + " and " +
                             std::to_string(j) + " do not commute");
      }
    }
  }

  std::vector<JointEigenspace> spaces{{Vec(0), Mat::Identity(n, n)}};
  for (const Mat& op : ops) {
    std::vector<JointEigenspace> refined;
    for (const auto& s : spaces) split_subspace(op, s.basis, s.eigenvalues, tol, refined);
    spaces = std::move(refined);
  }
  return spaces;
}

Vec NormalSource::vector(Eigen::Index n) {
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = next();
  return v;
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace lieorbit
