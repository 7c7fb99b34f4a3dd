#include "lieorbit/algebra.hpp"

#include "lieorbit/errors.hpp"

#include <cctype>
#include <charconv>

namespace lieorbit {

namespace {

constexpr int kMaxRank = 6;

CMat unit(int n, int i, int j) {
  CMat m = CMat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

std::vector<CMat> sl_real_basis(int n) {
  std::vector<CMat> b;
  for (int i = 0; i + 1 < n; ++i) b.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      b.push_back(unit(n, i, j) + unit(n, j, i));
      b.push_back(unit(n, i, j) - unit(n, j, i));
    }
  }
  return b;
}

std::vector<CMat> so_basis(int n) {
  std::vector<CMat> b;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.push_back(unit(n, i, j) - unit(n, j, i));
  return b;
}

Vec stack(const CMat& m) {
  const Eigen::Index s = m.size();
  Vec v(2 * s);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      v(c * m.rows() + r) = m(r, c).real();
      v(s + c * m.rows() + r) = m(r, c).imag();
    }
  }
  return v;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::sl_real: return "sl_real";
    case Family::sl_complex: return "sl_complex";
    case Family::so: return "so";
  }
  return "unknown";
}

AlgebraDescriptor parse_descriptor(std::string_view text) {
  auto fail = [&] { return ConfigurationError("unsupported algebra descriptor '" + std::string(text) + "'"); };
  Family family;
  std::string_view digits;
  if (text.starts_with("sl")) {
    if (text.size() < 4) throw fail();
    const char field = text.back();
    if (field == 'r') family = Family::sl_real;
    else if (field == 'c') family = Family::sl_complex;
    else throw fail();
    digits = text.substr(2, text.size() - 3);
  } else if (text.starts_with("so")) {
    family = Family::so;
    digits = text.substr(2);
  } else {
    throw fail();
  }
  int n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) throw fail();
  return {family, n};
}

std::string descriptor_string(Family family, int n) {
  switch (family) {
    case Family::sl_real: return "sl" + std::to_string(n) + "r";
    case Family::sl_complex: return "sl" + std::to_string(n) + "c";
    case Family::so: return "so" + std::to_string(n);
  }
  return "?";
}

LieAlgebraData build_algebra(std::string_view descriptor) {
  const auto d = parse_descriptor(descriptor);
  return build_algebra(d.family, d.n);
}

LieAlgebraData build_algebra(Family family, int n) {
  if (n < 2 || n > kMaxRank) {
    throw ConfigurationError("rank n = " + std::to_string(n) + " outside supported range [2, " +
                             std::to_string(kMaxRank) + "]");
  }
  // so(2) is abelian, hence not semisimple
  if (family == Family::so && n < 3) throw ConfigurationError("so(n) requires n >= 3");

  LieAlgebraData alg;
  alg.family = family;
  alg.n = n;
  switch (family) {
    case Family::sl_real: alg.basis = sl_real_basis(n); break;
    case Family::so: alg.basis = so_basis(n); break;
    case Family::sl_complex: {
      alg.basis = sl_real_basis(n);
      const std::size_t m = alg.basis.size();
      for (std::size_t i = 0; i < m; ++i) alg.basis.push_back(std::complex<double>(0, 1) * alg.basis[i]);
      break;
    }
  }
  alg.dim = static_cast<int>(alg.basis.size());

  alg.embedding = Mat(2 * n * n, alg.dim);
  for (int j = 0; j < alg.dim; ++j) alg.embedding.col(j) = stack(alg.basis[j]);
  alg.embedding_pinv = alg.embedding.completeOrthogonalDecomposition().pseudoInverse();

  alg.ad_basis.assign(alg.dim, Mat::Zero(alg.dim, alg.dim));
  for (int i = 0; i < alg.dim; ++i) {
    for (int j = 0; j < alg.dim; ++j) {
      const CMat c = alg.basis[i] * alg.basis[j] - alg.basis[j] * alg.basis[i];
      alg.ad_basis[i].col(j) = to_coeffs(alg, c);
    }
  }
  alg.killing = Mat(alg.dim, alg.dim);
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j) alg.killing(i, j) = (alg.ad_basis[i] * alg.ad_basis[j]).trace();

  if (alg.is_complex()) {
    alg.complex_structure = Mat(alg.dim, alg.dim);
    for (int j = 0; j < alg.dim; ++j)
      alg.complex_structure.col(j) = to_coeffs(alg, std::complex<double>(0, 1) * alg.basis[j]);
  }
  return alg;
}

CMat to_matrix(const LieAlgebraData& alg, const Vec& coeffs) {
  if (coeffs.size() != alg.dim) throw DimensionError("to_matrix: coefficient length mismatch");
  CMat m = CMat::Zero(alg.n, alg.n);
  for (int i = 0; i < alg.dim; ++i) m += coeffs(i) * alg.basis[i];
  return m;
}

Vec to_coeffs(const LieAlgebraData& alg, const CMat& m, const Tolerance& tol) {
  if (m.rows() != alg.n || m.cols() != alg.n) throw DimensionError("to_coeffs: matrix shape mismatch");
  const Vec s = stack(m);
  Vec c = alg.embedding_pinv * s;
  const double residual = (alg.embedding * c - s).norm();
  if (residual > tol.scale(s.norm())) {
    throw DomainError("to_coeffs: matrix is not an element of " + descriptor_string(alg.family, alg.n));
  }
  return c;
}

Mat ad(const LieAlgebraData& alg, const Vec& x) {
  if (x.size() != alg.dim) throw DimensionError("ad: coefficient length mismatch");
  Mat a = Mat::Zero(alg.dim, alg.dim);
  for (int i = 0; i < alg.dim; ++i)
    if (x(i) != 0.0) a += x(i) * alg.ad_basis[i];
  return a;
}

Vec bracket(const LieAlgebraData& alg, const Vec& x, const Vec& y) {
  if (y.size() != alg.dim) throw DimensionError("bracket: coefficient length mismatch");
  return ad(alg, x) * y;
}

double killing(const LieAlgebraData& alg, const Vec& x, const Vec& y) {
  if (x.size() != alg.dim || y.size() != alg.dim) throw DimensionError("killing: coefficient length mismatch");
  return x.dot(alg.killing * y);
}

}  // namespace lieorbit
