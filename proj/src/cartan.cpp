#include "lieorbit/cartan.hpp"

#include "lieorbit/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace lieorbit {

namespace {

// Default comparison policy for root bookkeeping.
const Tolerance kRootTol{1e-9, 1e-9};

bool lexicographically_positive(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-9) return v(i) > 0.0;
  }
  return false;
}

int find_root(const std::vector<RootDatum>& roots, const Vec& functional) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if ((roots[i].functional - functional).cwiseAbs().maxCoeff() <= 1e-8) return static_cast<int>(i);
  }
  return -1;
}

Mat simple_root_matrix(const CartanData& cd) {
  Mat s(cd.simple_set.size(), cd.a_basis.cols());
  for (std::size_t j = 0; j < cd.simple_set.size(); ++j) s.row(j) = cd.roots[cd.simple_set[j]].functional.transpose();
  return s;
}

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size()) {
      throw ConfigurationError("cannot parse chamber coordinate '" + item + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

CartanData cartan_structure(const LieAlgebraData& alg) {
  return cartan_structure(std::make_shared<const LieAlgebraData>(alg));
}

CartanData cartan_structure(std::shared_ptr<const LieAlgebraData> algebra) {
  const LieAlgebraData& alg = *algebra;
  CartanData cd;
  cd.algebra = algebra;
  const int d = alg.dim;

  // theta(X) = -X^T for real families, tau(X) = -X^* for complex ones
  cd.theta = Mat(d, d);
  for (int j = 0; j < d; ++j) cd.theta.col(j) = to_coeffs(alg, -alg.basis[j].adjoint());
  if ((cd.theta * cd.theta - Mat::Identity(d, d)).norm() > 1e-10) {
    throw StructureError("cartan_structure: theta is not an involution");
  }
  cd.k_proj = 0.5 * (Mat::Identity(d, d) + cd.theta);
  cd.s_proj = 0.5 * (Mat::Identity(d, d) - cd.theta);

  cd.b_theta = -alg.killing * cd.theta;
  cd.b_theta = 0.5 * (cd.b_theta + cd.b_theta.transpose()).eval();
  Eigen::LLT<Mat> llt(cd.b_theta);
  if (llt.info() != Eigen::Success) throw StructureError("cartan_structure: B_theta is not positive definite");

  cd.k_basis = gram_orthonormal_basis(cd.k_proj, cd.b_theta);
  cd.s_basis = gram_orthonormal_basis(cd.s_proj, cd.b_theta);
  if (cd.k_basis.cols() + cd.s_basis.cols() != d) throw StructureError("cartan_structure: k + s dimension mismatch");

  // a = traceless real diagonal matrices, which all lie in s
  const int rank_a = alg.family == Family::so ? 0 : alg.n - 1;
  cd.a_basis = Mat::Zero(d, rank_a);
  for (int i = 0; i < rank_a; ++i) cd.a_basis(i, i) = 1.0;
  if (rank_a > 0 && (cd.k_proj * cd.a_basis).norm() > 1e-12) throw StructureError("cartan_structure: a not inside s");

  std::vector<Mat> ops;
  for (int i = 0; i < rank_a; ++i) ops.push_back(ad(alg, cd.a_basis.col(i)));
  std::vector<JointEigenspace> spaces;
  if (rank_a > 0) {
    spaces = simultaneous_eigenspaces(ops);
  } else {
    spaces.push_back({Vec(0), Mat::Identity(d, d)});
  }

  // diagonal entries of the H_i, used to express functionals on diagonal matrices
  Mat diag_system = Mat::Zero(rank_a + 1, alg.n);
  for (int i = 0; i < rank_a; ++i) {
    const CMat h = to_matrix(alg, cd.a_basis.col(i));
    for (int k = 0; k < alg.n; ++k) diag_system(i, k) = h(k, k).real();
  }
  diag_system.row(rank_a).setOnes();

  Eigen::Index total = 0;
  for (const auto& sp : spaces) {
    total += sp.basis.cols();
    if (sp.eigenvalues.size() == 0 || sp.eigenvalues.cwiseAbs().maxCoeff() <= 1e-8) continue;  // centralizer of a
    RootDatum root;
    root.functional = sp.eigenvalues;
    Vec rhs(rank_a + 1);
    rhs << sp.eigenvalues, 0.0;
    root.diagonal_form = diag_system.colPivHouseholderQr().solve(rhs);
    root.space_basis = gram_orthonormal_basis(sp.basis, cd.b_theta);
    root.positive = lexicographically_positive(root.diagonal_form);
    cd.roots.push_back(std::move(root));
  }
  if (total != d) throw StructureError("cartan_structure: root decomposition does not span g");

  // positive roots first, each group in decreasing lexicographic order
  std::sort(cd.roots.begin(), cd.roots.end(), [](const RootDatum& a, const RootDatum& b) {
    if (a.positive != b.positive) return a.positive;
    for (Eigen::Index i = 0; i < a.diagonal_form.size(); ++i) {
      if (std::abs(a.diagonal_form(i) - b.diagonal_form(i)) > 1e-9) return a.diagonal_form(i) > b.diagonal_form(i);
    }
    return false;
  });

  for (std::size_t i = 0; i < cd.roots.size(); ++i) {
    RootDatum& r = cd.roots[i];
    r.theta_image_index = find_root(cd.roots, -r.functional);
    if (r.theta_image_index < 0) throw StructureError("cartan_structure: root system not symmetric");
    if (r.positive) cd.positive_set.push_back(static_cast<int>(i));
  }
  for (int i : cd.positive_set) {
    bool decomposable = false;
    for (int j : cd.positive_set) {
      const int k = find_root(cd.roots, cd.roots[i].functional - cd.roots[j].functional);
      if (k >= 0 && cd.roots[k].positive) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) cd.simple_set.push_back(i);
  }
  if (static_cast<int>(cd.simple_set.size()) != rank_a) throw StructureError("cartan_structure: simple root count mismatch");

  cd.chamber_H = chamber_element(cd, "regular");
  return cd;
}

Vec a_coordinates(const CartanData& cd, const Vec& h) {
  if (h.size() != cd.dim()) throw DimensionError("a_coordinates: coefficient length mismatch");
  if (cd.a_basis.cols() == 0) {
    if (h.norm() > kRootTol.scale(0.0)) throw DomainError("element is not in a (a = 0 for this algebra)");
    return Vec(0);
  }
  const Vec c = cd.a_basis.colPivHouseholderQr().solve(h);
  if ((cd.a_basis * c - h).norm() > kRootTol.scale(h.norm())) throw DomainError("element is not in the maximal abelian a");
  return c;
}

double root_value(const CartanData& cd, const RootDatum& root, const Vec& h) {
  return root.functional.dot(a_coordinates(cd, h));
}

bool in_closed_chamber(const CartanData& cd, const Vec& h, const Tolerance& tol) {
  Vec c;
  try {
    c = a_coordinates(cd, h);
  } catch (const DomainError&) {
    return false;
  }
  for (int s : cd.simple_set) {
    if (cd.roots[s].functional.dot(c) < -tol.scale(h.norm())) return false;
  }
  return true;
}

Vec chamber_element(const CartanData& cd, std::string_view spec) {
  const Eigen::Index rank_a = cd.a_basis.cols();
  if (spec == "regular" || spec.starts_with("wall:")) {
    Vec target = Vec::Constant(rank_a, 2.0);
    if (spec.starts_with("wall:")) {
      const std::string idx(spec.substr(5));
      char* end = nullptr;
      const long k = std::strtol(idx.c_str(), &end, 10);
      if (idx.empty() || end != idx.c_str() + idx.size() || k < 1 || k > rank_a) {
        throw ConfigurationError("wall index must be in 1.." + std::to_string(rank_a) + ", got '" + idx + "'");
      }
      target(k - 1) = 0.0;
    }
    if (rank_a == 0) return Vec::Zero(cd.dim());
    const Vec coords = simple_root_matrix(cd).colPivHouseholderQr().solve(target);
    return cd.a_basis * coords;
  }
  const auto numbers = parse_numbers(spec);
  if (static_cast<Eigen::Index>(numbers.size()) != rank_a) {
    throw ConfigurationError("H needs " + std::to_string(rank_a) + " coordinates on a, got " +
                             std::to_string(numbers.size()));
  }
  Vec coords(rank_a);
  for (Eigen::Index i = 0; i < rank_a; ++i) coords(i) = numbers[i];
  const Vec h = cd.a_basis * coords;
  if (!in_closed_chamber(cd, h)) throw DomainError("H lies outside the closed positive Weyl chamber");
  return h;
}

HSubspaces h_subspaces(const CartanData& cd, const Vec& h) {
  if (!in_closed_chamber(cd, h)) throw DomainError("h_subspaces: H outside the closed positive Weyl chamber");
  const Vec c = a_coordinates(cd, h);
  const int d = cd.dim();
  HSubspaces out;
  out.n_plus = Mat(d, 0);
  out.n_minus = Mat(d, 0);
  const double eps = kRootTol.scale(h.norm());
  for (const auto& r : cd.roots) {
    const double v = r.functional.dot(c);
    Mat* target = v > eps ? &out.n_plus : (v < -eps ? &out.n_minus : nullptr);
    if (target == nullptr) continue;
    Mat grown(d, target->cols() + r.space_basis.cols());
    grown << *target, r.space_basis;
    *target = std::move(grown);
  }
  out.z_H = nullspace(ad(cd.alg(), h));
  if (out.n_plus.cols() + out.n_minus.cols() + out.z_H.cols() != d) {
    throw StructureError("h_subspaces: n+ + n- + z_H does not span g");
  }
  return out;
}

Mat ad_group_element(const CartanData& cd, const Vec& k_params) {
  const Eigen::Index kd = cd.k_basis.cols();
  const int d = cd.dim();
  if (kd == 0) return Mat::Identity(d, d);
  if (k_params.size() % kd != 0) throw DimensionError("ad_group_element: parameter length not a multiple of dim k");
  Mat g = Mat::Identity(d, d);
  for (Eigen::Index f = 0; f < k_params.size() / kd; ++f) {
    const Vec a = cd.k_basis * k_params.segment(f * kd, kd);
    g = g * matrix_exp(ad(cd.alg(), a));
  }
  return g;
}

Vec random_k_params(const CartanData& cd, NormalSource& rng) {
  return rng.vector(3 * cd.k_basis.cols());
}

std::vector<OrbitSample> flag_orbit_sample(const CartanData& cd, const Vec& h, std::uint64_t seed, int count) {
  if (!in_closed_chamber(cd, h)) throw DomainError("flag_orbit_sample: H outside the closed positive Weyl chamber");
  NormalSource rng(seed);
  std::vector<OrbitSample> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    OrbitSample s;
    s.kind = OrbitKind::flag;
    s.base_tag = i;
    s.k_params = random_k_params(cd, rng);
    s.base = ad_group_element(cd, s.k_params) * h;
    s.fiber_coeffs = Vec(0);
    s.fiber_source = Vec::Zero(cd.dim());
    s.point = s.base;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace lieorbit
