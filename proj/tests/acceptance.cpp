// Acceptance runner: one PASS/FAIL line per criterion.
//
// Exit status is 0 when the set of failing criteria equals the set passed via
// --expect-fail (empty by default), so an unexpected pass is reported too.

#include "lieorbit/deformation.hpp"
#include "lieorbit/semidirect.hpp"
#include "lieorbit/symplectic.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <set>
#include <string>
#include <vector>

using namespace lieorbit;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::shared_ptr<const CartanData> cartan(const char* name) {
  return std::make_shared<const CartanData>(cartan_structure(build_algebra(name)));
}

DeformationContext at(const std::shared_ptr<const CartanData>& cd, double r) {
  return make_deformation_context(cd, DeformationParameter::finite(r));
}

const double kGrid[] = {0.1, 0.5, 1.0, 2.0, 10.0, 100.0};
constexpr std::uint64_t kSeed = 2024;

Outcome cylinder() {
  const auto cd = cartan("sl2r");
  const Vec h = chamber_element(*cd, "1");
  double worst = 0.0;
  const auto samples = sample_semidirect_orbit(*cd, h, kSeed, 50, 20);
  for (const auto& p : samples) worst = std::max(worst, std::abs(p.point(0) * p.point(0) + p.point(1) * p.point(1) - 1));
  return {samples.size() == 1000 && worst < 1e-9, fmt("max |x^2+y^2-1| = %.3g over 1000 samples (< 1e-9)", worst)};
}

Outcome hyperboloid() {
  const auto cd = cartan("sl2r");
  const Vec h = chamber_element(*cd, "1");
  double worst = 0.0;
  const auto samples = sample_deformed_orbit(at(cd, 1.0), h, kSeed, 50, 20);
  for (const auto& p : samples) {
    const Vec& v = p.point;
    worst = std::max(worst, std::abs(v(0) * v(0) + v(1) * v(1) - v(2) * v(2) - 1));
  }
  return {samples.size() == 1000 && worst < 1e-8, fmt("max |x^2+y^2-z^2-1| = %.3g over 1000 samples (< 1e-8)", worst)};
}

Outcome deformed_invariance() {
  const auto cd = cartan("sl2r");
  const Vec h = chamber_element(*cd, "1");
  const double hh = killing(cd->alg(), h, h);
  double inv = 0.0, quad = 0.0;
  for (double r : {0.1, 0.5, 2.0, 10.0, 100.0}) {
    const auto ctx = at(cd, r);
    for (const auto& p : sample_deformed_orbit(ctx, h, kSeed, 40, 10)) {
      const Vec& v = p.point;
      inv = std::max(inv, std::abs(killing_r(ctx, v, v) - hh) / (1 + v.squaredNorm()));
      quad = std::max(quad, std::abs(v(0) * v(0) + v(1) * v(1) - v(2) * v(2) / (r * r) - 1));
    }
  }
  return {inv < 1e-6 && quad < 1e-6,
          fmt("killing_r residual %.3g", inv) + fmt(", |x^2+y^2-z^2/r^2-1| = %.3g (both < 1e-6)", quad)};
}

Outcome convergence() {
  const auto cd = cartan("sl2r");
  const Vec h = chamber_element(*cd, "1");
  const int n = 50;
  // largest fiber coefficient c, where the fiber element is Ad(k)(c E_12)
  double cmax = 0.0;
  for (const auto& p : sample_deformed_orbit(at(cd, 1.0), h, kSeed, n, 1))
    cmax = std::max(cmax, std::sqrt(2.0) * (cd->theta * p.fiber_source).norm());
  double prev = std::numeric_limits<double>::infinity(), worst = 0.0;
  bool decreasing = true;
  for (double r : {10.0, 100.0, 1000.0}) {
    const double d = limit_deviation(at(cd, r), h, kSeed, n);
    decreasing = decreasing && d < prev;
    prev = d;
    const double model = std::sqrt(2.0) * cmax / (r + 1);
    worst = std::max(worst, std::abs(d - model) / model);
  }
  return {decreasing && worst < 0.1,
          std::string(decreasing ? "strictly decreasing" : "NOT decreasing") +
              fmt(", max relative gap to sqrt(2) c_max/(r+1) = %.3g (< 0.1)", worst)};
}

Outcome jacobi() {
  double base = 0.0, deformed = 0.0, semi = 0.0;
  for (const char* name : {"sl2r", "sl3r", "sl2c"}) {
    const auto cd = cartan(name);
    const auto& alg = cd->alg();
    NormalSource rng(kSeed);
    for (int t = 0; t < 100; ++t) {
      const Vec x = rng.vector(alg.dim), y = rng.vector(alg.dim), z = rng.vector(alg.dim);
      const double scale = x.norm() * y.norm() * z.norm();
      base = std::max(base, jacobi_residual([&](const Vec& a, const Vec& b) { return bracket(alg, a, b); }, x, y, z) / scale);
      for (double r : kGrid) {
        const auto ctx = at(cd, r);
        deformed = std::max(deformed, jacobi_residual([&](const Vec& a, const Vec& b) { return bracket_r(ctx, a, b); }, x, y, z) /
                                          (scale * std::max(1.0, r * r)));
      }
    }
    std::vector<SemidirectModel> models{SemidirectModel::from_cartan(cd)};
    if (std::string(name) == "sl2r") models.push_back(SemidirectModel::canonical_so(3));
    for (const auto& m : models) {
      auto el = [&] { return SemidirectElement{m.k_embed * rng.vector(m.k_dim), m.v_embed * rng.vector(m.v_dim)}; };
      for (int t = 0; t < 100; ++t) {
        const auto a = el(), b = el(), c = el();
        auto br = [&](const SemidirectElement& p, const SemidirectElement& q) { return semidirect_bracket(m, p, q); };
        const auto j1 = br(a, br(b, c)), j2 = br(b, br(c, a)), j3 = br(c, br(a, b));
        const double scale = (a.k_part.norm() + a.s_part.norm()) * (b.k_part.norm() + b.s_part.norm()) *
                             (c.k_part.norm() + c.s_part.norm());
        semi = std::max(semi, ((j1.k_part + j2.k_part + j3.k_part).norm() + (j1.s_part + j2.s_part + j3.s_part).norm()) / scale);
      }
    }
  }
  return {base < 1e-10 && deformed < 1e-10 && semi < 1e-10,
          fmt("relative Jacobi residuals: [,] %.3g", base) + fmt(", [,]_r %.3g", deformed) + fmt(", semidirect %.3g (< 1e-10)", semi)};
}

Outcome psi_eigenvectors() {
  double worst = 0.0;
  for (const char* name : {"sl2r", "sl3r", "sl2c"}) {
    const auto cd = cartan(name);
    for (double r : kGrid) {
      const auto ctx = at(cd, r);
      const Mat adh = ad_r(ctx, cd->chamber_H);
      for (const auto& root : cd->roots) {
        const Mat img = ctx.psi_r * root.space_basis;
        worst = std::max(worst, (adh * img - root_value(*cd, root, cd->chamber_H) * img).colwise().norm().maxCoeff());
      }
    }
  }
  return {worst < 1e-9, fmt("max |ad_r(H) psi_r X - alpha(H) psi_r X| = %.3g (< 1e-9)", worst)};
}

Outcome nondegeneracy() {
  std::string detail;
  bool pass = true;
  for (const char* name : {"sl2c", "sl3c"}) {
    const auto cd = cartan(name);
    const auto ctx = make_hermitian_context(cd);
    const auto rep = check_symplectic_on_orbit(ctx, sample_semidirect_orbit(*cd, cd->chamber_H, kSeed, 100, 1), OrbitKind::semidirect);
    const bool ok = rep.min_rank == rep.expected_dim && rep.min_singular_ratio > 1e-8 && rep.fiber_isotropy < 1e-10;
    pass = pass && ok;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s%s rank %d/%d, sv ratio %.3g, fiber |Omega| %.3g", detail.empty() ? "" : "; ", name,
                  rep.min_rank, rep.expected_dim, rep.min_singular_ratio, rep.fiber_isotropy);
    detail += buf;
  }
  return {pass, detail};
}

Outcome sections() {
  const auto cd = cartan("sl2c");
  const auto ctx = make_hermitian_context(cd);
  const auto field = gradient_field(ctx, cd->chamber_H, flag_orbit_sample(*cd, cd->chamber_H, kSeed, 30));
  double worst = 0.0;
  for (double t : {0.0, 0.5, 1.0, 2.0}) worst = std::max(worst, section_isotropy(ctx, lagrangian_section(ctx, field, t)));
  return {worst < 1e-6, fmt("max |Omega| on section tangents = %.3g (< 1e-6)", worst)};
}

Outcome symplectomorphism() {
  const auto cd = cartan("sl2c");
  const auto ctx = make_hermitian_context(cd);
  const auto samples = sample_deformed_orbit(at(cd, 1.0), cd->chamber_H, kSeed, 50, 1);
  std::string detail = "pullback residual";
  bool pass = true;
  for (auto r : {DeformationParameter::finite(2.0), DeformationParameter::finite(10.0), DeformationParameter::infinity()}) {
    const double res = pullback_check(ctx, r, samples, 1e-5);
    pass = pass && res < 1e-5;
    detail += " r=" + r.str() + fmt(": %.3g", res);
  }
  return {pass, detail + " (< 1e-5)"};
}

Outcome moment_isotropy() {
  const auto cd3 = cartan("sl3c");
  const auto ctx3 = make_hermitian_context(cd3);
  const auto& alg = ctx3.alg();
  NormalSource rng(kSeed);
  double normal = 0.0;
  for (int t = 0; t < 50; ++t) {
    CMat d = CMat::Zero(3, 3);
    d(0, 0) = {rng.next(), rng.next()};
    d(1, 1) = {rng.next(), rng.next()};
    d(2, 2) = -d(0, 0) - d(1, 1);
    const Mat g = matrix_exp(ad(alg, cd3->k_basis * rng.vector(cd3->k_basis.cols())));
    normal = std::max(normal, u_moment(ctx3, g * to_coeffs(alg, d)).norm());
  }
  double nilpotent = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      CMat e = CMat::Zero(3, 3);
      e(i, j) = 1.0;
      nilpotent = std::min(nilpotent, u_moment(ctx3, to_coeffs(alg, e)).norm());
    }
  bool iso = true;
  std::string dims;
  for (const char* name : {"sl2c", "sl3c"}) {
    const auto cd = cartan(name);
    const auto rep = unique_isotropic_orbit_check(make_hermitian_context(cd), cd->chamber_H, kSeed, 20);
    iso = iso && rep.pass && rep.trials == 20;
    dims += std::string(dims.empty() ? "" : " ") + name + " (" + std::to_string(rep.flag_dim) + "," + std::to_string(rep.orbit_dim) + ")";
  }
  const bool dims_ok = dims == "sl2c (2,4) sl3c (6,12)";
  return {normal < 1e-9 && nilpotent > 1e-2 && iso && dims_ok,
          fmt("normal |mu| %.3g (< 1e-9)", normal) + fmt(", E_ij |mu| >= %.3g (> 1e-2), ", nilpotent) + dims +
              (iso ? ", isotropy drop verified" : ", isotropy check FAILED")};
}

Outcome skew_toolkit() {
  NormalSource rng(kSeed);
  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 9, half = (t / 9) % (n / 2 + 1);
    Mat l(2 * half, n);
    for (Eigen::Index i = 0; i < l.size(); ++i) l.data()[i] = rng.next();
    Mat j = Mat::Zero(2 * half, 2 * half);
    j.topRightCorner(half, half).setIdentity();
    j.bottomLeftCorner(half, half) = -Mat::Identity(half, half);
    const SkewFormData f(l.transpose() * j * l);
    if (2 * max_isotropic(f, kSeed + t).cols() != n + radical(f).cols()) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " of 200 forms violate 2 dim W = dim V + dim radical"};
}

Outcome cotangent() {
  const auto cd = cartan("sl2r");
  std::vector<std::pair<SemidirectModel, Vec>> cases;
  cases.emplace_back(SemidirectModel::from_cartan(cd), cd->chamber_H);
  const auto so3 = SemidirectModel::canonical_so(3);
  cases.emplace_back(so3, so3.v_embed.col(0));
  int rank_bad = 0, total = 0;
  double inverse = 0.0;
  for (const auto& [m, x] : cases) {
    for (const auto& p : sample_semidirect_orbit(m, x, kSeed, 20, 5)) {
      ++total;
      const auto c = phi_cotangent(m, p);
      if (phi_fiber_rank(m, c.base) != coadjoint_fiber(m, c.base).fiber_basis.cols()) ++rank_bad;
      const auto back = cotangent_moment(m, c.base, c.covector);
      inverse = std::max(inverse, (back.k_part + back.s_part - p.point).norm());
    }
  }
  return {rank_bad == 0 && inverse < 1e-9,
          std::to_string(total - rank_bad) + "/" + std::to_string(total) + fmt(" samples full fiber rank, |m(phi(p)) - p| = %.3g (< 1e-9)", inverse)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> expected;
  app.add_option("--expect-fail", expected, "criteria known to fail")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"sl(2,R) semidirect orbit is the cylinder", cylinder},
      {"sl(2,R) adjoint orbit is the one-sheet hyperboloid", hyperboloid},
      {"deformed orbits keep killing_r and the z^2/r^2 quadric", deformed_invariance},
      {"deformed orbits converge to r = inf at rate 1/(r+1)", convergence},
      {"Jacobi identity for [,], [,]_r and the semidirect bracket", jacobi},
      {"psi_r maps root vectors to ad_r(H) eigenvectors", psi_eigenvectors},
      {"Omega is non-degenerate on U_ad H with isotropic fibers", nondegeneracy},
      {"gradient-flow sections are Lagrangian", sections},
      {"psi~_r is a symplectomorphism", symplectomorphism},
      {"u moment map and the unique isotropic orbit", moment_isotropy},
      {"maximal isotropic subspaces of skew forms", skew_toolkit},
      {"phi identifies orbits with cotangent bundles", cotangent},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::printf("%s %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());

  const std::set<int> want(expected.begin(), expected.end());
  if (failed != want) {
    for (int id : failed)
      if (!want.count(id)) std::printf("unexpected failure: %d\n", id);
    for (int id : want)
      if (!failed.count(id)) std::printf("expected failure did not occur: %d\n", id);
    return 1;
  }
  return 0;
}
