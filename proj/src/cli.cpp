#include "lieorbit/cli.hpp"

#include "lieorbit/checks.hpp"
#include "lieorbit/deformation.hpp"
#include "lieorbit/errors.hpp"
#include "lieorbit/semidirect.hpp"
#include "lieorbit/symplectic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <ostream>
#include <unistd.h>

namespace lieorbit::cli {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json r_json(const DeformationParameter& r) {
  if (r.is_infinite()) return "inf";
  return r.value();
}

std::string csv_header(const std::string& first, int n) {
  std::string h = first + ",base_tag,fiber_tag";
  for (int i = 1; i <= n; ++i) h += ",c" + std::to_string(i);
  return h + "\n";
}

void append_row(std::string& csv, const std::string& lead, int base_tag, int fiber_tag, const Vec& p) {
  csv += lead + "," + std::to_string(base_tag) + "," + std::to_string(fiber_tag);
  for (Eigen::Index i = 0; i < p.size(); ++i) csv += "," + fmt17(p(i));
  csv += "\n";
}

std::string samples_csv(const std::vector<OrbitSample>& samples, const std::string& r_text, int dim) {
  std::string csv = csv_header("r", dim);
  for (const auto& s : samples) append_row(csv, r_text, s.base_tag, s.fiber_tag, s.point);
  return csv;
}

void prepare_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigurationError("cannot create output directory '" + dir.string() + "'");
  }
  const auto probe = dir / (".lieorbit_probe." + std::to_string(::getpid()));
  {
    std::ofstream f(probe);
    if (!f) throw ConfigurationError("output directory '" + dir.string() + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

struct Setup {
  std::shared_ptr<const CartanData> cd;
  Vec h;
};

Setup validate(const RunConfig& cfg) {
  if (cfg.n_base < 1 || cfg.n_fiber < 1) throw ConfigurationError("n-base and n-fiber must be >= 1");
  if (cfg.r_list.empty()) throw ConfigurationError("r list is empty");
  if (!(cfg.tol.abs_eps >= 0) || !(cfg.tol.rel_eps >= 0)) throw ConfigurationError("tolerances must be >= 0");
  Setup s;
  s.cd = std::make_shared<const CartanData>(cartan_structure(build_algebra(cfg.algebra)));
  s.h = chamber_element(*s.cd, cfg.h_spec);
  return s;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, std::ostream& out) {
  validate(cfg);
  VerifyConfig vc{cfg.algebra, cfg.h_spec, cfg.seed, cfg.tol};
  const VerifyReport report = run_suite(suite, vc);
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"suite", c.suite},
                      {"name", c.name},
                      {"paper_anchor", c.anchor},
                      {"residual", c.residual},
                      {"threshold", c.threshold},
                      {"comparison", c.lower_bound ? ">" : "<"},
                      {"pass", c.pass}});
  }
  const json doc = {{"algebra", cfg.algebra},
                    {"H", cfg.h_spec},
                    {"seed", cfg.seed},
                    {"suite", suite},
                    {"abs_eps", cfg.tol.abs_eps},
                    {"rel_eps", cfg.tol.rel_eps},
                    {"checks", checks},
                    {"failures", report.failures()},
                    {"notes", report.notes},
                    {"pass", report.pass()}};
  const std::string text = doc.dump(2) + "\n";
  if (cfg.output_dir_set) {
    prepare_output_dir(cfg.output_dir);
    write_atomic(cfg.output_dir / ("verify_" + cfg.algebra + ".json"), text);
  }
  out << text;
  return report.pass() ? kPass : kCheckFailure;
}

int cmd_orbit_sample(const RunConfig& cfg, const std::string& kind_text, std::ostream& out) {
  const Setup s = validate(cfg);
  const OrbitKind kind = parse_kind(kind_text);
  prepare_output_dir(cfg.output_dir);
  const int dim = s.cd->dim();

  std::vector<std::pair<std::string, std::vector<OrbitSample>>> jobs;
  switch (kind) {
    case OrbitKind::flag:
      jobs.emplace_back("1", flag_orbit_sample(*s.cd, s.h, cfg.seed, cfg.n_base * cfg.n_fiber));
      break;
    case OrbitKind::adjoint: {
      const auto ctx = make_deformation_context(s.cd, DeformationParameter::finite(1.0));
      jobs.emplace_back("1", sample_deformed_orbit(ctx, s.h, cfg.seed, cfg.n_base, cfg.n_fiber));
      break;
    }
    case OrbitKind::deformed:
      for (const auto& r : cfg.r_list) {
        const auto ctx = make_deformation_context(s.cd, r);
        jobs.emplace_back(r.is_infinite() ? "inf" : short_number(r.value()),
                          sample_deformed_orbit(ctx, s.h, cfg.seed, cfg.n_base, cfg.n_fiber));
      }
      break;
    case OrbitKind::semidirect:
      jobs.emplace_back("inf", sample_semidirect_orbit(*s.cd, s.h, cfg.seed, cfg.n_base, cfg.n_fiber));
      break;
  }
  for (const auto& [r_text, samples] : jobs) {
    const auto path = cfg.output_dir / ("orbit_" + kind_name(kind) + "_r" + r_text + ".csv");
    write_atomic(path, samples_csv(samples, r_text, dim));
    out << path.string() << "\n";
  }
  return kPass;
}

int cmd_deform_sweep(RunConfig cfg, std::ostream& out, std::ostream& err) {
  if (!std::is_sorted(cfg.r_list.begin(), cfg.r_list.end())) throw ConfigurationError("r list must be sorted ascending");
  const auto last = std::unique(cfg.r_list.begin(), cfg.r_list.end());
  if (last != cfg.r_list.end()) {
    err << "warning: duplicate r values removed\n";
    cfg.r_list.erase(last, cfg.r_list.end());
  }
  const Setup s = validate(cfg);
  prepare_output_dir(cfg.output_dir);

  json entries = json::array();
  double prev = 0.0;
  bool monotone = true;
  for (std::size_t i = 0; i < cfg.r_list.size(); ++i) {
    const auto& r = cfg.r_list[i];
    const auto ctx = make_deformation_context(s.cd, r);
    const std::string r_text = r.is_infinite() ? "inf" : short_number(r.value());
    const auto path = cfg.output_dir / ("orbit_deformed_r" + r_text + ".csv");
    write_atomic(path, samples_csv(sample_deformed_orbit(ctx, s.h, cfg.seed, cfg.n_base, cfg.n_fiber), r_text, s.cd->dim()));
    out << path.string() << "\n";
    const double dev = r.is_infinite() ? 0.0 : limit_deviation(ctx, s.h, cfg.seed, cfg.n_base);
    if (i > 0 && dev > prev + cfg.tol.scale(prev)) monotone = false;
    prev = dev;
    entries.push_back({{"r", r_json(r)}, {"limit_deviation", dev}});
  }
  json doc = {{"algebra", cfg.algebra}, {"H", cfg.h_spec}, {"seed", cfg.seed}, {"entries", entries}};
  if (cfg.r_list.size() > 1) doc["non_increasing"] = monotone;
  const auto path = cfg.output_dir / "deform_sweep.json";
  write_atomic(path, doc.dump(2) + "\n");
  out << path.string() << "\n";
  return monotone ? kPass : kCheckFailure;
}

int cmd_lagrangian_section(const RunConfig& cfg, const std::vector<std::string>& t_items, std::ostream& out) {
  const Setup s = validate(cfg);
  if (!s.cd->alg().is_complex()) throw ConfigurationError("lagrangian-section needs a complex algebra (sl<n>c)");
  std::vector<double> ts;
  for (const auto& item : t_items) {
    std::size_t used = 0;
    double t = 0;
    try {
      t = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || !std::isfinite(t)) throw ConfigurationError("cannot parse t value '" + item + "'");
    ts.push_back(t);
  }
  if (ts.empty()) throw ConfigurationError("t list is empty");
  prepare_output_dir(cfg.output_dir);

  const auto ctx = make_hermitian_context(s.cd);
  const auto field = gradient_field(ctx, s.h, flag_orbit_sample(*s.cd, s.h, cfg.seed, cfg.n_base));
  const double threshold = 1e-6 * threshold_scale(cfg.tol);
  json entries = json::array();
  bool pass = true;
  for (double t : ts) {
    const auto sec = lagrangian_section(ctx, field, t);
    std::string csv = csv_header("t", ctx.dim());
    for (std::size_t i = 0; i < sec.section_points.size(); ++i)
      append_row(csv, short_number(t), static_cast<int>(i), 0, sec.section_points[i]);
    const auto path = cfg.output_dir / ("section_t" + short_number(t) + ".csv");
    write_atomic(path, csv);
    out << path.string() << "\n";
    const double iso = section_isotropy(ctx, sec);
    pass = pass && iso < threshold;
    entries.push_back({{"t", t}, {"isotropy_residual", iso}, {"threshold", threshold}, {"pass", iso < threshold}});
  }
  const json doc = {{"algebra", cfg.algebra}, {"H", cfg.h_spec}, {"seed", cfg.seed}, {"entries", entries}, {"pass", pass}};
  const auto path = cfg.output_dir / "lagrangian_section.json";
  write_atomic(path, doc.dump(2) + "\n");
  out << path.string() << "\n";
  return pass ? kPass : kCheckFailure;
}

}  // namespace

std::string short_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const bool plain = v == 0.0 || (std::abs(v) >= 1e-4 && std::abs(v) < 1e15);
  for (int p = 1; p <= 17; ++p) {
    std::snprintf(buf, sizeof buf, "%.*g", p, v);
    if (std::strtod(buf, nullptr) == v && (!plain || std::strchr(buf, 'e') == nullptr)) break;
  }
  return buf;
}

std::vector<DeformationParameter> parse_r_list(const std::vector<std::string>& items) {
  std::vector<DeformationParameter> out;
  for (const auto& item : items) out.push_back(DeformationParameter::parse(item));
  if (out.empty()) throw ConfigurationError("r list is empty");
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigurationError("cannot write '" + tmp.string() + "'");
    f << content;
    if (!f.flush()) throw ConfigurationError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ConfigurationError("cannot rename into '" + path.string() + "'");
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical experiments on adjoint, deformed and semidirect orbits"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  RunConfig cfg;
  std::vector<std::string> r_items{"1"}, t_items{"0", "0.5", "1", "2"};
  std::string suite = "all", kind = "adjoint", out_dir;
  app.add_option("--algebra", cfg.algebra, "sl<n>r, sl<n>c or so<n>")->capture_default_str();
  app.add_option("--H", cfg.h_spec, "chamber coordinates on a, 'regular' or 'wall:k'")->capture_default_str();
  app.add_option("--r", r_items, "comma-separated deformation parameters, 'inf' allowed")->delimiter(',')->capture_default_str();
  app.add_option("--seed", cfg.seed)->capture_default_str();
  app.add_option("--n-base", cfg.n_base)->capture_default_str();
  app.add_option("--n-fiber", cfg.n_fiber)->capture_default_str();
  auto* out_opt = app.add_option("--out", out_dir, "output directory (default lieorbit_out)");
  app.add_option("--abs-eps", cfg.tol.abs_eps)->capture_default_str();
  app.add_option("--rel-eps", cfg.tol.rel_eps)->capture_default_str();
  app.add_option("--suite", suite, "verify: algebra, deformation, semidirect, symplectic or all")->capture_default_str();
  app.add_option("--kind", kind, "orbit-sample: flag, adjoint, deformed or semidirect")->capture_default_str();
  app.add_option("--t", t_items, "lagrangian-section: comma-separated t values")->delimiter(',')->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the property suites and print a JSON report")->fallthrough();
  auto* sample = app.add_subcommand("orbit-sample", "write orbit point clouds as CSV")->fallthrough();
  auto* sweep = app.add_subcommand("deform-sweep", "sample deformed orbits over r and summarize convergence")->fallthrough();
  auto* section = app.add_subcommand("lagrangian-section", "write gradient-flow Lagrangian sections")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  try {
    cfg.r_list = parse_r_list(r_items);
    if (out_opt->count() > 0) {
      cfg.output_dir = out_dir;
      cfg.output_dir_set = true;
    }
    if (verify->parsed()) return cmd_verify(cfg, suite, out);
    if (sample->parsed()) return cmd_orbit_sample(cfg, kind, out);
    if (sweep->parsed()) return cmd_deform_sweep(cfg, out, err);
    if (section->parsed()) return cmd_lagrangian_section(cfg, t_items, out);
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kCheckFailure;
  }
  return kUsageError;
}

}  // namespace lieorbit::cli
