#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "numrange_lab/numrange_lab.hpp"

namespace nl = numrange_lab;

namespace {

struct CommonOpts {
  std::string ensemble = "ginibre";
  long long n = 500;
  double tau = 0.0;
  double alpha = 0.0;
  long long nu = -1;  // negative means "derive from alpha"
  std::vector<std::string> word;
  std::size_t thetas = 720;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::string out = ".";
  std::vector<std::string> formats = {"csv"};
};

void add_ensemble_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--ensemble", opts.ensemble,
                  "ginibre | elliptic | chiral | wishart | word")
      ->capture_default_str();
  cmd->add_option("--n", opts.n, "matrix size parameter N")->capture_default_str();
  cmd->add_option("--tau", opts.tau, "correlation parameter in [0,1]")
      ->capture_default_str();
  cmd->add_option("--alpha", opts.alpha,
                  "rectangularity ratio; converted to nu = round(alpha*N)")
      ->capture_default_str();
  cmd->add_option("--nu", opts.nu, "rectangularity offset (overrides --alpha)");
  cmd->add_option("--word", opts.word,
                  "word letters for the word ensemble, e.g. --word Y1 Y2 or Y1*");
}

void add_run_flags(CLI::App* cmd, CommonOpts& opts, bool with_seeds = true) {
  cmd->add_option("--thetas", opts.thetas, "number of sweep directions")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t(8), std::size_t(1000000)));
  if (with_seeds)
    cmd->add_option("--seeds", opts.seeds, "seeds, comma separated")
        ->delimiter(',')
        ->capture_default_str();
  cmd->add_option("--out", opts.out, "output directory")->capture_default_str();
  cmd->add_option("--format", opts.formats, "subset of csv,json,svg")
      ->delimiter(',')
      ->capture_default_str();
}

bool wants(const CommonOpts& opts, const std::string& fmt) {
  for (const auto& f : opts.formats) {
    if (f == fmt) return true;
    if (f != "csv" && f != "json" && f != "svg")
      throw nl::parameter_error("unknown format: " + f);
  }
  return false;
}

nl::EnsembleSpec<double> make_spec(const CommonOpts& opts, std::uint64_t seed) {
  nl::EnsembleSpec<double> spec;
  spec.kind = nl::parse_ensemble_kind(opts.ensemble);
  if (opts.n <= 0) throw nl::parameter_error("--n must be positive");
  spec.N = nl::Index(opts.n);
  spec.tau = opts.tau;
  spec.nu = opts.nu >= 0 ? nl::Index(opts.nu)
                         : nl::Index(std::llround(opts.alpha * double(opts.n)));
  if (spec.kind == nl::EnsembleKind::ginibre_word)
    spec.word = nl::parse_word(opts.word.empty()
                                   ? std::vector<std::string>{"Y1", "Y2"}
                                   : opts.word);
  spec.seed = seed;
  return spec;
}

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string run_tag(const CommonOpts& opts) {
  std::ostringstream tag;
  tag << opts.ensemble << "_n" << opts.n;
  if (nl::parse_ensemble_kind(opts.ensemble) == nl::EnsembleKind::ginibre_word) {
    tag << "_w";
    auto letters = opts.word.empty() ? std::vector<std::string>{"Y1", "Y2"} : opts.word;
    for (const auto& l : letters) {
      std::string clean = l;
      for (auto& c : clean)
        if (c == '*') c = 'c';
      tag << clean;
    }
  } else {
    tag << "_tau" << format_param(opts.tau);
    nl::EnsembleSpec<double> spec = make_spec(opts, 1);
    if (spec.nu > 0) tag << "_nu" << spec.nu;
  }
  return tag.str();
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
  std::filesystem::create_directories(opts.out);
  return (std::filesystem::path(opts.out) / name).string();
}

std::vector<nl::Vec2<double>> spectrum_points(const nl::CVec<double>& values) {
  std::vector<nl::Vec2<double>> pts;
  pts.reserve(std::size_t(values.size()));
  for (nl::Index k = 0; k < values.size(); ++k)
    pts.emplace_back(values[k].real(), values[k].imag());
  return pts;
}

std::string scatter_svg(const std::vector<nl::Vec2<double>>& pts,
                        const std::string& title) {
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  bool first = true;
  for (const auto& p : pts) {
    if (first) {
      lo_x = hi_x = p.x();
      lo_y = hi_y = p.y();
      first = false;
    }
    lo_x = std::min(lo_x, p.x());
    hi_x = std::max(hi_x, p.x());
    lo_y = std::min(lo_y, p.y());
    hi_y = std::max(hi_y, p.y());
  }
  double pad = 0.06 * std::max(hi_x - lo_x, hi_y - lo_y) + 1e-9;
  nl::SvgCanvas canvas(lo_x - pad, hi_x + pad, lo_y - pad, hi_y + pad);
  canvas.frame();
  canvas.title(title);
  canvas.dots(pts, "#7a9cc4", 1.6, 0.6);
  return canvas.finish();
}

std::vector<std::complex<double>> to_std(const nl::CVec<double>& values) {
  std::vector<std::complex<double>> out(values.data(), values.data() + values.size());
  return out;
}

int cmd_sample(const CommonOpts& opts) {
  for (std::uint64_t seed : opts.seeds) {
    auto spec = make_spec(opts, seed);
    nl::CMat<double> a = nl::sample(spec);
    nl::CVec<double> values = nl::eigenvalues(a);
    std::string base = "eigenvalues_" + run_tag(opts) + "_seed" + std::to_string(seed);
    if (wants(opts, "csv")) {
      std::ostringstream os;
      nl::write_eigenvalues_csv(os, to_std(values));
      nl::save_text(out_path(opts, base + ".csv"), os.str());
    }
    if (wants(opts, "json")) {
      nlohmann::json j = nl::eigenvalues_json(to_std(values));
      j["seed"] = seed;
      nl::save_text(out_path(opts, base + ".json"), j.dump(2) + "\n");
    }
    if (wants(opts, "svg"))
      nl::save_text(out_path(opts, base + ".svg"),
                    scatter_svg(spectrum_points(values), base));
    std::cout << base << ": " << values.size() << " eigenvalues\n";
  }
  return 0;
}

const char* shape_name(nl::RegionShape s) {
  switch (s) {
    case nl::RegionShape::polygon: return "polygon";
    case nl::RegionShape::segment: return "segment";
    case nl::RegionShape::point: return "point";
  }
  return "unknown";
}

int cmd_range(const CommonOpts& opts) {
  auto thetas = nl::uniform_theta_grid<double>(opts.thetas);
  for (std::uint64_t seed : opts.seeds) {
    auto spec = make_spec(opts, seed);
    nl::CMat<double> a = nl::sample(spec);
    auto curve = nl::support_sweep<double>(a, thetas);
    auto region = nl::halfplane_intersection(curve.thetas, curve.values);
    std::string tag = run_tag(opts) + "_seed" + std::to_string(seed);
    if (wants(opts, "csv")) {
      std::ostringstream sos, pos;
      nl::write_support_csv(sos, curve);
      nl::save_text(out_path(opts, "support_" + tag + ".csv"), sos.str());
      nl::write_polygon_csv(pos, region);
      nl::save_text(out_path(opts, "polygon_" + tag + ".csv"), pos.str());
    }
    if (wants(opts, "json")) {
      nlohmann::json j;
      j["seed"] = seed;
      j["support"] = nl::support_curve_json(curve);
      j["polygon"] = nl::polygon_json(region);
      j["numerical_radius"] = nl::numerical_radius(curve);
      nl::save_text(out_path(opts, "range_" + tag + ".json"), j.dump(2) + "\n");
    }
    if (wants(opts, "svg")) {
      std::vector<nl::Vec2<double>> boundary;
      for (const auto& z : curve.points) boundary.emplace_back(z.real(), z.imag());
      double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
      bool first = true;
      for (const auto& p : boundary) {
        if (first) {
          lo_x = hi_x = p.x();
          lo_y = hi_y = p.y();
          first = false;
        }
        lo_x = std::min(lo_x, p.x());
        hi_x = std::max(hi_x, p.x());
        lo_y = std::min(lo_y, p.y());
        hi_y = std::max(hi_y, p.y());
      }
      double pad = 0.06 * std::max({hi_x - lo_x, hi_y - lo_y, 1e-6}) + 1e-9;
      nl::SvgCanvas canvas(lo_x - pad, hi_x + pad, lo_y - pad, hi_y + pad);
      canvas.frame();
      canvas.title("range_" + tag);
      canvas.polyline(boundary, "#1f3b73", 1.6, false, true);
      nl::save_text(out_path(opts, "range_" + tag + ".svg"), canvas.finish());
    }
    std::cout << "range_" << tag << ": radius " << nl::numerical_radius(curve)
              << ", region " << shape_name(region.shape) << "\n";
  }
  return 0;
}

// Closed-form support function for ensembles that have one.
std::function<double(double)> theory_support_fn(nl::EnsembleKind kind, double tau,
                                                double alpha) {
  switch (kind) {
    case nl::EnsembleKind::ginibre: {
      auto axes = nl::elliptic_axes(0.0);
      return [axes](double t) { return nl::ellipse_support(axes, t); };
    }
    case nl::EnsembleKind::elliptic: {
      auto axes = nl::elliptic_axes(tau);
      return [axes](double t) { return nl::ellipse_support(axes, t); };
    }
    case nl::EnsembleKind::chiral_elliptic: {
      auto axes = nl::chiral_axes(tau, alpha);
      return [axes](double t) { return nl::ellipse_support(axes, t); };
    }
    case nl::EnsembleKind::wishart:
      return [tau, alpha](double t) { return nl::wishart_support(tau, alpha, t); };
    case nl::EnsembleKind::ginibre_word:
      throw nl::parameter_error("no closed-form support for word ensembles");
  }
  throw nl::parameter_error("unknown ensemble kind");
}

std::function<std::complex<double>(double)> theory_point_fn(nl::EnsembleKind kind,
                                                            double tau, double alpha) {
  switch (kind) {
    case nl::EnsembleKind::ginibre: {
      auto axes = nl::elliptic_axes(0.0);
      return [axes](double t) { return nl::ellipse_boundary_point(axes, t); };
    }
    case nl::EnsembleKind::elliptic: {
      auto axes = nl::elliptic_axes(tau);
      return [axes](double t) { return nl::ellipse_boundary_point(axes, t); };
    }
    case nl::EnsembleKind::chiral_elliptic: {
      auto axes = nl::chiral_axes(tau, alpha);
      return [axes](double t) { return nl::ellipse_boundary_point(axes, t); };
    }
    case nl::EnsembleKind::wishart:
      return [tau, alpha](double t) {
        return nl::wishart_boundary_point(tau, alpha, t);
      };
    case nl::EnsembleKind::ginibre_word:
      throw nl::parameter_error("no closed-form boundary for word ensembles");
  }
  throw nl::parameter_error("unknown ensemble kind");
}

int cmd_theory(const CommonOpts& opts) {
  nl::EnsembleKind kind = nl::parse_ensemble_kind(opts.ensemble);
  // alpha = 0 collapses the chiral limit shape onto the elliptic one; route
  // through the same code path so the outputs agree to the last bit.
  nl::EnsembleKind effective =
      (kind == nl::EnsembleKind::chiral_elliptic && opts.alpha == 0.0)
          ? nl::EnsembleKind::elliptic
          : kind;
  auto thetas = nl::uniform_theta_grid<double>(opts.thetas);
  auto support = theory_support_fn(effective, opts.tau, opts.alpha);
  auto point = theory_point_fn(effective, opts.tau, opts.alpha);

  nl::SupportCurve<double> curve;
  curve.provenance = nl::Provenance::theoretical;
  curve.thetas = thetas;
  for (double t : thetas) {
    curve.values.push_back(support(t));
    curve.points.push_back(point(t));
  }
  auto region = nl::halfplane_intersection(curve.thetas, curve.values);

  nl::DropletKind dk = nl::DropletKind::ellipse;
  double droplet_tau = opts.tau, droplet_alpha = opts.alpha;
  switch (effective) {
    case nl::EnsembleKind::ginibre: droplet_tau = 0.0; break;
    case nl::EnsembleKind::elliptic: break;
    case nl::EnsembleKind::chiral_elliptic: dk = nl::DropletKind::chiral_quartic; break;
    case nl::EnsembleKind::wishart: dk = nl::DropletKind::shifted_ellipse; break;
    case nl::EnsembleKind::ginibre_word: break;  // unreachable, support throws first
  }
  auto droplet_points =
      nl::sample_droplet_boundary(nl::make_droplet(dk, droplet_tau, droplet_alpha), 512);

  std::ostringstream tag;
  tag << opts.ensemble << "_tau" << format_param(opts.tau) << "_alpha"
      << format_param(opts.alpha);
  if (wants(opts, "csv")) {
    std::ostringstream sos, pos, dos;
    nl::write_support_csv(sos, curve);
    nl::save_text(out_path(opts, "support_theory_" + tag.str() + ".csv"), sos.str());
    nl::write_polygon_csv(pos, region);
    nl::save_text(out_path(opts, "polygon_theory_" + tag.str() + ".csv"), pos.str());
    nl::write_polygon_csv(dos, droplet_points);
    nl::save_text(out_path(opts, "droplet_theory_" + tag.str() + ".csv"), dos.str());
  }
  if (wants(opts, "json")) {
    nlohmann::json j;
    j["support"] = nl::support_curve_json(curve);
    j["polygon"] = nl::polygon_json(region);
    nlohmann::json droplet = nlohmann::json::array();
    for (const auto& p : droplet_points) droplet.push_back({p.x(), p.y()});
    j["droplet"] = droplet;
    nl::save_text(out_path(opts, "theory_" + tag.str() + ".json"), j.dump(2) + "\n");
  }
  if (wants(opts, "svg")) {
    std::vector<nl::Vec2<double>> boundary;
    for (const auto& z : curve.points) boundary.emplace_back(z.real(), z.imag());
    double span = 0;
    for (const auto& p : boundary) span = std::max(span, p.norm());
    nl::SvgCanvas canvas(-span * 1.1 - 1e-9, span * 1.1 + 1e-9, -span * 1.1 - 1e-9,
                         span * 1.1 + 1e-9);
    canvas.frame();
    canvas.title("theory_" + tag.str());
    canvas.dots(droplet_points, "#555555", 1.0);
    canvas.polyline(boundary, "#b0203a", 1.8, false, true);
    nl::save_text(out_path(opts, "theory_" + tag.str() + ".svg"), canvas.finish());
  }
  std::cout << "theory_" << tag.str() << ": support at theta=0 is " << curve.values[0]
            << "\n";
  return 0;
}

int cmd_converge(const CommonOpts& opts, const std::vector<long long>& n_list) {
  if (n_list.size() < 2)
    throw nl::parameter_error("converge needs at least two --n-list values");
  nl::EnsembleKind kind = nl::parse_ensemble_kind(opts.ensemble);
  auto thetas = nl::uniform_theta_grid<double>(opts.thetas);
  auto support = theory_support_fn(kind, opts.tau, opts.alpha);
  auto theory = nl::theoretical_curve<double>(thetas, support);
  auto theory_region = nl::halfplane_intersection(theory.thetas, theory.values);

  struct Row {
    long long n;
    double gap;
    double dist;
  };
  std::vector<Row> rows;
  for (long long n : n_list) {
    CommonOpts per = opts;
    per.n = n;
    std::vector<double> gaps, dists;
    for (std::uint64_t seed : opts.seeds) {
      auto spec = make_spec(per, seed);
      auto curve = nl::support_sweep<double>(nl::sample(spec), thetas);
      gaps.push_back(nl::uniform_gap(curve, theory));
      dists.push_back(nl::hausdorff(
          nl::halfplane_intersection(curve.thetas, curve.values), theory_region));
    }
    rows.push_back({n, nl::detail::median(gaps), nl::detail::median(dists)});
    std::cout << "n=" << n << ": median gap " << rows.back().gap << ", median d_H "
              << rows.back().dist << "\n";
  }

  std::ostringstream tag;
  tag << opts.ensemble << "_tau" << format_param(opts.tau) << "_alpha"
      << format_param(opts.alpha);
  if (wants(opts, "csv")) {
    std::ostringstream os;
    os << "n,median_uniform_gap,median_hausdorff\n";
    for (const auto& r : rows)
      os << r.n << ',' << nl::format_full(r.gap) << ',' << nl::format_full(r.dist)
         << '\n';
    nl::save_text(out_path(opts, "converge_" + tag.str() + ".csv"), os.str());
  }
  if (wants(opts, "json")) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& r : rows)
      items.push_back(
          {{"n", r.n}, {"median_uniform_gap", r.gap}, {"median_hausdorff", r.dist}});
    nl::save_text(out_path(opts, "converge_" + tag.str() + ".json"),
                  nlohmann::json{{"rows", items}}.dump(2) + "\n");
  }
  return 0;
}

int cmd_validate(const CommonOpts& opts, const std::vector<std::string>& only,
                 double tamper) {
  nl::ValidationOptions vopts;
  vopts.only = only;
  vopts.seeds = opts.seeds;
  vopts.theta_count = opts.thetas;
  vopts.quartic_tamper = tamper;
  auto report = nl::run_validation(vopts, [](const nl::CheckResult& r) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": measured "
              << r.measured << " vs threshold " << r.threshold << " (" << r.seconds
              << " s)\n";
    std::cout.flush();
  });
  nl::save_text(out_path(opts, "validation_report.json"),
                report.to_json().dump(2) + "\n");
  std::cout << (report.overall_pass() ? "overall: PASS" : "overall: FAIL") << "\n";
  return report.overall_pass() ? 0 : 2;
}

int cmd_figure(const CommonOpts& opts, const std::string& id, long long n_override,
               std::uint64_t seed) {
  const nl::FigureSpec& fig = nl::figure_spec(id);
  std::string svg = nl::render_figure(fig, nl::Index(std::max<long long>(n_override, 0)),
                                      seed, opts.thetas);
  std::string path = out_path(opts, "figure_" + id + ".svg");
  nl::save_text(path, svg);
  std::cout << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "numrange-lab: numerical ranges of non-Hermitian random matrix ensembles"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* sample_cmd = app.add_subcommand("sample", "sample a matrix, write eigenvalues");
  add_ensemble_flags(sample_cmd, opts);
  add_run_flags(sample_cmd, opts);

  auto* range_cmd =
      app.add_subcommand("range", "support-function sweep of sampled matrices");
  add_ensemble_flags(range_cmd, opts);
  add_run_flags(range_cmd, opts);

  auto* theory_cmd =
      app.add_subcommand("theory", "closed-form limit curves and droplets");
  add_ensemble_flags(theory_cmd, opts);
  add_run_flags(theory_cmd, opts, false);

  std::vector<long long> n_list;
  auto* converge_cmd =
      app.add_subcommand("converge", "gap to the limit curve across sizes");
  add_ensemble_flags(converge_cmd, opts);
  add_run_flags(converge_cmd, opts);
  converge_cmd->add_option("--n-list", n_list, "matrix sizes, comma separated")
      ->delimiter(',')
      ->required();

  std::vector<std::string> only_checks;
  double tamper = 0.0;
  auto* validate_cmd =
      app.add_subcommand("validate", "run the acceptance checks, write a JSON report");
  add_run_flags(validate_cmd, opts);
  validate_cmd->add_option("--only", only_checks, "run only the named checks")
      ->delimiter(',');
  validate_cmd
      ->add_option("--tamper-quartic", tamper,
                   "fault-injection offset added to one quartic coefficient")
      ->group("");  // hidden: test hook

  std::string figure_id;
  long long figure_n = 0;
  std::uint64_t figure_seed = 1;
  auto* figure_cmd = app.add_subcommand("figure", "render a known figure panel");
  figure_cmd->add_option("--id", figure_id, "panel id, e.g. 1a, 2g, 3, 4a, 5")
      ->required();
  figure_cmd->add_option("--n", figure_n, "override the panel's matrix size");
  figure_cmd->add_option("--seed", figure_seed, "sampling seed")->capture_default_str();
  add_run_flags(figure_cmd, opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sample_cmd->parsed()) return cmd_sample(opts);
    if (range_cmd->parsed()) return cmd_range(opts);
    if (theory_cmd->parsed()) return cmd_theory(opts);
    if (converge_cmd->parsed()) return cmd_converge(opts, n_list);
    if (validate_cmd->parsed()) return cmd_validate(opts, only_checks, tamper);
    if (figure_cmd->parsed()) return cmd_figure(opts, figure_id, figure_n, figure_seed);
  } catch (const nl::parameter_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nl::contract_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nl::geometry_error& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return 3;
  } catch (const nl::consistency_error& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
