#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "numrange_lab/ensembles.hpp"
#include "numrange_lab/geometry.hpp"
#include "numrange_lab/io.hpp"
#include "numrange_lab/support.hpp"
#include "numrange_lab/theory.hpp"

namespace numrange_lab {

struct FigureSpec {
  std::string id;
  EnsembleKind kind = EnsembleKind::ginibre;
  Index n = 500;
  double tau = 0;
  double alpha = 0;
  std::vector<std::vector<WordLetter>> words;  // word panels only
  bool overlay_ansatz = false;
};

namespace detail {

inline std::vector<FigureSpec> build_figure_table() {
  const double tau_mid = 1.0 / std::sqrt(2.0);
  std::vector<FigureSpec> table;
  auto panel = [&](std::string id, EnsembleKind kind, Index n, double tau,
                   double alpha) {
    FigureSpec f;
    f.id = std::move(id);
    f.kind = kind;
    f.n = n;
    f.tau = tau;
    f.alpha = alpha;
    table.push_back(std::move(f));
  };
  panel("1a", EnsembleKind::elliptic, 500, 0.0, 0.0);
  panel("1b", EnsembleKind::elliptic, 500, 0.3, 0.0);
  panel("1c", EnsembleKind::elliptic, 500, 0.6, 0.0);
  panel("1d", EnsembleKind::elliptic, 500, 0.9, 0.0);
  panel("1e", EnsembleKind::chiral_elliptic, 250, 0.0, 1.0);
  panel("1f", EnsembleKind::chiral_elliptic, 250, 0.5, 1.0);
  panel("1g", EnsembleKind::chiral_elliptic, 250, tau_mid, 1.0);
  panel("1h", EnsembleKind::chiral_elliptic, 250, 0.85, 1.0);
  panel("2a", EnsembleKind::wishart, 500, 0.0, 0.0);
  panel("2b", EnsembleKind::wishart, 500, 0.3, 0.0);
  panel("2c", EnsembleKind::wishart, 500, 0.6, 0.0);
  panel("2d", EnsembleKind::wishart, 500, 0.9, 0.0);
  panel("2e", EnsembleKind::wishart, 500, 0.0, 1.0);
  panel("2f", EnsembleKind::wishart, 500, 0.5, 1.0);
  panel("2g", EnsembleKind::wishart, 500, tau_mid, 1.0);
  panel("2h", EnsembleKind::wishart, 500, 0.85, 1.0);
  panel("3", EnsembleKind::wishart, 500, 0.8, 2.0);
  auto word_panel = [&](std::string id, std::vector<std::vector<std::string>> words) {
    FigureSpec f;
    f.id = std::move(id);
    f.kind = EnsembleKind::ginibre_word;
    f.n = 500;
    for (const auto& w : words) f.words.push_back(parse_word(w));
    table.push_back(std::move(f));
  };
  word_panel("4a", {{"Y1", "Y2"}, {"Y1", "Y1"}});
  word_panel("4b", {{"Y1", "Y1", "Y1"}});
  word_panel("4c", {{"Y1", "Y1", "Y2"}});
  word_panel("4d", {{"Y1", "Y2", "Y3"}});
  {
    FigureSpec f;
    f.id = "5";
    f.kind = EnsembleKind::wishart;
    f.n = 3000;
    f.tau = 0.8;
    f.alpha = 2.0;
    f.overlay_ansatz = true;
    table.push_back(std::move(f));
  }
  return table;
}

}  // namespace detail

inline const std::vector<FigureSpec>& figure_table() {
  static const std::vector<FigureSpec> table = detail::build_figure_table();
  return table;
}

inline std::vector<std::string> figure_ids() {
  std::vector<std::string> ids;
  for (const auto& f : figure_table()) ids.push_back(f.id);
  return ids;
}

inline const FigureSpec& figure_spec(const std::string& id) {
  for (const auto& f : figure_table())
    if (f.id == id) return f;
  throw parameter_error("unknown figure id: " + id);
}

namespace detail {

inline std::vector<Vec2<double>> to_points(const std::vector<std::complex<double>>& zs) {
  std::vector<Vec2<double>> pts;
  pts.reserve(zs.size());
  for (const auto& z : zs) pts.emplace_back(z.real(), z.imag());
  return pts;
}

inline std::vector<Vec2<double>> to_points(const CVec<double>& zs) {
  std::vector<Vec2<double>> pts;
  pts.reserve(std::size_t(zs.size()));
  for (Index k = 0; k < zs.size(); ++k) pts.emplace_back(zs[k].real(), zs[k].imag());
  return pts;
}

inline std::vector<Vec2<double>> ellipse_outline(const EllipseAxes<double>& axes,
                                                 std::size_t count = 512) {
  std::vector<Vec2<double>> pts;
  pts.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double t = 2.0 * pi_v<double> * double(k) / double(count);
    pts.emplace_back(axes.center.real() + axes.a * std::cos(t),
                     axes.center.imag() + axes.b * std::sin(t));
  }
  return pts;
}

struct FigureSeries {
  std::vector<Vec2<double>> eigenvalues;
  std::vector<Vec2<double>> empirical_boundary;
};

}  // namespace detail

// Renders one figure panel to an SVG string: eigenvalue scatter, droplet
// boundary, closed-form numerical-range boundary, and the measured boundary
// from a support sweep. Word panels skip layers that have no closed form.
inline std::string render_figure(const FigureSpec& fig, Index n_override = 0,
                                 std::uint64_t seed = 1,
                                 std::size_t theta_count = 720) {
  const Index n = n_override > 0 ? n_override : fig.n;
  auto thetas = uniform_theta_grid<double>(theta_count);

  std::vector<EnsembleSpec<double>> specs;
  if (fig.kind == EnsembleKind::ginibre_word) {
    for (const auto& word : fig.words) {
      EnsembleSpec<double> s;
      s.kind = fig.kind;
      s.N = n;
      s.word = word;
      s.seed = seed;
      specs.push_back(std::move(s));
    }
  } else {
    EnsembleSpec<double> s;
    s.kind = fig.kind;
    s.N = n;
    s.tau = fig.tau;
    s.nu = Index(std::llround(fig.alpha * double(n)));
    s.seed = seed;
    specs.push_back(std::move(s));
  }

  std::vector<detail::FigureSeries> series;
  for (const auto& spec : specs) {
    CMat<double> a = sample(spec);
    detail::FigureSeries s;
    s.eigenvalues = detail::to_points(eigenvalues<double>(a));
    auto curve = support_sweep<double>(a, thetas);
    s.empirical_boundary = detail::to_points(curve.points);
    series.push_back(std::move(s));
  }

  // Closed-form boundary of the limiting numerical range.
  std::vector<Vec2<double>> theory_boundary;
  switch (fig.kind) {
    case EnsembleKind::elliptic:
      theory_boundary = detail::ellipse_outline(elliptic_axes(fig.tau));
      break;
    case EnsembleKind::chiral_elliptic:
      theory_boundary = detail::ellipse_outline(chiral_axes(fig.tau, fig.alpha));
      break;
    case EnsembleKind::wishart: {
      std::vector<std::complex<double>> zs;
      for (double t : uniform_theta_grid<double>(720))
        zs.push_back(wishart_boundary_point(fig.tau, fig.alpha, t));
      theory_boundary = detail::to_points(zs);
      break;
    }
    case EnsembleKind::ginibre_word: {
      bool all_two_letter = !fig.words.empty();
      for (const auto& w : fig.words) all_two_letter = all_two_letter && w.size() == 2;
      if (all_two_letter) {
        EllipseAxes<double> circle{power_ginibre_radius(), power_ginibre_radius()};
        theory_boundary = detail::ellipse_outline(circle);
      }
      break;
    }
    case EnsembleKind::ginibre:
      theory_boundary = detail::ellipse_outline(elliptic_axes(0.0));
      break;
  }

  // Droplet boundary (eigenvalue support), where the ensemble has one.
  std::vector<std::vector<Vec2<double>>> droplet_parts;
  if (fig.kind == EnsembleKind::elliptic || fig.kind == EnsembleKind::chiral_elliptic ||
      fig.kind == EnsembleKind::wishart) {
    DropletKind dk = fig.kind == EnsembleKind::elliptic ? DropletKind::ellipse
                     : fig.kind == EnsembleKind::chiral_elliptic
                         ? DropletKind::chiral_quartic
                         : DropletKind::shifted_ellipse;
    auto droplet = make_droplet(dk, fig.tau, fig.alpha);
    const std::size_t count = 512;
    auto pts = sample_droplet_boundary(droplet, count);
    if (dk == DropletKind::chiral_quartic &&
        !(droplet.evaluate(0.0, 0.0) < 0.0)) {
      // Two lobes, sampled lobe-by-lobe in ray order.
      std::size_t first = (count + 1) / 2;
      droplet_parts.emplace_back(pts.begin(), pts.begin() + first);
      droplet_parts.emplace_back(pts.begin() + first, pts.end());
    } else {
      droplet_parts.push_back(std::move(pts));
    }
  }

  std::vector<Vec2<double>> ansatz_boundary;
  if (fig.overlay_ansatz)
    ansatz_boundary = detail::ellipse_outline(ellipse_ansatz(fig.tau, fig.alpha));

  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  auto grow = [&](const std::vector<Vec2<double>>& pts) {
    for (const auto& p : pts) {
      if (first) {
        xmin = xmax = p.x();
        ymin = ymax = p.y();
        first = false;
      }
      xmin = std::min(xmin, p.x());
      xmax = std::max(xmax, p.x());
      ymin = std::min(ymin, p.y());
      ymax = std::max(ymax, p.y());
    }
  };
  for (const auto& s : series) {
    grow(s.eigenvalues);
    grow(s.empirical_boundary);
  }
  grow(theory_boundary);
  grow(ansatz_boundary);
  for (const auto& part : droplet_parts) grow(part);
  double pad = 0.06 * std::max(xmax - xmin, ymax - ymin) + 1e-9;

  SvgCanvas canvas(xmin - pad, xmax + pad, ymin - pad, ymax + pad);
  canvas.frame();
  std::ostringstream title;
  title << "figure " << fig.id << ": " << ensemble_kind_name(fig.kind) << ", n=" << n;
  if (fig.kind == EnsembleKind::ginibre_word) {
    title << ", words";
  } else {
    title << ", tau=" << fig.tau;
    if (fig.alpha > 0) title << ", alpha=" << fig.alpha;
  }
  canvas.title(title.str());

  const std::vector<std::string> scatter_colors = {"#7a9cc4", "#c4a07a"};
  const std::vector<std::string> empirical_colors = {"#1f3b73", "#8a4a1f"};
  for (std::size_t k = 0; k < series.size(); ++k) {
    canvas.dots(series[k].eigenvalues, scatter_colors[k % scatter_colors.size()], 1.4,
                0.55);
  }
  for (const auto& part : droplet_parts)
    canvas.polyline(part, "#555555", 1.0, false, true);
  if (!theory_boundary.empty())
    canvas.polyline(theory_boundary, "#b0203a", 1.8, false, true);
  if (!ansatz_boundary.empty())
    canvas.polyline(ansatz_boundary, "#1f7a3b", 1.6, true, true);
  for (std::size_t k = 0; k < series.size(); ++k)
    canvas.polyline(series[k].empirical_boundary,
                    empirical_colors[k % empirical_colors.size()], 1.6, false, true);
  return canvas.finish();
}

}  // namespace numrange_lab
