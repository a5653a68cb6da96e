#pragma once

#include <complex>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "numrange_lab/geometry.hpp"
#include "numrange_lab/support.hpp"
#include "numrange_lab/types.hpp"

namespace numrange_lab {

// Shortest decimal that round-trips a double bit-exactly.
inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_eigenvalues_csv(std::ostream& os,
                                  const std::vector<std::complex<double>>& values) {
  os << "re,im\n";
  for (const auto& z : values)
    os << format_full(z.real()) << ',' << format_full(z.imag()) << '\n';
}

inline void write_support_csv(std::ostream& os, const SupportCurve<double>& curve) {
  if (curve.points.size() != curve.thetas.size())
    throw contract_error("write_support_csv: curve has no boundary points");
  os << "theta,lambda,re_z,im_z\n";
  for (std::size_t k = 0; k < curve.thetas.size(); ++k)
    os << format_full(curve.thetas[k]) << ',' << format_full(curve.values[k]) << ','
       << format_full(curve.points[k].real()) << ','
       << format_full(curve.points[k].imag()) << '\n';
}

inline void write_polygon_csv(std::ostream& os,
                              const std::vector<Vec2<double>>& vertices) {
  os << "x,y\n";
  for (const auto& v : vertices)
    os << format_full(v.x()) << ',' << format_full(v.y()) << '\n';
}

inline void write_polygon_csv(std::ostream& os, const ConvexRegion<double>& region) {
  write_polygon_csv(os, region.vertices);
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw contract_error("read_csv: empty input");
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.header.push_back(cell);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream rs(line);
    while (std::getline(rs, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != table.header.size())
      throw contract_error("read_csv: ragged row");
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline nlohmann::json support_curve_json(const SupportCurve<double>& curve) {
  nlohmann::json j;
  j["provenance"] =
      curve.provenance == Provenance::empirical ? "empirical" : "theoretical";
  j["theta"] = curve.thetas;
  j["lambda"] = curve.values;
  if (curve.points.size() == curve.thetas.size()) {
    std::vector<double> re, im;
    re.reserve(curve.points.size());
    im.reserve(curve.points.size());
    for (const auto& z : curve.points) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    j["re_z"] = re;
    j["im_z"] = im;
  }
  return j;
}

inline nlohmann::json polygon_json(const ConvexRegion<double>& region) {
  nlohmann::json j;
  switch (region.shape) {
    case RegionShape::polygon: j["shape"] = "polygon"; break;
    case RegionShape::segment: j["shape"] = "segment"; break;
    case RegionShape::point: j["shape"] = "point"; break;
  }
  std::vector<double> x, y;
  for (const auto& v : region.vertices) {
    x.push_back(v.x());
    y.push_back(v.y());
  }
  j["x"] = x;
  j["y"] = y;
  return j;
}

inline nlohmann::json eigenvalues_json(const std::vector<std::complex<double>>& values) {
  std::vector<double> re, im;
  re.reserve(values.size());
  im.reserve(values.size());
  for (const auto& z : values) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return nlohmann::json{{"re", re}, {"im", im}};
}

inline void save_text(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw parameter_error("cannot open output file: " + path);
  os << content;
  if (!os) throw parameter_error("failed writing output file: " + path);
}

// Minimal SVG plot surface: fixed pixel frame, y axis pointing up.
class SvgCanvas {
 public:
  SvgCanvas(double xmin, double xmax, double ymin, double ymax, int width = 720,
            int height = 720, int margin = 48)
      : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), width_(width),
        height_(height), margin_(margin) {
    if (!(xmax > xmin) || !(ymax > ymin))
      throw parameter_error("SvgCanvas: degenerate data window");
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_
       << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << ' '
       << height_ << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    body_ = os.str();
  }

  void frame() {
    std::ostringstream os;
    os << "<rect x=\"" << margin_ << "\" y=\"" << margin_ << "\" width=\""
       << width_ - 2 * margin_ << "\" height=\"" << height_ - 2 * margin_
       << "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
    // Tick labels at the data window corners keep the plot self-describing.
    os << text_element(margin_, height_ - margin_ + 16, label(xmin_), "start")
       << text_element(width_ - margin_, height_ - margin_ + 16, label(xmax_), "end")
       << text_element(margin_ - 6, height_ - margin_, label(ymin_), "end")
       << text_element(margin_ - 6, margin_ + 4, label(ymax_), "end");
    body_ += os.str();
  }

  void polyline(const std::vector<Vec2<double>>& pts, const std::string& color,
                double stroke_width = 1.6, bool dashed = false, bool closed = false) {
    if (pts.size() < 2) return;
    std::ostringstream os;
    os << (closed ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"" << stroke_width << '"';
    if (dashed) os << " stroke-dasharray=\"6 4\"";
    os << " points=\"";
    for (const auto& p : pts) os << px(p.x()) << ',' << py(p.y()) << ' ';
    os << "\"/>\n";
    body_ += os.str();
  }

  void dots(const std::vector<Vec2<double>>& pts, const std::string& color,
            double radius = 1.6, double opacity = 1.0) {
    std::ostringstream os;
    os << "<g fill=\"" << color << '"';
    if (opacity < 1.0) os << " fill-opacity=\"" << opacity << '"';
    os << ">\n";
    for (const auto& p : pts)
      os << "<circle cx=\"" << px(p.x()) << "\" cy=\"" << py(p.y()) << "\" r=\""
         << radius << "\"/>\n";
    os << "</g>\n";
    body_ += os.str();
  }

  void title(const std::string& t) {
    body_ += text_element(width_ / 2.0, margin_ - 14.0, t, "middle");
  }

  std::string finish() const { return body_ + "</svg>\n"; }

 private:
  double px(double x) const {
    return margin_ + (x - xmin_) / (xmax_ - xmin_) * (width_ - 2.0 * margin_);
  }
  double py(double y) const {
    return height_ - margin_ - (y - ymin_) / (ymax_ - ymin_) * (height_ - 2.0 * margin_);
  }
  static std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
  }
  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '&') out += "&amp;";
      else if (c == '<') out += "&lt;";
      else if (c == '>') out += "&gt;";
      else out += c;
    }
    return out;
  }
  static std::string text_element(double x, double y, const std::string& t,
                                  const std::string& anchor) {
    std::ostringstream os;
    os << "<text x=\"" << x << "\" y=\"" << y
       << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#202020\""
       << " text-anchor=\"" << anchor << "\">" << escape(t) << "</text>\n";
    return os.str();
  }

  double xmin_, xmax_, ymin_, ymax_;
  int width_, height_, margin_;
  std::string body_;
};

}  // namespace numrange_lab
