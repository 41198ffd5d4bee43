#include "fruitgrid/harness/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fruitgrid {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79"};
constexpr int kPaletteSize = 11;

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// tick spacing rounded to 1/2/2.5/5 times a power of ten
double nice_step(double range, int target_ticks) {
  if (range <= 0.0) return 1.0;
  const double raw = range / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  double step;
  if (r <= 1.0) step = 1.0;
  else if (r <= 2.0) step = 2.0;
  else if (r <= 2.5) step = 2.5;
  else if (r <= 5.0) step = 5.0;
  else step = 10.0;
  return step * mag;
}

struct Frame {
  double x0, y0, x1, y1;     // plot rectangle in svg coords (y grows downward)
  double xmin, xmax, ymin, ymax;
  double sx(double x) const { return x0 + (x - xmin) / (xmax - xmin) * (x1 - x0); }
  double sy(double y) const { return y1 - (y - ymin) / (ymax - ymin) * (y1 - y0); }
};

void draw_axes(std::ostringstream& os, const Frame& f, const std::string& x_label,
               const std::string& y_label, bool x_ticks = true) {
  os << "<rect x=\"" << f.x0 << "\" y=\"" << f.y0 << "\" width=\"" << (f.x1 - f.x0)
     << "\" height=\"" << (f.y1 - f.y0) << "\" fill=\"none\" stroke=\"#333\"/>\n";

  if (x_ticks) {
    const double xstep = nice_step(f.xmax - f.xmin, 6);
    for (double t = std::ceil(f.xmin / xstep) * xstep; t <= f.xmax + 1e-9; t += xstep) {
      const double px = f.sx(t);
      os << "<line x1=\"" << px << "\" y1=\"" << f.y1 << "\" x2=\"" << px << "\" y2=\""
         << (f.y1 + 5) << "\" stroke=\"#333\"/>\n";
      os << "<text x=\"" << px << "\" y=\"" << (f.y1 + 20)
         << "\" font-size=\"12\" text-anchor=\"middle\">" << num(t) << "</text>\n";
    }
  }
  const double ystep = nice_step(f.ymax - f.ymin, 6);
  for (double t = std::ceil(f.ymin / ystep) * ystep; t <= f.ymax + 1e-9; t += ystep) {
    const double py = f.sy(t);
    os << "<line x1=\"" << (f.x0 - 5) << "\" y1=\"" << py << "\" x2=\"" << f.x0 << "\" y2=\""
       << py << "\" stroke=\"#333\"/>\n";
    os << "<text x=\"" << (f.x0 - 9) << "\" y=\"" << (py + 4)
       << "\" font-size=\"12\" text-anchor=\"end\">" << num(t) << "</text>\n";
    os << "<line x1=\"" << f.x0 << "\" y1=\"" << py << "\" x2=\"" << f.x1 << "\" y2=\"" << py
       << "\" stroke=\"#eee\"/>\n";
  }

  os << "<text x=\"" << (f.x0 + (f.x1 - f.x0) / 2) << "\" y=\"" << (f.y1 + 42)
     << "\" font-size=\"14\" text-anchor=\"middle\">" << xml_escape(x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << (f.y0 + (f.y1 - f.y0) / 2)
     << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << (f.y0 + (f.y1 - f.y0) / 2) << ")\">" << xml_escape(y_label) << "</text>\n";
}

void write_svg_file(const std::string& path, const std::string& body, int width, int height) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream os(path, std::ios::trunc | std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\" font-family=\"sans-serif\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << body << "</svg>\n";
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_line_chart_svg(const std::vector<CurveSeries>& series, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::string& path) {
  if (series.empty()) throw std::invalid_argument("line chart needs at least one series");
  for (const CurveSeries& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty())
      throw std::invalid_argument("line chart series must be non-empty with matching x/y");
  }

  const int width = 960, height = 560;
  Frame f{70, 46, width - 235.0, height - 62.0, 0, 0, 0, 0};
  f.xmin = series[0].x.front();
  f.xmax = series[0].x.front();
  f.ymin = 0.0;
  f.ymax = series[0].y.front();
  for (const CurveSeries& s : series) {
    for (double x : s.x) { f.xmin = std::min(f.xmin, x); f.xmax = std::max(f.xmax, x); }
    for (double y : s.y) { f.ymin = std::min(f.ymin, y); f.ymax = std::max(f.ymax, y); }
  }
  if (f.xmax == f.xmin) f.xmax = f.xmin + 1.0;
  if (f.ymax == f.ymin) f.ymax = f.ymin + 1.0;

  std::ostringstream os;
  os << "<text x=\"" << width / 2 << "\" y=\"24\" font-size=\"17\" text-anchor=\"middle\">"
     << xml_escape(title) << "</text>\n";
  draw_axes(os, f, x_label, y_label);

  for (size_t i = 0; i < series.size(); ++i) {
    const CurveSeries& s = series[i];
    const char* color = kPalette[i % kPaletteSize];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
    for (size_t k = 0; k < s.x.size(); ++k) {
      if (k) os << ' ';
      os << f.sx(s.x[k]) << ',' << f.sy(s.y[k]);
    }
    os << "\"/>\n";

    const double ly = 60.0 + 22.0 * static_cast<double>(i);
    os << "<line x1=\"" << (width - 220) << "\" y1=\"" << ly << "\" x2=\"" << (width - 196)
       << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
    os << "<text x=\"" << (width - 190) << "\" y=\"" << (ly + 4) << "\" font-size=\"12\">"
       << xml_escape(s.label) << "</text>\n";
  }
  write_svg_file(path, os.str(), width, height);
}

void write_bar_chart_svg(const std::vector<BarItem>& bars, const std::string& title,
                         const std::string& y_label, const std::string& path) {
  if (bars.empty()) throw std::invalid_argument("bar chart needs at least one bar");

  const int width = 960, height = 560;
  Frame f{70, 46, width - 40.0, height - 120.0, 0, 1, 0, 0};
  for (const BarItem& b : bars) f.ymax = std::max(f.ymax, b.value);
  if (f.ymax <= 0.0) f.ymax = 1.0;
  f.ymax *= 1.1;

  std::ostringstream os;
  os << "<text x=\"" << width / 2 << "\" y=\"24\" font-size=\"17\" text-anchor=\"middle\">"
     << xml_escape(title) << "</text>\n";
  draw_axes(os, f, "", y_label, /*x_ticks=*/false);

  const double span = (f.x1 - f.x0) / static_cast<double>(bars.size());
  for (size_t i = 0; i < bars.size(); ++i) {
    const double cx = f.x0 + span * (static_cast<double>(i) + 0.5);
    const double w = span * 0.62;
    const double top = f.sy(bars[i].value);
    os << "<rect x=\"" << (cx - w / 2) << "\" y=\"" << top << "\" width=\"" << w << "\" height=\""
       << (f.y1 - top) << "\" fill=\"" << kPalette[i % kPaletteSize] << "\"/>\n";
    os << "<text x=\"" << cx << "\" y=\"" << (top - 6)
       << "\" font-size=\"11\" text-anchor=\"middle\">" << num(bars[i].value) << "</text>\n";
    os << "<text x=\"" << cx << "\" y=\"" << (f.y1 + 14) << "\" font-size=\"11\" "
       << "text-anchor=\"end\" transform=\"rotate(-35 " << cx << " " << (f.y1 + 14) << ")\">"
       << xml_escape(bars[i].label) << "</text>\n";
  }
  write_svg_file(path, os.str(), width, height);
}

}  // namespace fruitgrid
