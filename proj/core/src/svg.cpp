#include "bayesel/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "bayesel/csv.hpp"
#include "bayesel/errors.hpp"

namespace bayesel {

namespace {

// Five-stop ramp from dark blue to yellow, interpolated per channel.
const double kStops[5][3] = {{68, 1, 84},
                             {59, 82, 139},
                             {33, 145, 140},
                             {94, 201, 98},
                             {253, 231, 37}};

std::string ramp_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double pos = t * 4.0;
  const int lo = std::min(3, static_cast<int>(pos));
  const double f = pos - lo;
  char buf[8];
  std::string out = "#";
  for (int c = 0; c < 3; ++c) {
    const int v = static_cast<int>(std::lround(kStops[lo][c] * (1.0 - f) +
                                               kStops[lo + 1][c] * f));
    std::snprintf(buf, sizeof buf, "%02x", std::clamp(v, 0, 255));
    out += buf;
  }
  return out;
}

std::string num(double v) { return format_double(v); }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write svg: " + path);
  return out;
}

void text(std::ofstream& out, double x, double y, const std::string& s,
          const std::string& anchor = "middle", int size = 12) {
  out << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\""
      << size << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor
      << "\">" << s << "</text>\n";
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

void write_heatmap_svg(const std::string& path, const Matrix& z, double x_lo,
                       double x_hi, double y_lo, double y_hi,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label) {
  if (z.rows() < 1 || z.cols() < 1) throw DimensionError("heatmap: empty grid");
  const int nx = static_cast<int>(z.rows());
  const int ny = static_cast<int>(z.cols());

  double z_min = std::numeric_limits<double>::infinity();
  double z_max = -z_min;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      z_min = std::min(z_min, z(i, j));
      z_max = std::max(z_max, z(i, j));
    }
  const double span = z_max > z_min ? z_max - z_min : 1.0;

  const double ml = 70, mr = 30, mt = 40, mb = 55;
  const double pw = 520, ph = 420;
  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << ml + pw + mr
      << "\" height=\"" << mt + ph + mb << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  text(out, ml + pw / 2, mt - 14, title, "middle", 15);

  const double cw = pw / nx, ch = ph / ny;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const double t = (z(i, j) - z_min) / span;
      // Cells are widened a hair so antialiasing does not leave seams.
      out << "<rect x=\"" << num(ml + i * cw) << "\" y=\""
          << num(mt + ph - (j + 1) * ch) << "\" width=\"" << num(cw + 0.5)
          << "\" height=\"" << num(ch + 0.5) << "\" fill=\"" << ramp_color(t)
          << "\"/>\n";
    }
  }

  out << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\""
      << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  text(out, ml, mt + ph + 18, short_num(x_lo), "start");
  text(out, ml + pw, mt + ph + 18, short_num(x_hi), "end");
  text(out, ml - 6, mt + ph, short_num(y_lo), "end");
  text(out, ml - 6, mt + 12, short_num(y_hi), "end");
  text(out, ml + pw / 2, mt + ph + 40, x_label);
  out << "<text x=\"18\" y=\"" << num(mt + ph / 2)
      << "\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 18 " << num(mt + ph / 2) << ")\">" << y_label
      << "</text>\n";
  out << "</svg>\n";
}

void write_trace_svg(const std::string& path, const std::vector<double>& series,
                     const std::string& title) {
  write_overlay_svg(path, {series}, {""}, title);
}

void write_overlay_svg(const std::string& path,
                       const std::vector<std::vector<double>>& series,
                       const std::vector<std::string>& labels,
                       const std::string& title) {
  if (series.empty() || series.front().empty())
    throw DimensionError("trace svg: empty series");
  const std::size_t n = series.front().size();
  for (const auto& s : series)
    if (s.size() != n) throw DimensionError("trace svg: ragged series");

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : series)
    for (double v : s) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }

  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b"};
  const double ml = 70, mr = 30, mt = 40, mb = 45;
  const double pw = 640, ph = 300;
  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << ml + pw + mr
      << "\" height=\"" << mt + ph + mb << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  text(out, ml + pw / 2, mt - 14, title, "middle", 15);
  out << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\""
      << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    out << "<polyline fill=\"none\" stroke=\"" << palette[k % 6]
        << "\" stroke-width=\"1\" points=\"";
    // Long chains are thinned to one point per horizontal pixel.
    const std::size_t step = std::max<std::size_t>(1, n / 1280);
    for (std::size_t i = 0; i < n; i += step) {
      const double x = ml + pw * (n > 1 ? static_cast<double>(i) / (n - 1) : 0.5);
      const double y = mt + ph * (1.0 - (series[k][i] - lo) / (hi - lo));
      out << num(x) << ',' << num(y) << ' ';
    }
    out << "\"/>\n";
    if (k < labels.size() && !labels[k].empty())
      text(out, ml + pw - 8, mt + 16 + 14 * static_cast<double>(k), labels[k],
           "end");
  }

  text(out, ml - 6, mt + ph, short_num(lo), "end");
  text(out, ml - 6, mt + 12, short_num(hi), "end");
  text(out, ml, mt + ph + 18, "1", "start");
  text(out, ml + pw, mt + ph + 18, std::to_string(n), "end");
  out << "</svg>\n";
}

}  // namespace bayesel
