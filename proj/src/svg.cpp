#include "fsp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "fsp/csv.hpp"
#include "fsp/errors.hpp"

namespace fsp {

namespace {

struct Rgb {
  int r, g, b;
};

/// Diverging map: saturated blue at -1, white at 0, saturated red at +1.
Rgb diverging_color(double t) {
  t = std::clamp(t, -1.0, 1.0);
  const Rgb neg{33, 102, 172};
  const Rgb pos{178, 24, 43};
  const Rgb mid{255, 255, 255};
  const Rgb& endc = t < 0 ? neg : pos;
  const double w = std::abs(t);
  auto mixc = [w](int a, int b) { return int(std::lround(a * (1.0 - w) + b * w)); };
  return {mixc(mid.r, endc.r), mixc(mid.g, endc.g), mixc(mid.b, endc.b)};
}

std::string fill(const Rgb& c) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

}  // namespace

void write_gap_heatmap_svg(const std::string& path, const std::string& title,
                           const std::vector<double>& l_values,
                           const std::vector<int>& per_factor_values,
                           const Matrixd& values) {
  const Index rows = Index(per_factor_values.size());
  const Index cols = Index(l_values.size());
  if (rows == 0 || cols == 0) {
    throw EmptyGrid("write_gap_heatmap_svg: empty axis");
  }
  if (values.rows() != rows || values.cols() != cols) {
    throw DimensionMismatch("write_gap_heatmap_svg: value grid is " +
                            std::to_string(values.rows()) + "x" +
                            std::to_string(values.cols()) + ", axes need " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }

  const double vmax = std::max(values.cwiseAbs().maxCoeff(), 1e-12);
  const int cell = 34;
  const int left = 70, top = 50, right = 110, bottom = 55;
  const int w = left + int(cols) * cell + right;
  const int h = top + int(rows) * cell + bottom;

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("write_gap_heatmap_svg: cannot open '" + path + "'");
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" "
         "font-size=\"15\" fill=\"#222\">"
      << title << "</text>\n";

  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const double v = values(i, j);
      const Rgb c = diverging_color(v / vmax);
      out << "<rect x=\"" << left + int(j) * cell << "\" y=\""
          << top + int(i) * cell << "\" width=\"" << cell << "\" height=\""
          << cell << "\" fill=\"" << fill(c)
          << "\" stroke=\"#cccccc\" stroke-width=\"0.5\"><title>per_factor="
          << per_factor_values[std::size_t(i)] << " l="
          << format_double(l_values[std::size_t(j)]) << " gap="
          << format_double(v) << "</title></rect>\n";
    }
  }

  // Axis labels.
  for (Index i = 0; i < rows; ++i) {
    out << "<text x=\"" << left - 8 << "\" y=\""
        << top + int(i) * cell + cell / 2 + 5
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\" "
           "text-anchor=\"end\">"
        << per_factor_values[std::size_t(i)] << "</text>\n";
  }
  for (Index j = 0; j < cols; ++j) {
    out << "<text x=\"" << left + int(j) * cell + cell / 2 << "\" y=\""
        << top + int(rows) * cell + 18
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\" "
           "text-anchor=\"middle\">"
        << format_double(l_values[std::size_t(j)]) << "</text>\n";
  }
  out << "<text x=\"" << left + int(cols) * cell / 2 << "\" y=\"" << h - 14
      << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222\" "
         "text-anchor=\"middle\">mean salient loading</text>\n";
  out << "<text x=\"18\" y=\"" << top + int(rows) * cell / 2
      << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << top + int(rows) * cell / 2 << ")\">salients per factor</text>\n";

  // Legend: vertical gradient from +vmax (top) to -vmax (bottom).
  const int lx = left + int(cols) * cell + 28;
  const int lh = int(rows) * cell;
  const int steps = 48;
  for (int s = 0; s < steps; ++s) {
    const double t = 1.0 - 2.0 * (s + 0.5) / steps;
    out << "<rect x=\"" << lx << "\" y=\"" << top + s * lh / steps
        << "\" width=\"16\" height=\"" << (lh + steps - 1) / steps + 1
        << "\" fill=\"" << fill(diverging_color(t)) << "\"/>\n";
  }
  out << "<rect x=\"" << lx << "\" y=\"" << top << "\" width=\"16\" height=\""
      << lh << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.5\"/>\n";
  const char* font = "font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\"";
  out << "<text x=\"" << lx + 22 << "\" y=\"" << top + 5 << "\" " << font << ">"
      << format_double(vmax) << "</text>\n";
  out << "<text x=\"" << lx + 22 << "\" y=\"" << top + lh / 2 + 4 << "\" "
      << font << ">0</text>\n";
  out << "<text x=\"" << lx + 22 << "\" y=\"" << top + lh + 4 << "\" " << font
      << ">" << format_double(-vmax) << "</text>\n";
  out << "</svg>\n";
  if (!out) {
    throw Error("write_gap_heatmap_svg: write to '" + path + "' failed");
  }
}

}  // namespace fsp
