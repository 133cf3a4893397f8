#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "misinfo/analysis.hpp"
#include "misinfo/errors.hpp"
#include "misinfo/io_util.hpp"

// Chart output is plain hand-built SVG: vector, diff-friendly and free of
// plotting dependencies.

namespace misinfo {

namespace {

struct Rgb {
  double r, g, b;
};

std::string hex(const Rgb& c) {
  auto channel = [](double v) {
    const int i = std::clamp(static_cast<int>(std::lround(v)), 0, 255);
    char buf[3];
    std::snprintf(buf, sizeof(buf), "%02x", i);
    return std::string(buf);
  };
  return "#" + channel(c.r) + channel(c.g) + channel(c.b);
}

Rgb lerp(const Rgb& a, const Rgb& b, double t) {
  return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t,
          a.b + (b.b - a.b) * t};
}

// Diverging blue-white-red map over [-1, 1].
std::string phi_color(double phi) {
  const Rgb blue{33, 102, 172}, white{247, 247, 247}, red{178, 24, 43};
  const double t = std::clamp(phi, -1.0, 1.0);
  return t < 0.0 ? hex(lerp(white, blue, -t)) : hex(lerp(white, red, t));
}

std::string svg_text(double x, double y, const std::string& s,
                     const std::string& anchor = "middle", int size = 12,
                     const std::string& fill = "#222222") {
  return "<text x=\"" + format_fixed(x, 1) + "\" y=\"" + format_fixed(y, 1) +
         "\" font-family=\"sans-serif\" font-size=\"" + std::to_string(size) +
         "\" text-anchor=\"" + anchor + "\" fill=\"" + fill + "\">" + s +
         "</text>\n";
}

std::string svg_rect(double x, double y, double w, double h,
                     const std::string& fill,
                     const std::string& extra = "") {
  return "<rect x=\"" + format_fixed(x, 1) + "\" y=\"" + format_fixed(y, 1) +
         "\" width=\"" + format_fixed(w, 1) + "\" height=\"" +
         format_fixed(h, 1) + "\" fill=\"" + fill + "\"" + extra + "/>\n";
}

std::string distribution_svg(const DistributionTable& table) {
  const double width = 760, height = 420;
  const double left = 64, right = 24, top = 40, bottom = 48;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  std::size_t max_count = 1;
  for (std::size_t q = 0; q < kNumQuestions; ++q) {
    max_count = std::max({max_count, table.yes[q], table.no[q], table.nan[q]});
  }

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
      format_fixed(width, 0) + "\" height=\"" + format_fixed(height, 0) +
      "\" viewBox=\"0 0 " + format_fixed(width, 0) + " " +
      format_fixed(height, 0) + "\">\n";
  svg += svg_rect(0, 0, width, height, "#ffffff");
  svg += svg_text(width / 2, 22, "Label distribution per question", "middle",
                  15);

  const int ticks = 5;
  for (int t = 0; t <= ticks; ++t) {
    const double frac = static_cast<double>(t) / ticks;
    const double y = top + plot_h * (1.0 - frac);
    const auto value =
        static_cast<std::size_t>(std::lround(frac * static_cast<double>(max_count)));
    svg += "<line x1=\"" + format_fixed(left, 1) + "\" y1=\"" +
           format_fixed(y, 1) + "\" x2=\"" + format_fixed(left + plot_w, 1) +
           "\" y2=\"" + format_fixed(y, 1) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += svg_text(left - 8, y + 4, std::to_string(value), "end", 11);
  }

  const char* series_color[3] = {"#4c72b0", "#dd8452", "#999999"};
  const char* series_name[3] = {"yes", "no", "nan"};
  const double group_w = plot_w / kNumQuestions;
  const double bar_w = group_w / 4.0;
  for (std::size_t q = 0; q < kNumQuestions; ++q) {
    const std::size_t counts[3] = {table.yes[q], table.no[q], table.nan[q]};
    const double gx = left + group_w * static_cast<double>(q);
    for (int s = 0; s < 3; ++s) {
      const double h = plot_h * static_cast<double>(counts[s]) /
                       static_cast<double>(max_count);
      const double x = gx + bar_w * (0.5 + s);
      svg += svg_rect(x, top + plot_h - h, bar_w * 0.9, h, series_color[s]);
    }
    svg += svg_text(gx + group_w / 2, top + plot_h + 18,
                    "Q" + std::to_string(q + 1), "middle", 12);
  }

  for (int s = 0; s < 3; ++s) {
    const double lx = left + plot_w - 150 + 52.0 * s;
    svg += svg_rect(lx, top - 14, 10, 10, series_color[s]);
    svg += svg_text(lx + 14, top - 5, series_name[s], "start", 11);
  }

  svg += "<line x1=\"" + format_fixed(left, 1) + "\" y1=\"" +
         format_fixed(top + plot_h, 1) + "\" x2=\"" +
         format_fixed(left + plot_w, 1) + "\" y2=\"" +
         format_fixed(top + plot_h, 1) +
         "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  svg += "</svg>\n";
  return svg;
}

std::string phi_svg(const PhiMatrix& matrix) {
  const double cell = 58;
  const double left = 56, top = 56;
  const double width = left + cell * kNumQuestions + 24;
  const double height = top + cell * kNumQuestions + 24;

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
      format_fixed(width, 0) + "\" height=\"" + format_fixed(height, 0) +
      "\" viewBox=\"0 0 " + format_fixed(width, 0) + " " +
      format_fixed(height, 0) + "\">\n";
  svg += svg_rect(0, 0, width, height, "#ffffff");
  svg += svg_text(left + cell * kNumQuestions / 2, 20,
                  "Phi coefficients between question pairs", "middle", 14);

  for (std::size_t q = 0; q < kNumQuestions; ++q) {
    svg += svg_text(left + cell * (q + 0.5), top - 8,
                    "Q" + std::to_string(q + 1), "middle", 12);
    svg += svg_text(left - 8, top + cell * (q + 0.5) + 4,
                    "Q" + std::to_string(q + 1), "end", 12);
  }

  for (std::size_t a = 0; a < kNumQuestions; ++a) {
    for (std::size_t b = 0; b < kNumQuestions; ++b) {
      const double x = left + cell * static_cast<double>(b);
      const double y = top + cell * static_cast<double>(a);
      const auto& value = matrix.phi[a][b];
      const std::string fill = value ? phi_color(*value) : "#d4d4d4";
      svg += svg_rect(x, y, cell - 2, cell - 2, fill,
                      " stroke=\"#ffffff\" stroke-width=\"1\"");
      const std::string label = value ? format_fixed(*value, 2) : "n/a";
      svg += svg_text(x + (cell - 2) / 2, y + cell / 2 + 4, label, "middle",
                      11);
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

void render_charts(const DistributionTable& distribution, const PhiMatrix& phi,
                   const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec && !std::filesystem::is_directory(out_dir)) {
    throw IoError("cannot create output directory " + out_dir.string() + ": " +
                  ec.message());
  }
  atomic_write(out_dir / "label_distribution.svg", distribution_svg(distribution));
  atomic_write(out_dir / "label_distribution.tsv", distribution_tsv(distribution));
  atomic_write(out_dir / "phi_matrix.svg", phi_svg(phi));
  atomic_write(out_dir / "phi_matrix.tsv", phi_tsv(phi));
}

}  // namespace misinfo
