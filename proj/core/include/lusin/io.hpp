#pragma once

#include <string>
#include <vector>

#include "lusin/grid.hpp"
#include "lusin/types.hpp"

namespace lusin {

// Grid CSV: header "x,value" (1-D) or "x,y,value" (2-D), one node per row,
// values printed with max_digits10 so a round trip is exact.
void write_grid_csv(const GridFunction& g, const std::string& path);
GridFunction read_grid_csv(const std::string& path);

// Writes `text` to `path` (parent directory must exist).
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// A named curve for SVG line plots.
struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

// Self-contained SVG line plot with axes, tick labels, and a legend.
std::string render_svg_plot(const std::vector<PlotSeries>& series, const std::string& title,
                            int width = 720, int height = 440);
void write_svg_plot(const std::vector<PlotSeries>& series, const std::string& title,
                    const std::string& path, int width = 720, int height = 440);

PlotSeries series_from_grid(const GridFunction& g, const std::string& label);

}  // namespace lusin
