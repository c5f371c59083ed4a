#include "lusin/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace lusin {

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw config_error("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_grid_csv(const GridFunction& g, const std::string& path) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  if (g.dim() == 1) {
    out << "x,value\n";
    for (int i = 0; i < g.nx; ++i) {
      out << g.node(i)[0] << ',' << g.at(i) << '\n';
    }
  } else {
    out << "x,y,value\n";
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        Point p = g.node2(i, j);
        out << p[0] << ',' << p[1] << ',' << g.at(i, j) << '\n';
      }
    }
  }
  write_text_file(path, out.str());
}

namespace {

std::vector<double> split_doubles(const std::string& line, const std::string& path) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      out.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw config_error("malformed CSV cell '" + cell + "' in '" + path + "'");
    }
  }
  return out;
}

}  // namespace

GridFunction read_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open '" + path + "'");
  std::string header;
  if (!std::getline(in, header)) throw config_error("empty CSV '" + path + "'");
  bool two_d;
  if (header == "x,value") {
    two_d = false;
  } else if (header == "x,y,value") {
    two_d = true;
  } else {
    throw config_error("unrecognized CSV header '" + header + "' in '" + path + "'");
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> cells = split_doubles(line, path);
    if (cells.size() != (two_d ? 3u : 2u)) {
      throw config_error("wrong column count in '" + path + "'");
    }
    rows.push_back(cells);
  }
  if (rows.size() < 2) throw config_error("CSV '" + path + "' needs at least two rows");

  if (!two_d) {
    int n = static_cast<int>(rows.size());
    double h = rows[1][0] - rows[0][0];
    if (!(h > 0)) throw config_error("CSV '" + path + "' nodes must be increasing");
    GridFunction g(Box(rows.front()[0] - 0.5 * h, rows.back()[0] + 0.5 * h), n);
    for (int i = 0; i < n; ++i) g.at(i) = rows[i][1];
    return g;
  }
  // 2-D: rows are row-major with x fastest; count the first row length.
  int nx = 1;
  while (nx < static_cast<int>(rows.size()) && rows[nx][1] == rows[0][1]) ++nx;
  int ny = static_cast<int>(rows.size()) / nx;
  if (nx < 2 || ny < 2 || nx * ny != static_cast<int>(rows.size())) {
    throw config_error("CSV '" + path + "' is not a rectangular grid");
  }
  double hx = rows[1][0] - rows[0][0];
  double hy = rows[nx][1] - rows[0][1];
  if (!(hx > 0) || !(hy > 0)) throw config_error("CSV '" + path + "' nodes must be increasing");
  Box box(Point(rows.front()[0] - 0.5 * hx, rows.front()[1] - 0.5 * hy),
          Point(rows.back()[0] + 0.5 * hx, rows.back()[1] + 0.5 * hy));
  GridFunction g(box, nx, ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      g.at(i, j) = rows[j * nx + i][2];
    }
  }
  return g;
}

PlotSeries series_from_grid(const GridFunction& g, const std::string& label) {
  if (g.dim() != 1) throw config_error("SVG plots are 1-D only");
  PlotSeries s;
  s.label = label;
  for (int i = 0; i < g.nx; ++i) {
    s.x.push_back(g.node(i)[0]);
    s.y.push_back(g.at(i));
  }
  return s;
}

namespace {

std::string fmt_tick(double v) {
  std::ostringstream ss;
  ss << std::setprecision(4) << v;
  return ss.str();
}

}  // namespace

std::string render_svg_plot(const std::vector<PlotSeries>& series, const std::string& title,
                            int width, int height) {
  if (series.empty()) throw config_error("SVG plot needs at least one series");
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty()) {
      throw config_error("SVG plot series must be nonempty with matching lengths");
    }
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1;
  if (!(ymax > ymin)) ymax = ymin + 1;
  const int ml = 64, mr = 16, mt = 32, mb = 40;  // margins
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::ostringstream out;
  out << std::setprecision(8);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  // axes box and ticks
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    double xv = xmin + (xmax - xmin) * t / 4.0;
    double yv = ymin + (ymax - ymin) * t / 4.0;
    out << "<line x1=\"" << sx(xv) << "\" y1=\"" << mt + ph << "\" x2=\"" << sx(xv) << "\" y2=\""
        << mt + ph + 5 << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << sx(xv) << "\" y=\"" << mt + ph + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt_tick(xv) << "</text>\n";
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(yv) << "\" x2=\"" << ml << "\" y2=\""
        << sy(yv) << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << sy(yv) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_tick(yv)
        << "</text>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = colors[s % 5];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      out << sx(series[s].x[i]) << ',' << sy(series[s].y[i]) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 16 + 16 * static_cast<int>(s)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">"
        << series[s].label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg_plot(const std::vector<PlotSeries>& series, const std::string& title,
                    const std::string& path, int width, int height) {
  write_text_file(path, render_svg_plot(series, title, width, height));
}

}  // namespace lusin
