#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ortho/harness.hpp"

namespace ortho {

namespace {

const char* column_name(PlotColumn c) {
  switch (c) {
    case PlotColumn::loss: return "loss";
    case PlotColumn::gap: return "gap";
    case PlotColumn::max_distance: return "max_distance";
  }
  return "?";
}

double pick(const RunRecord& r, PlotColumn c) {
  switch (c) {
    case PlotColumn::loss: return r.loss;
    case PlotColumn::gap: return r.gap;
    case PlotColumn::max_distance: return r.max_distance;
  }
  return 0.0;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string format_plot(const std::vector<RunRecord>& records,
                        PlotColumn column) {
  if (records.size() < 2)
    throw UsageError("emit_plot: need at least 2 records");

  const double w = 640, h = 480;
  const double ml = 70, mr = 20, mt = 40, mb = 50;

  // usable points: finite positive y (log scale), finite x
  std::vector<std::pair<double, double>> pts;
  for (const RunRecord& r : records) {
    const double y = pick(r, column);
    if (std::isfinite(r.time_s) && std::isfinite(y) && y > 0.0)
      pts.emplace_back(r.time_s, std::log10(y));
  }
  double xmin = 0, xmax = 1, ymin = -1, ymax = 0;
  if (!pts.empty()) {
    xmin = xmax = pts[0].first;
    ymin = ymax = pts[0].second;
    for (auto& p : pts) {
      xmin = std::min(xmin, p.first);
      xmax = std::max(xmax, p.first);
      ymin = std::min(ymin, p.second);
      ymax = std::max(ymax, p.second);
    }
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1e-12;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

  auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
  auto sy = [&](double ly) {
    return h - mb - (ly - ymin) / (ymax - ymin) * (h - mt - mb);
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        "width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n"
     << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
     << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
     << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"16\">"
     << column_name(column) << " vs time_s (log y)</text>\n"
     << "<text x=\"" << w / 2 << "\" y=\"" << h - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"12\">time_s: "
     << num(xmin) << " to " << num(xmax) << "</text>\n"
     << "<text x=\"16\" y=\"" << h / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"12\" transform=\"rotate(-90 16 "
     << h / 2 << ")\">log10: " << num(ymin) << " to " << num(ymax)
     << "</text>\n";

  os << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" "
        "points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << " ";
    os << num(sx(pts[i].first)) << "," << num(sy(pts[i].second));
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

void emit_plot(const std::vector<RunRecord>& records, const std::string& path,
               PlotColumn column) {
  std::string svg = format_plot(records, column);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("emit_plot: cannot open '" + path + "' for writing");
  f << svg;
  f.flush();
  if (!f) throw Error("emit_plot: write failed for '" + path + "'");
}

RunOutput run(const RunConfig& cfg) {
  if (cfg.complex_field) return run_typed<Complex>(cfg);
  return run_typed<double>(cfg);
}

}  // namespace ortho
