#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "chernoff/errors.hpp"
#include "chernoff/rate.hpp"

namespace chernoff::run {

// 17 significant digits: enough for a bit-stable double round-trip.
inline std::string format_full(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Fitted slopes and plot coordinates are printed at 6 significant digits.
inline std::string format_short(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// Errors at or below this are reported as "exact" rather than fitted.
inline constexpr double kExactThreshold = 1e-12;

// CSV schema: mesh,error,slope_running. The running slope of row i is the
// pairwise log-log slope against row i-1; rows at the exactness floor are
// marked "exact".
inline void emit_table(const std::vector<RatePoint>& records,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "mesh,error,slope_running\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const RatePoint& r = records[i];
    std::string slope = "nan";
    if (r.error <= kExactThreshold) {
      slope = "exact";
    } else if (i > 0) {
      const RatePoint& prev = records[i - 1];
      if (prev.error > kExactThreshold && prev.mesh != r.mesh)
        slope = format_short(std::log(r.error / prev.error) /
                             std::log(r.mesh / prev.mesh));
    }
    out << format_full(r.mesh) << "," << format_full(r.error) << "," << slope
        << "\n";
  }
  if (!out) throw IoError("write failed for " + path.string());
}

inline std::vector<RatePoint> parse_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "mesh,error,slope_running")
    throw IoError("bad table header in " + path.string());
  std::vector<RatePoint> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw IoError("bad table row '" + line + "'");
    records.push_back(
        {std::stod(line.substr(0, c1)), std::stod(line.substr(c1 + 1, c2 - c1 - 1))});
  }
  return records;
}

namespace detail {

struct PlotBox {
  double xmin, xmax, ymin, ymax;
  double px(double x) const { return 70.0 + (x - xmin) / (xmax - xmin) * 520.0; }
  double py(double y) const { return 420.0 - (y - ymin) / (ymax - ymin) * 370.0; }
};

}  // namespace detail

// Log-log scatter of (mesh, error) with the fitted line, as a minimal SVG:
// one path element per series. Records with error <= 0 are skipped.
inline void emit_plot(const std::vector<RatePoint>& records,
                      const std::filesystem::path& path,
                      const RateFit* fit = nullptr) {
  std::vector<std::pair<double, double>> pts;  // (log10 mesh, log10 error)
  for (const auto& r : records)
    if (r.mesh > 0.0 && r.error > 0.0)
      pts.push_back({std::log10(r.mesh), std::log10(r.error)});
  if (pts.empty())
    throw InsufficientDataError("emit_plot needs at least one positive record");

  detail::PlotBox box{pts[0].first, pts[0].first, pts[0].second, pts[0].second};
  for (const auto& p : pts) {
    box.xmin = std::min(box.xmin, p.first);
    box.xmax = std::max(box.xmax, p.first);
    box.ymin = std::min(box.ymin, p.second);
    box.ymax = std::max(box.ymax, p.second);
  }
  const double xpad = 0.05 * std::max(1e-12, box.xmax - box.xmin);
  const double ypad = 0.05 * std::max(1e-12, box.ymax - box.ymin);
  box.xmin -= xpad;
  box.xmax += xpad;
  box.ymin -= ypad;
  box.ymax += ypad;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n"
      << "<line x1=\"70\" y1=\"420\" x2=\"590\" y2=\"420\" stroke=\"black\"/>\n"
      << "<line x1=\"70\" y1=\"50\" x2=\"70\" y2=\"420\" stroke=\"black\"/>\n"
      << "<text x=\"300\" y=\"460\" font-size=\"14\">log10 mesh</text>\n"
      << "<text x=\"15\" y=\"240\" font-size=\"14\" transform=\"rotate(-90 15 "
         "240)\">log10 error</text>\n";

  svg << "<path d=\"";
  for (std::size_t i = 0; i < pts.size(); ++i)
    svg << (i == 0 ? "M" : "L") << format_short(box.px(pts[i].first)) << " "
        << format_short(box.py(pts[i].second));
  svg << "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n";
  for (const auto& p : pts)
    svg << "<circle cx=\"" << format_short(box.px(p.first)) << "\" cy=\""
        << format_short(box.py(p.second)) << "\" r=\"4\" fill=\"steelblue\"/>\n";

  if (fit != nullptr) {
    const double ln10 = std::log(10.0);
    auto fit_y = [&](double x10) {
      return (fit->slope * (x10 * ln10) + fit->intercept) / ln10;
    };
    svg << "<path d=\"M" << format_short(box.px(box.xmin)) << " "
        << format_short(box.py(fit_y(box.xmin))) << "L"
        << format_short(box.px(box.xmax)) << " "
        << format_short(box.py(fit_y(box.xmax)))
        << "\" fill=\"none\" stroke=\"crimson\" stroke-dasharray=\"6 3\"/>\n";
    svg << "<text x=\"90\" y=\"70\" font-size=\"14\">fitted slope "
        << format_short(fit->slope) << "</text>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << svg.str();
  if (!out) throw IoError("write failed for " + path.string());
}

// FNV-1a 64-bit checksum, hex encoded; used by the run manifest.
inline std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string checksum_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string() + " for checksum");
  std::ostringstream buf;
  buf << in.rdbuf();
  return fnv1a64_hex(buf.str());
}

}  // namespace chernoff::run
