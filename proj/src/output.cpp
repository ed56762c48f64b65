#include "hqc/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <system_error>

#include "hqc/csv.hpp"
#include "hqc/errors.hpp"

namespace hqc {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMargin = 60.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

void write_svg_plot(std::ostream& out, const PlotAxes& axes,
                    const std::vector<PlotSeries>& series) {
  auto tx = [&](double x) { return axes.log_x ? std::log10(x) : x; };
  auto ty = [&](double y) { return axes.log_y ? std::log10(y) : y; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!axes.log_x || x > 0.0) &&
           (!axes.log_y || y > 0.0);
  };
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, ty(s.y[i]));
      ymax = std::max(ymax, ty(s.y[i]));
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  auto px = [&](double x) { return kMargin + (tx(x) - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin); };
  auto py = [&](double y) {
    return kHeight - kMargin - (ty(y) - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
      << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kMargin / 2
      << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(axes.title) << "</text>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-size=\"12\">"
      << escape(axes.x_label + (axes.log_x ? " (log)" : "")) << "</text>\n";
  out << "<text x=\"15\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"12\""
      << " transform=\"rotate(-90 15 " << kHeight / 2 << ")\">"
      << escape(axes.y_label + (axes.log_y ? " (log)" : "")) << "</text>\n";
  const std::string lo_x = csv::format_double(axes.log_x ? std::pow(10.0, xmin) : xmin);
  const std::string hi_x = csv::format_double(axes.log_x ? std::pow(10.0, xmax) : xmax);
  const std::string lo_y = csv::format_double(axes.log_y ? std::pow(10.0, ymin) : ymin);
  const std::string hi_y = csv::format_double(axes.log_y ? std::pow(10.0, ymax) : ymax);
  out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 15
      << "\" font-size=\"10\">" << lo_x << "</text>\n";
  out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 15
      << "\" text-anchor=\"end\" font-size=\"10\">" << hi_x << "</text>\n";
  out << "<text x=\"" << kMargin - 5 << "\" y=\"" << kHeight - kMargin
      << "\" text-anchor=\"end\" font-size=\"10\">" << lo_y << "</text>\n";
  out << "<text x=\"" << kMargin - 5 << "\" y=\"" << kMargin + 10
      << "\" text-anchor=\"end\" font-size=\"10\">" << hi_y << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      out << (first ? "" : " ") << fixed(px(s.x[i])) << ',' << fixed(py(s.y[i]));
      first = false;
    }
    out << "\"/>\n";
    out << "<text x=\"" << kWidth - kMargin - 5 << "\" y=\"" << kMargin + 15 + 14.0 * k
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color << "\">"
        << escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw PreconditionError("cannot open " + temp.string() + " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      throw PreconditionError("failed writing " + temp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw PreconditionError("cannot move " + temp.string() + " into place");
  }
}

}  // namespace hqc
