#include "embopt/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "embopt/bench.hpp"

namespace embopt {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 80;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 60;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

double parse_double(const std::string& text, std::size_t line, const char* column) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    throw std::runtime_error("row " + std::to_string(line) + ": bad " + column + " '" + text + "'");
  }
  return v;
}

bool is_unsigned(const std::string& text) {
  return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double unit(double v) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double t = log ? std::log10(v) : v;
    return b == a ? 0.5 : (t - a) / (b - a);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::floor(std::log10(lo)); e <= std::ceil(std::log10(hi)); e += 1.0) {
        const double t = std::pow(10.0, e);
        if (t >= lo * (1 - 1e-9) && t <= hi * (1 + 1e-9)) out.push_back(t);
      }
      if (out.empty()) out = {lo, hi};
      return out;
    }
    for (int i = 0; i <= 4; ++i) out.push_back(lo + (hi - lo) * i / 4.0);
    return out;
  }
};

Axis make_axis(const std::vector<double>& values, bool log) {
  Axis axis;
  axis.log = log;
  axis.lo = *std::min_element(values.begin(), values.end());
  axis.hi = *std::max_element(values.begin(), values.end());
  if (axis.lo == axis.hi) {
    if (log) {
      axis.lo /= 2;
      axis.hi *= 2;
    } else {
      axis.lo -= axis.lo == 0.0 ? 1.0 : std::abs(axis.lo) / 2;
      axis.hi += axis.hi == 0.0 ? 1.0 : std::abs(axis.hi) / 2;
    }
  }
  return axis;
}

}  // namespace

bool is_geometric(const std::vector<double>& values) {
  if (values.size() < 2) return false;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *lo > 0.0 && *hi / *lo >= 10.0;
}

std::vector<PlotPanel> read_regret_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;

  struct Acc {
    std::vector<double> mean_x, mean_y;
    std::vector<double> rep_x, rep_sum;
    std::vector<std::size_t> rep_count;
  };
  std::vector<PlotPanel> panels;
  std::vector<std::vector<Acc>> accs;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw std::runtime_error("row " + std::to_string(line_no) + ": unexpected header");
      header_seen = true;
      continue;
    }
    const auto f = split_row(line);
    if (f.size() != 10) {
      throw std::runtime_error("row " + std::to_string(line_no) + ": expected 10 fields, got " +
                               std::to_string(f.size()));
    }
    for (std::size_t i : {0, 1, 2, 3}) {
      if (f[i].empty()) throw std::runtime_error("row " + std::to_string(line_no) + ": empty name field");
    }
    const double x = parse_double(f[4], line_no, "swept_value");
    const bool is_mean = f[5] == "mean";
    if (!is_mean && !is_unsigned(f[5])) {
      throw std::runtime_error("row " + std::to_string(line_no) + ": bad repetition '" + f[5] + "'");
    }
    if (!is_unsigned(f[6])) throw std::runtime_error("row " + std::to_string(line_no) + ": bad seed '" + f[6] + "'");
    parse_double(f[7], line_no, "evaluations_used");
    parse_double(f[9], line_no, "wall_time_ms");
    const bool skipped = f[8] == "skipped";
    if (skipped && is_mean) throw std::runtime_error("row " + std::to_string(line_no) + ": skipped mean row");
    const double y = skipped ? 0.0 : parse_double(f[8], line_no, "final_regret");
    if (!skipped && y < 0.0) throw std::runtime_error("row " + std::to_string(line_no) + ": negative regret");

    auto pit = std::find_if(panels.begin(), panels.end(), [&](const PlotPanel& p) {
      return p.family == f[0] && p.function == f[1];
    });
    if (pit == panels.end()) {
      panels.push_back(PlotPanel{f[0], f[1], f[3], {}});
      accs.emplace_back();
      pit = panels.end() - 1;
    } else if (pit->swept_name != f[3]) {
      throw std::runtime_error("row " + std::to_string(line_no) + ": swept_name changes within a family");
    }
    const std::size_t pi = static_cast<std::size_t>(pit - panels.begin());
    auto sit = std::find_if(pit->series.begin(), pit->series.end(),
                            [&](const PlotSeries& s) { return s.algorithm == f[2]; });
    if (sit == pit->series.end()) {
      pit->series.push_back(PlotSeries{f[2], {}, {}});
      accs[pi].emplace_back();
      sit = pit->series.end() - 1;
    }
    Acc& acc = accs[pi][static_cast<std::size_t>(sit - pit->series.begin())];
    if (skipped) continue;
    if (is_mean) {
      if (std::find(acc.mean_x.begin(), acc.mean_x.end(), x) != acc.mean_x.end()) {
        throw std::runtime_error("row " + std::to_string(line_no) + ": duplicate mean row");
      }
      acc.mean_x.push_back(x);
      acc.mean_y.push_back(y);
    } else {
      const auto it = std::find(acc.rep_x.begin(), acc.rep_x.end(), x);
      if (it == acc.rep_x.end()) {
        acc.rep_x.push_back(x);
        acc.rep_sum.push_back(y);
        acc.rep_count.push_back(1);
      } else {
        const auto k = static_cast<std::size_t>(it - acc.rep_x.begin());
        acc.rep_sum[k] += y;
        ++acc.rep_count[k];
      }
    }
  }
  if (!header_seen) throw std::runtime_error("row " + std::to_string(line_no + 1) + ": missing header");

  std::vector<PlotPanel> out;
  for (std::size_t p = 0; p < panels.size(); ++p) {
    PlotPanel panel = panels[p];
    panel.series.clear();
    for (std::size_t s = 0; s < panels[p].series.size(); ++s) {
      const Acc& acc = accs[p][s];
      PlotSeries series{panels[p].series[s].algorithm, {}, {}};
      std::vector<std::pair<double, double>> points;
      if (!acc.mean_x.empty()) {
        for (std::size_t i = 0; i < acc.mean_x.size(); ++i) points.emplace_back(acc.mean_x[i], acc.mean_y[i]);
      } else {
        for (std::size_t i = 0; i < acc.rep_x.size(); ++i) {
          points.emplace_back(acc.rep_x[i], acc.rep_sum[i] / static_cast<double>(acc.rep_count[i]));
        }
      }
      if (points.empty()) continue;
      std::sort(points.begin(), points.end());
      for (const auto& [x, y] : points) {
        series.x.push_back(x);
        series.y.push_back(y);
      }
      panel.series.push_back(std::move(series));
    }
    if (!panel.series.empty()) out.push_back(std::move(panel));
  }
  if (out.empty()) throw std::runtime_error("regret CSV holds no plottable points (empty sweep)");
  return out;
}

std::string render_svg(const PlotPanel& panel) {
  std::vector<double> xs, ys;
  for (const auto& s : panel.series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  if (xs.empty()) throw std::invalid_argument("render_svg: empty panel");
  std::vector<double> distinct_x = xs;
  std::sort(distinct_x.begin(), distinct_x.end());
  distinct_x.erase(std::unique(distinct_x.begin(), distinct_x.end()), distinct_x.end());
  const Axis ax = make_axis(xs, is_geometric(distinct_x));
  const Axis ay = make_axis(ys, is_geometric(ys));

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + ax.unit(v) * pw; };
  auto py = [&](double v) { return kTop + (1.0 - ay.unit(v)) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(panel.family) << ": " << escape(panel.function) << "</text>\n";
  svg << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(pw) << "\" height=\""
      << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ax.ticks()) {
    const double x = px(t);
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop + ph) << "\" x2=\"" << fmt(x) << "\" y2=\""
        << fmt(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + ph + 18) << "\" text-anchor=\"middle\">"
        << tick_label(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double y = py(t);
    svg << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kLeft) << "\" y2=\""
        << fmt(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">"
        << tick_label(t) << "</text>\n";
  }
  svg << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 15) << "\" text-anchor=\"middle\">"
      << escape(panel.swept_name) << (ax.log ? " (log)" : "") << "</text>\n";
  svg << "<text x=\"18\" y=\"" << fmt(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fmt(kTop + ph / 2) << ")\">mean regret" << (ay.log ? " (log)" : "") << "</text>\n";

  for (std::size_t i = 0; i < panel.series.size(); ++i) {
    const PlotSeries& s = panel.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    svg << "<polyline class=\"series\" data-algorithm=\"" << escape(s.algorithm)
        << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      if (j > 0) svg << ' ';
      svg << fmt(px(s.x[j])) << ',' << fmt(py(s.y[j]));
    }
    svg << "\"/>\n";
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      svg << "<circle cx=\"" << fmt(px(s.x[j])) << "\" cy=\"" << fmt(py(s.y[j])) << "\" r=\"3\" fill=\""
          << color << "\"/>\n";
    }
    const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
    const double lx = kLeft + pw + 15;
    svg << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 20) << "\" y2=\""
        << fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text class=\"legend\" x=\"" << fmt(lx + 26) << "\" y=\"" << fmt(ly + 4) << "\">"
        << escape(s.algorithm) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::filesystem::path> emit_plot(const std::filesystem::path& csv_path,
                                             const std::filesystem::path& out_dir) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open " + csv_path.string());
  const std::vector<PlotPanel> panels = read_regret_csv(in);
  std::vector<std::string> documents;
  documents.reserve(panels.size());
  for (const PlotPanel& p : panels) documents.push_back(render_svg(p));

  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto path = out_dir / (panels[i].family + "_" + panels[i].function + ".svg");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << documents[i];
    written.push_back(path);
  }
  return written;
}

}  // namespace embopt
