#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace embopt {

/// Mean regret per swept value for one algorithm.
struct PlotSeries {
  std::string algorithm;
  std::vector<double> x;
  std::vector<double> y;
};

/// Everything drawn in one figure.
struct PlotPanel {
  std::string family;
  std::string function;
  std::string swept_name;
  std::vector<PlotSeries> series;
};

/// Reads a regret CSV into one panel per (family, function), keeping file
/// order. Rows with repetition "mean" give the plotted values; a series
/// without such rows is averaged from its numeric per-repetition rows.
/// Throws std::runtime_error naming the 1-based line of a malformed row,
/// and when the file holds no plottable point.
std::vector<PlotPanel> read_regret_csv(std::istream& in);

/// Geometric sweeps (all positive, max/min >= 10) are drawn on a log axis.
bool is_geometric(const std::vector<double>& values);

/// Self-contained SVG for one panel: mean regret against the swept value,
/// one polyline and legend entry per algorithm. The y axis is logarithmic
/// when every value is positive and spans at least a factor of 10.
std::string render_svg(const PlotPanel& panel);

/// Writes <family>_<function>.svg into out_dir for every panel of the CSV
/// and returns the written paths. No file is written when reading fails.
std::vector<std::filesystem::path> emit_plot(const std::filesystem::path& csv_path,
                                             const std::filesystem::path& out_dir);

}  // namespace embopt
