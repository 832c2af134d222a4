#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavekit/app/output.hpp"
#include "wavekit/propagation.hpp"

namespace wavekit::app {

struct FigurePanel {
  std::string name;  // "top" or "bottom"
  PacketParams packet;
};

struct FigureSpec {
  int number = 1;
  std::vector<FigurePanel> panels;
  std::vector<double> x_values;
  std::vector<double> t_values;
};

std::vector<double> linspace(double lo, double hi, std::size_t steps);

/// Grids and packets for figures 1-4:
///   1  non-relativistic m = 3, alpha = 1, beta in {0, 1/2}
///   2  lattice m = 3, a = 1, alpha = 1, beta = 0 (sites -30..30)
///   3  relativistic m = 1, alpha = 1, beta in {0, 1/2}
///   4  massless, alpha = 1, beta in {0, 1/2}
FigureSpec figure_spec(int which);

/// Density grid of one panel.
DensityGrid figure_grid(const FigureSpec& fig, const FigurePanel& panel,
                        const QuadratureSpec& spec = {});

/// Rows "beta,t,x,density,abs_error" for the selected panels.
Table figure_table(const FigureSpec& fig, const std::optional<std::string>& panel,
                   const QuadratureSpec& spec = {});

// Grid analysis used by the figure checks.

/// Location of the row maximum refined by a parabola through its neighbours.
double ridge_position(const std::vector<double>& x, const std::vector<double>& row);
/// Least-squares slope of y against t.
double fitted_slope(const std::vector<double>& t, const std::vector<double>& y);
/// Trapezoid mean position of a row.
double row_mean(const std::vector<double>& x, const std::vector<double>& row);
/// Positions of strict interior local maxima above `floor` times the row maximum.
std::vector<double> local_maxima(const std::vector<double>& x, const std::vector<double>& row,
                                 double floor);
/// Sign changes of the discrete second difference over entries above
/// `floor` times the row maximum.
int curvature_sign_changes(const std::vector<double>& row, double floor);

}  // namespace wavekit::app
