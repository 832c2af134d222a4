#include "wavekit/app/figures.hpp"

#include <algorithm>
#include <cmath>

namespace wavekit::app {

std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  if (steps < 2) throw Error(ErrorCode::InvalidInput, "grid needs at least 2 steps");
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return out;
}

FigureSpec figure_spec(int which) {
  FigureSpec fig;
  fig.number = which;
  switch (which) {
    case 1: {
      const auto rel = DispersionRelation::non_relativistic(3.0);
      fig.panels = {{"top", make_minimal(rel, 1.0, 0.0)}, {"bottom", make_minimal(rel, 1.0, 0.5)}};
      fig.x_values = linspace(-10.0, 20.0, 301);
      fig.t_values = linspace(0.0, 10.0, 21);
      break;
    }
    case 2: {
      const auto rel = DispersionRelation::lattice(3.0, 1.0);
      fig.panels = {{"top", make_minimal(rel, 1.0, 0.0)}};
      fig.x_values = linspace(-30.0, 30.0, 61);
      fig.t_values = linspace(0.0, 20.0, 41);
      break;
    }
    case 3: {
      const auto rel = DispersionRelation::relativistic(1.0);
      fig.panels = {{"top", make_minimal(rel, 1.0, 0.0)}, {"bottom", make_minimal(rel, 1.0, 0.5)}};
      fig.x_values = linspace(-15.0, 20.0, 351);
      fig.t_values = linspace(0.0, 10.0, 21);
      break;
    }
    case 4: {
      const auto rel = DispersionRelation::massless();
      fig.panels = {{"top", make_minimal(rel, 1.0, 0.0)}, {"bottom", make_minimal(rel, 1.0, 0.5)}};
      fig.x_values = linspace(-15.0, 15.0, 301);
      fig.t_values = linspace(0.0, 10.0, 21);
      break;
    }
    default:
      throw Error(ErrorCode::InvalidInput, "figure number must be 1, 2, 3 or 4");
  }
  return fig;
}

DensityGrid figure_grid(const FigureSpec& fig, const FigurePanel& panel,
                        const QuadratureSpec& spec) {
  return density_grid(panel.packet, fig.x_values, fig.t_values, EvolutionMethod::Closed, spec);
}

Table figure_table(const FigureSpec& fig, const std::optional<std::string>& panel,
                   const QuadratureSpec& spec) {
  Table table;
  table.columns = {"beta", "t", "x", "density", "abs_error"};
  bool any = false;
  for (const auto& p : fig.panels) {
    if (panel && *panel != p.name) continue;
    any = true;
    const DensityGrid grid = figure_grid(fig, p, spec);
    for (std::size_t i = 0; i < grid.t_values.size(); ++i) {
      for (std::size_t j = 0; j < grid.x_values.size(); ++j) {
        table.add_row({p.packet.beta_r, grid.t_values[i], grid.x_values[j], grid.density[i][j],
                       grid.abs_error[i][j]});
      }
    }
  }
  if (!any) {
    throw Error(ErrorCode::InvalidInput,
                "figure " + std::to_string(fig.number) + " has no panel '" + panel.value_or("") + "'");
  }
  return table;
}

double ridge_position(const std::vector<double>& x, const std::vector<double>& row) {
  const auto it = std::max_element(row.begin(), row.end());
  const std::size_t j = static_cast<std::size_t>(it - row.begin());
  if (j == 0 || j + 1 >= row.size()) return x[j];
  const double ym = row[j - 1], y0 = row[j], yp = row[j + 1];
  const double denom = ym - 2.0 * y0 + yp;
  if (denom == 0.0) return x[j];
  const double h = 0.5 * (x[j + 1] - x[j - 1]);
  return x[j] + 0.5 * h * (ym - yp) / denom;
}

double fitted_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const double n = static_cast<double>(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  return (n * sty - st * sy) / (n * stt - st * st);
}

double row_mean(const std::vector<double>& x, const std::vector<double>& row) {
  double mass = 0.0, first = 0.0;
  for (std::size_t j = 1; j < x.size(); ++j) {
    const double h = x[j] - x[j - 1];
    mass += 0.5 * h * (row[j] + row[j - 1]);
    first += 0.5 * h * (x[j] * row[j] + x[j - 1] * row[j - 1]);
  }
  return first / mass;
}

std::vector<double> local_maxima(const std::vector<double>& x, const std::vector<double>& row,
                                 double floor) {
  const double top = *std::max_element(row.begin(), row.end());
  std::vector<double> out;
  for (std::size_t j = 1; j + 1 < row.size(); ++j) {
    if (row[j] > row[j - 1] && row[j] > row[j + 1] && row[j] >= floor * top) {
      out.push_back(x[j]);
    }
  }
  return out;
}

int curvature_sign_changes(const std::vector<double>& row, double floor) {
  const double top = *std::max_element(row.begin(), row.end());
  int changes = 0;
  int last = 0;
  for (std::size_t j = 1; j + 1 < row.size(); ++j) {
    if (row[j] < floor * top) continue;
    const double d2 = row[j + 1] - 2.0 * row[j] + row[j - 1];
    const int sign = (d2 > 0.0) - (d2 < 0.0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

}  // namespace wavekit::app
