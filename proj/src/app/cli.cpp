#include "wavekit/app/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "wavekit/app/checks.hpp"
#include "wavekit/app/figures.hpp"
#include "wavekit/app/output.hpp"
#include "wavekit/boost.hpp"
#include "wavekit/cosmology.hpp"
#include "wavekit/propagation.hpp"

namespace wavekit::app {

namespace {

// Raised for bad flag values detected after parsing.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string dispersion = "nonrel";
  double mass = 1.0;
  double spacing = 1.0;
  double alpha = 1.0;
  double beta_re = 0.0;
  double beta_im = 0.0;
  double tol = 1e-10;
  std::string format = "csv";
  std::string out;
  std::string config;
  std::string method;

  double x_min = -10.0, x_max = 10.0;
  int x_steps = 201;
  double t_min = 0.0, t_max = 5.0;
  int t_steps = 6;

  double u = 0.0;

  std::string model = "power";
  double r0 = 1.0, t0 = 1.0, exponent = 2.0 / 3.0, rate = 0.3;
  std::string table;

  std::string which = "all";
  std::string panel;
  std::string out_dir = ".";

  std::string criteria;
};

double default_tolerance() {
  const char* env = std::getenv("WAVEKIT_TOL");
  if (!env || !*env) return 1e-10;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0 && v < 1.0)) {
    throw ConfigError(fmt::format("WAVEKIT_TOL='{}' is not a tolerance in (0, 1)", env));
  }
  return v;
}

QuadratureSpec make_spec(const RunConfig& c) {
  if (!(c.tol > 0.0 && c.tol < 1.0)) throw ConfigError("--tol must lie in (0, 1)");
  QuadratureSpec spec;
  spec.relative_tolerance = c.tol;
  return spec;
}

OutputFormat output_format(const RunConfig& c) {
  if (c.format == "csv") return OutputFormat::Csv;
  if (c.format == "json") return OutputFormat::Json;
  throw ConfigError("--format must be csv or json");
}

DispersionRelation make_relation(const RunConfig& c) {
  if (c.dispersion == "nonrel") return DispersionRelation::non_relativistic(c.mass);
  if (c.dispersion == "lattice") return DispersionRelation::lattice(c.mass, c.spacing);
  if (c.dispersion == "rel") return DispersionRelation::relativistic(c.mass);
  if (c.dispersion == "massless") return DispersionRelation::massless();
  throw ConfigError("--dispersion must be one of nonrel, lattice, rel, massless");
}

PacketParams make_packet(const RunConfig& c) {
  return make_minimal(make_relation(c), c.alpha, c.beta_re, c.beta_im);
}

std::vector<double> split_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ConfigError(fmt::format("'{}' is not a number", item));
    out.push_back(v);
  }
  return out;
}

std::vector<double> time_grid(const RunConfig& c) {
  if (c.t_steps < 2) throw ConfigError("--t-steps must be >= 2");
  return linspace(c.t_min, c.t_max, static_cast<std::size_t>(c.t_steps));
}

std::vector<double> space_grid(const RunConfig& c, const PacketParams& p) {
  if (p.rel.kind() == DispersionKind::Lattice) {
    // Every site in [x_min, x_max].
    const double a = p.rel.spacing();
    std::vector<double> xs;
    const long first = static_cast<long>(std::ceil((c.x_min + p.beta_i) / a - 1e-9));
    const long last = static_cast<long>(std::floor((c.x_max + p.beta_i) / a + 1e-9));
    for (long n = first; n <= last; ++n) xs.push_back(n * a - p.beta_i);
    if (xs.size() < 2) throw ConfigError("lattice grid needs at least 2 sites in [x-min, x-max]");
    return xs;
  }
  if (c.x_steps < 2) throw ConfigError("--x-steps must be >= 2");
  return linspace(c.x_min, c.x_max, static_cast<std::size_t>(c.x_steps));
}

void emit(const Table& table, const std::string& command, const RunConfig& c, std::ostream& out) {
  const OutputFormat fmt_kind = output_format(c);
  if (c.out.empty()) {
    write_table(table, command, fmt_kind, out);
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw ConfigError(fmt::format("cannot open '{}' for writing", c.out));
  write_table(table, command, fmt_kind, file);
  if (!file) throw ConfigError(fmt::format("failed writing '{}'", c.out));
}

int cmd_moments(const RunConfig& c, std::ostream& out) {
  const std::string method = c.method.empty() ? "both" : c.method;
  if (method != "closed" && method != "quadrature" && method != "both") {
    throw ConfigError("--method must be closed, quadrature or both");
  }
  const QuadratureSpec spec = make_spec(c);
  const PacketParams p = make_packet(c);
  std::optional<MomentSet> closed, quad;
  if (method != "quadrature") closed = moments_closed_form(p, spec);
  if (method != "closed") quad = moments_quadrature(p, spec);

  Table t;
  t.columns = {"quantity", "closed", "quadrature", "abs_diff", "quad_error"};
  auto row = [&](const std::string& name, std::optional<double> cv, std::optional<double> qv,
                 std::optional<double> qerr) {
    const Cell none = std::string("");
    t.add_row({name, cv ? Cell(*cv) : none, qv ? Cell(*qv) : none,
               (cv && qv) ? Cell(std::abs(*cv - *qv)) : none, qerr ? Cell(*qerr) : none});
  };
  for (Moment m : kAllMoments) {
    std::optional<double> cv, qv, qe;
    if (closed && closed->has(m)) cv = (*closed)[m];
    if (quad) {
      qv = (*quad)[m];
      qe = quad->error(m);
    }
    row(std::string(moment_name(m)), cv, qv, qe);
  }
  std::optional<double> bc, bq;
  if (method != "quadrature") bc = uncertainty_bound_closed(p, spec);
  if (method != "closed") bq = uncertainty_bound(p, spec);
  row("uncertainty_bound", bc, bq, std::nullopt);
  std::optional<double> sc, sq;
  if (closed) sc = std::sqrt(closed->position_variance() * closed->velocity_variance()) - *bc;
  if (quad) sq = saturation_residual(p, spec);
  row("saturation_residual", sc, sq, std::nullopt);
  emit(t, "moments", c, out);
  return 0;
}

EvolutionMethod evolution_method(const RunConfig& c) {
  if (c.method.empty() || c.method == "closed") return EvolutionMethod::Closed;
  if (c.method == "quadrature") return EvolutionMethod::Quadrature;
  throw ConfigError("--method must be closed or quadrature for evolve");
}

int cmd_evolve(const RunConfig& c, std::ostream& out) {
  const QuadratureSpec spec = make_spec(c);
  const PacketParams p = make_packet(c);
  const DensityGrid grid = density_grid(p, space_grid(c, p), time_grid(c), evolution_method(c), spec);
  Table t;
  t.columns = {"t", "x", "density", "abs_error"};
  for (std::size_t i = 0; i < grid.t_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.x_values.size(); ++j) {
      t.add_row({grid.t_values[i], grid.x_values[j], grid.density[i][j], grid.abs_error[i][j]});
    }
  }
  emit(t, "evolve", c, out);
  return 0;
}

int cmd_spread(const RunConfig& c, std::ostream& out) {
  const QuadratureSpec spec = make_spec(c);
  const PacketParams p = make_packet(c);
  const MomentSet m0 = moments_closed_form(p, spec);
  const EvolutionMethod method = evolution_method(c);
  Table t;
  t.columns = {"t", "width_sq_law", "width_sq_evolved", "abs_diff", "evolved_error",
               "mean_x_law", "mean_x_evolved"};
  for (double time : time_grid(c)) {
    const PositionMoments pm = position_moments(p, time, method, spec);
    const double law = spreading_width_sq(m0, time);
    const double evolved = pm.variance();
    t.add_row({time, law, evolved, std::abs(law - evolved), pm.abs_error[2],
               ehrenfest_position(m0, time), pm.mean / pm.norm});
  }
  emit(t, "spread", c, out);
  return 0;
}

int cmd_boost(const RunConfig& c, std::ostream& out) {
  const QuadratureSpec spec = make_spec(c);
  const PacketParams p = make_packet(c);
  Table t;
  t.columns = {"quantity", "predicted", "recomputed", "abs_diff", "quad_error"};
  auto row = [&](const std::string& name, double pred, double re, double err) {
    t.add_row({name, pred, re, std::abs(pred - re), err});
  };
  if (p.rel.kind() == DispersionKind::NonRelativistic) {
    const PacketParams b = galilean_boost(p, c.u);
    const MomentSet before = moments_quadrature(p, spec);
    const MomentSet after = moments_quadrature(b, spec);
    row("alpha", p.alpha, b.alpha, 0.0);
    row("beta_r", p.beta_r - c.u * p.alpha, b.beta_r, 0.0);
    row("mean_v", before.mean_v() - c.u, after.mean_v(), after.error(Moment::V));
    row("delta_x", std::sqrt(before.position_variance()), std::sqrt(after.position_variance()),
        after.error(Moment::X2));
    row("delta_v", std::sqrt(before.velocity_variance()), std::sqrt(after.velocity_variance()),
        after.error(Moment::V2));
  } else if (p.rel.kind() == DispersionKind::Relativistic) {
    const auto [ab, bb] = lorentz_boost_params(p.alpha, p.beta_r, c.u);
    const BoostedMoments bm = boosted_moments_quadrature(lorentz_boost_packet(p, c.u, spec), spec);
    const BoostedPrediction pred = boosted_expectations(p, moments_closed_form(p, spec), c.u, spec);
    const MomentSet& m = bm.moments;
    row("alpha", ab, ab, 0.0);
    row("beta_r", bb, bb, 0.0);
    row("alpha2_minus_beta2", p.alpha * p.alpha - p.beta_r * p.beta_r, ab * ab - bb * bb, 0.0);
    row("norm", 1.0, bm.norm.value.real(), bm.norm.abs_error);
    row("mean_E", pred.mean_E, m[Moment::E], m.error(Moment::E));
    row("mean_p", pred.mean_p, m[Moment::P], m.error(Moment::P));
    row("mean_v", pred.mean_v, m[Moment::V], m.error(Moment::V));
    row("mean_x", pred.mean_x, m[Moment::X], m.error(Moment::X));
    row("mean_x2", pred.mean_x2, m[Moment::X2], m.error(Moment::X2));
    const double product = std::sqrt(m.position_variance() * m.velocity_variance());
    row("uncertainty_excess", 0.0, product - 0.5 * bm.mean_curvature, 0.0);
  } else {
    throw Error(ErrorCode::KindMismatch, "boost supports nonrel (Galilean) and rel (Lorentz) packets");
  }
  emit(t, "boost", c, out);
  return 0;
}

ScaleFactorModel make_model(const RunConfig& c) {
  if (c.model == "power") return ScaleFactorModel::power_law(c.r0, c.t0, c.exponent);
  if (c.model == "exp") return ScaleFactorModel::exponential(c.r0, c.rate);
  if (c.model == "table") {
    std::vector<std::pair<double, double>> nodes;
    std::stringstream ss(c.table);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto values = split_numbers(item, ':');
      if (values.size() != 2) throw ConfigError("--table entries must look like t:R");
      nodes.emplace_back(values[0], values[1]);
    }
    return ScaleFactorModel::tabulated(std::move(nodes));
  }
  throw ConfigError("--model must be power, exp or table");
}

int cmd_cosmo(const RunConfig& c, std::ostream& out) {
  const QuadratureSpec spec = make_spec(c);
  const PacketParams p = make_packet(c);
  const ScaleFactorModel model = make_model(c);
  if (c.t_min != 0.0) throw ConfigError("cosmo traces start at --t-min 0");
  const ComovingTrace trace = comoving_trace(p, model, time_grid(c), spec);
  Table t;
  t.columns = {"t", "R", "mean_rho", "mean_rho2", "mean_x", "mean_v", "mean_v_error"};
  for (std::size_t k = 0; k < trace.t_values.size(); ++k) {
    const double time = trace.t_values[k];
    t.add_row({time, model(time), trace.mean_rho[k], trace.mean_rho2[k], trace.mean_x[k],
               trace.mean_v[k], mean_velocity(p, model, time, spec).abs_error});
  }
  emit(t, "cosmo", c, out);
  return 0;
}

int cmd_figures(const RunConfig& c, std::ostream& out) {
  const QuadratureSpec spec = make_spec(c);
  std::vector<int> which;
  if (c.which == "all") {
    which = {1, 2, 3, 4};
  } else if (c.which.size() == 1 && c.which[0] >= '1' && c.which[0] <= '4') {
    which = {c.which[0] - '0'};
  } else {
    throw ConfigError("--which must be 1, 2, 3, 4 or all");
  }
  std::optional<std::string> panel;
  if (!c.panel.empty()) {
    if (c.panel != "top" && c.panel != "bottom") throw ConfigError("--panel must be top or bottom");
    panel = c.panel;
  }
  const OutputFormat kind = output_format(c);
  for (int n : which) {
    const Table table = figure_table(figure_spec(n), panel, spec);
    const std::string command = fmt::format("figures {}", n);
    if (which.size() == 1) {
      emit(table, command, c, out);
      continue;
    }
    const auto path = std::filesystem::path(c.out_dir) /
                      fmt::format("fig{}.{}", n, kind == OutputFormat::Csv ? "csv" : "json");
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ConfigError(fmt::format("cannot open '{}' for writing", path.string()));
    write_table(table, command, kind, file);
    out << path.string() << '\n';
  }
  return 0;
}

int cmd_selfcheck(const RunConfig& c, std::ostream& out) {
  const QuadratureSpec spec = make_spec(c);
  std::vector<int> ids;
  if (c.criteria.empty()) {
    for (int i = 1; i <= kCheckedCriteria; ++i) ids.push_back(i);
  } else {
    for (double v : split_numbers(c.criteria, ',')) {
      if (v != std::floor(v) || v < 1 || v > kCheckedCriteria) {
        throw ConfigError(fmt::format("--criteria entries must be integers 1..{}", kCheckedCriteria));
      }
      ids.push_back(static_cast<int>(v));
    }
  }
  bool all = true;
  for (int id : ids) {
    const CriterionReport r = run_criterion(id, spec);
    all = all && r.passed();
    out << fmt::format("[{}] criterion {}: {} ({:.2f} s)\n", r.passed() ? "PASS" : "FAIL", r.id,
                       r.title, r.seconds);
    for (const auto& check : r.checks) {
      out << fmt::format("    [{}] {}: {}\n", check.passed ? "pass" : "FAIL", check.name, check.detail);
    }
  }
  out << (all ? "selfcheck: all criteria passed\n" : "selfcheck: FAILED\n");
  return all ? 0 : 1;
}

// Converts the flat JSON config into flag arguments placed before the
// command-line flags, so the latter win under the take-last policy.
std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path));
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("config file '{}': {}", path, e.what()));
  }
  if (!doc.is_object()) throw ConfigError("config file must hold a flat JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : doc.items()) {
    if (key == "config") throw ConfigError("config files cannot include other config files");
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_number_integer()) {
      text = std::to_string(value.get<long long>());
    } else if (value.is_number()) {
      text = format_number(value.get<double>());
    } else if (value.is_boolean()) {
      text = value.get<bool>() ? "true" : "false";
    } else {
      throw ConfigError(fmt::format("config key '{}' must be a string, number or boolean", key));
    }
    args.push_back("--" + key);
    args.push_back(text);
  }
  return args;
}

std::optional<std::string> find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

void add_packet_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--dispersion", c.dispersion, "nonrel, lattice, rel or massless")->capture_default_str();
  sub->add_option("--mass", c.mass, "particle mass m")->capture_default_str();
  sub->add_option("--spacing", c.spacing, "lattice spacing a")->capture_default_str();
  sub->add_option("--alpha", c.alpha, "width parameter alpha")->capture_default_str();
  sub->add_option("--beta-re", c.beta_re, "real part of beta")->capture_default_str();
  sub->add_option("--beta-im", c.beta_im, "imaginary part of beta (= -<x>)")->capture_default_str();
}

void add_common_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--tol", c.tol, "relative quadrature tolerance (default $WAVEKIT_TOL or 1e-10)");
  sub->add_option("--format", c.format, "csv or json")->capture_default_str();
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--config", c.config, "flat JSON file of flag values");
}

void add_grid_options(CLI::App* sub, RunConfig& c, bool with_x) {
  if (with_x) {
    sub->add_option("--x-min", c.x_min)->capture_default_str();
    sub->add_option("--x-max", c.x_max)->capture_default_str();
    sub->add_option("--x-steps", c.x_steps, "ignored for lattices (all sites)")->capture_default_str();
  }
  sub->add_option("--t-min", c.t_min)->capture_default_str();
  sub->add_option("--t-max", c.t_max)->capture_default_str();
  sub->add_option("--t-steps", c.t_steps)->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& input, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    c.tol = default_tolerance();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Minimal position-velocity uncertainty wave packets", "wavekit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* moments = app.add_subcommand("moments", "moment sets, uncertainty bound and saturation");
  add_packet_options(moments, c);
  add_common_options(moments, c);
  moments->add_option("--method", c.method, "closed, quadrature or both");

  auto* evolve = app.add_subcommand("evolve", "coordinate-space density grid");
  add_packet_options(evolve, c);
  add_common_options(evolve, c);
  add_grid_options(evolve, c, true);
  evolve->add_option("--method", c.method, "closed or quadrature");

  auto* spread = app.add_subcommand("spread", "spreading law vs evolved width");
  add_packet_options(spread, c);
  add_common_options(spread, c);
  add_grid_options(spread, c, false);
  spread->add_option("--method", c.method, "closed or quadrature");

  auto* boost = app.add_subcommand("boost", "boost map and boosted expectations");
  add_packet_options(boost, c);
  add_common_options(boost, c);
  boost->add_option("--u", c.u, "boost velocity")->required();

  auto* cosmo = app.add_subcommand("cosmo", "comoving moments in an expanding universe");
  add_packet_options(cosmo, c);
  add_common_options(cosmo, c);
  add_grid_options(cosmo, c, false);
  cosmo->add_option("--model", c.model, "power, exp or table")->capture_default_str();
  cosmo->add_option("--r0", c.r0, "R(0)")->capture_default_str();
  cosmo->add_option("--t0", c.t0, "power-law time scale")->capture_default_str();
  cosmo->add_option("--exponent", c.exponent, "power-law exponent n")->capture_default_str();
  cosmo->add_option("--rate", c.rate, "exponential rate H")->capture_default_str();
  cosmo->add_option("--table", c.table, "t:R pairs, comma separated");

  auto* figures = app.add_subcommand("figures", "density grids of figures 1-4");
  add_common_options(figures, c);
  figures->add_option("--which", c.which, "1, 2, 3, 4 or all")->capture_default_str();
  figures->add_option("--panel", c.panel, "top (beta = 0) or bottom (beta = 1/2)");
  figures->add_option("--out-dir", c.out_dir, "directory for --which all")->capture_default_str();

  auto* selfcheck = app.add_subcommand("selfcheck", "run the acceptance checks");
  selfcheck->add_option("--tol", c.tol, "relative quadrature tolerance");
  selfcheck->add_option("--config", c.config, "flat JSON file of flag values");
  selfcheck->add_option("--criteria", c.criteria, "comma separated criterion numbers");

  std::vector<std::string> args = input;
  try {
    if (auto path = find_config(args); path && !args.empty()) {
      auto extra = config_arguments(*path);
      args.insert(args.begin() + 1, extra.begin(), extra.end());
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (moments->parsed()) return cmd_moments(c, out);
    if (evolve->parsed()) return cmd_evolve(c, out);
    if (spread->parsed()) return cmd_spread(c, out);
    if (boost->parsed()) return cmd_boost(c, out);
    if (cosmo->parsed()) return cmd_cosmo(c, out);
    if (figures->parsed()) return cmd_figures(c, out);
    if (selfcheck->parsed()) return cmd_selfcheck(c, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::NonConvergence ? 1 : 2;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace wavekit::app
