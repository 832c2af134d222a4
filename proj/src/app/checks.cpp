#include "wavekit/app/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

#include <fmt/format.h>

#include "wavekit/app/figures.hpp"
#include "wavekit/bessel.hpp"
#include "wavekit/boost.hpp"
#include "wavekit/cosmology.hpp"
#include "wavekit/propagation.hpp"

namespace wavekit::app {

bool CriterionReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

using Clock = std::chrono::steady_clock;

struct Context {
  CriterionReport& report;
  const QuadratureSpec& spec;

  void expect(std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  }
  // measured <= limit, with the numbers in the detail.
  void expect_le(std::string name, double measured, double limit) {
    expect(std::move(name), measured <= limit, fmt::format("{:.3e} <= {:.1e}", measured, limit));
  }
};

std::string kind_name(const PacketParams& p) { return std::string(to_string(p.rel.kind())); }

DispersionRelation standard_relation(DispersionKind kind) {
  switch (kind) {
    case DispersionKind::NonRelativistic: return DispersionRelation::non_relativistic(3.0);
    case DispersionKind::Lattice: return DispersionRelation::lattice(3.0, 1.0);
    case DispersionKind::Relativistic: return DispersionRelation::relativistic(1.0);
    case DispersionKind::Massless: return DispersionRelation::massless();
  }
  return DispersionRelation::massless();
}

constexpr DispersionKind kKinds[] = {DispersionKind::NonRelativistic, DispersionKind::Lattice,
                                     DispersionKind::Relativistic, DispersionKind::Massless};

// The alpha x beta_r grid of the moment criteria for one kind.
std::vector<PacketParams> parameter_grid(DispersionKind kind) {
  const DispersionRelation rel = standard_relation(kind);
  std::vector<PacketParams> out;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double frac : {0.0, 0.25, 0.5}) {
      if (kind == DispersionKind::Lattice && frac != 0.0) continue;
      out.push_back(make_minimal(rel, alpha, frac * alpha));
    }
  }
  return out;
}

// A moving, displaced packet per kind (lattice: at rest, shifted one site).
PacketParams moving_packet(DispersionKind kind) {
  const DispersionRelation rel = standard_relation(kind);
  if (kind == DispersionKind::Lattice) return make_minimal(rel, 1.0, 0.0, 1.0);
  return make_minimal(rel, 1.0, 0.5, 0.3);
}

double relative_deviation(double closed, double quad) {
  const double scale = std::max(std::abs(closed), std::abs(quad));
  if (scale <= 1e-12) return 0.0;  // both vanish
  return std::abs(closed - quad) / scale;
}

void criterion_moments(Context& ctx) {
  for (DispersionKind kind : kKinds) {
    double worst = 0.0;
    std::string where;
    for (const PacketParams& p : parameter_grid(kind)) {
      const MomentSet c = moments_closed_form(p, ctx.spec);
      const MomentSet q = moments_quadrature(p, ctx.spec);
      for (Moment m : kAllMoments) {
        if (!c.has(m)) continue;
        const double d = relative_deviation(c[m], q[m]);
        if (d > worst) {
          worst = d;
          where = fmt::format(" ({} at alpha={}, beta={})", moment_name(m), p.alpha, p.beta_r);
        }
      }
    }
    ctx.expect(fmt::format("closed form vs quadrature, {}", to_string(kind)), worst <= 1e-8,
               fmt::format("max relative deviation {:.3e} <= 1e-8{}", worst, where));
  }
}

void criterion_saturation(Context& ctx) {
  for (DispersionKind kind : kKinds) {
    double worst = 0.0;
    for (const PacketParams& p : parameter_grid(kind)) {
      worst = std::max(worst, std::abs(saturation_residual(p, ctx.spec)));
    }
    ctx.expect_le(fmt::format("dx dv - bound, {}", to_string(kind)), worst, 1e-7);
  }
}

void criterion_spreading(Context& ctx) {
  for (DispersionKind kind : kKinds) {
    const PacketParams p = moving_packet(kind);
    const MomentSet m0 = moments_closed_form(p, ctx.spec);
    double worst_width = 0.0;
    double worst_mean = 0.0;
    for (double t : {0.0, 1.0, 2.0, 5.0}) {
      const PositionMoments pm = position_moments(p, t, EvolutionMethod::Closed, ctx.spec);
      const double law = m0.position_variance() + m0.velocity_variance() * t * t;
      worst_width = std::max(worst_width, std::abs(pm.variance() / law - 1.0));
      worst_mean = std::max(worst_mean, std::abs(pm.mean / pm.norm - ehrenfest_position(m0, t)));
    }
    ctx.expect_le(fmt::format("dx(t)^2 spreading law, {}", kind_name(p)), worst_width, 1e-5);
    ctx.expect_le(fmt::format("<x>(t) Ehrenfest drift, {}", kind_name(p)), worst_mean, 1e-6);
  }
}

void criterion_greens(Context& ctx) {
  for (DispersionKind kind : kKinds) {
    const DispersionRelation rel = standard_relation(kind);
    double worst = 0.0;
    for (double frac : {0.0, 0.5}) {
      const bool lattice = kind == DispersionKind::Lattice;
      const PacketParams p = make_minimal(rel, 1.0, lattice ? 0.0 : frac, lattice ? frac * 2 : 0.3);
      for (int i = 0; i < 21; ++i) {
        const double x = lattice ? (i - 10) - p.beta_i : -10.0 + i;
        for (double t : {0.0, 1.0, 2.0, 5.0, 10.0}) {
          const cplx c = evolve_closed(p, x, t).value;
          const cplx q = evolve_quadrature(p, x, t, ctx.spec).value;
          worst = std::max(worst, std::abs(c - q));
        }
      }
    }
    ctx.expect_le(fmt::format("closed vs quadrature evolution, {}", to_string(kind)), worst, 1e-6);
  }
}

void criterion_tail(Context& ctx) {
  for (double m : {1.0, 2.0}) {
    const DispersionRelation rel = DispersionRelation::relativistic(m);
    for (double t : {1.0, 3.0}) {
      std::vector<double> zs, logs, raw;
      bool nonzero = true;
      for (int k = 0; k <= 40; ++k) {
        const double z = (5.0 + 10.0 * k / 40.0) / m;
        const double x = std::sqrt(z * z + t * t);
        const double g = std::abs(greens_closed(rel, x, t).value);
        nonzero = nonzero && g > 0.0 && std::abs(greens_closed(rel, -x, t).value) > 0.0;
        zs.push_back(z);
        raw.push_back(std::log(g));
        // Remove the algebraic factor z^(-3/2) of the K1 asymptotics.
        logs.push_back(std::log(g) + 1.5 * std::log(z));
      }
      const double slope = fitted_slope(zs, logs);
      const double raw_slope = fitted_slope(zs, raw);
      ctx.expect(fmt::format("space-like |G| > 0, m={}, t={}", m, t), nonzero,
                 "|G(x,t)| > 0 for sqrt(x^2-t^2) in [5/m, 15/m]");
      ctx.expect(fmt::format("space-like decay rate, m={}, t={}", m, t),
                 std::abs(slope / -m - 1.0) <= 0.05,
                 fmt::format("exponential rate {:.5f} vs -m = {} (raw log|G| slope {:.5f})", slope,
                             -m, raw_slope));
    }
  }
  double worst = 0.0;
  const double t = 5.0;
  for (int k = 0; k <= 8; ++k) {
    const double ratio = 1.0015 + 0.001 * k;
    for (double sign : {-1.0, 1.0}) {
      const double x = sign * t / ratio;
      const cplx kf = relativistic_greens_k_form(1.0, x, t);
      const cplx jy = relativistic_greens_jy_form(1.0, x, t);
      worst = std::max(worst, std::abs(kf - jy) / std::abs(jy));
    }
  }
  ctx.expect_le("K form vs J/Y form in 1.001 < t/|x| < 1.01 (relative)", worst, 1e-5);
}

void criterion_lorentz(Context& ctx) {
  const DispersionRelation rel = DispersionRelation::relativistic(1.0);
  double worst_norm = 0.0, worst_e = 0.0, worst_p = 0.0;
  for (double beta : {0.0, 0.5}) {
    for (double u : {0.6, -0.3}) {
      const PacketParams p = make_minimal(rel, 1.0, beta);
      const BoostedMoments bm = boosted_moments_quadrature(lorentz_boost_packet(p, u, ctx.spec), ctx.spec);
      const BoostedPrediction pred = boosted_expectations(p, moments_closed_form(p, ctx.spec), u, ctx.spec);
      worst_norm = std::max(worst_norm, std::abs(bm.norm.value.real() - 1.0));
      worst_e = std::max(worst_e, std::abs(bm.moments[Moment::E] - pred.mean_E));
      worst_p = std::max(worst_p, std::abs(bm.moments[Moment::P] - pred.mean_p));
    }
  }
  ctx.expect_le("boosted norm - 1", worst_norm, 1e-8);
  ctx.expect_le("<E>_b = gamma(<E> - u<p>)", worst_e, 1e-7);
  ctx.expect_le("<p>_b = gamma(<p> - u<E>)", worst_p, 1e-7);

  double worst_inv = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double frac : {0.0, 0.5, -0.9}) {
      for (double u : {0.6, -0.8, 0.99}) {
        const auto [a, b] = lorentz_boost_params(alpha, frac * alpha, u);
        const double before = alpha * alpha - frac * frac * alpha * alpha;
        worst_inv = std::max(worst_inv, std::abs(a * a - b * b - before));
      }
    }
  }
  ctx.expect_le("alpha^2 - beta^2 invariant", worst_inv, 1e-12);

  const PacketParams rest = make_minimal(rel, 1.0, 0.0);
  const BoostedMoments bm = boosted_moments_quadrature(lorentz_boost_packet(rest, 0.6, ctx.spec), ctx.spec);
  const double product = std::sqrt(bm.moments.position_variance() * bm.moments.velocity_variance());
  const double excess = product - 0.5 * bm.mean_curvature;
  ctx.expect("boosted packet non-minimal (u=0.6)", excess >= 1e-4,
             fmt::format("dx dv - (1/2)<m^2/E^3> = {:.6e} >= 1e-4", excess));

  const double u = 1e-5;
  const BoostedWave small = lorentz_boost_packet(rest, u, ctx.spec);
  double diff = 0.0, scale = 0.0;
  for (int k = -40; k <= 40; ++k) {
    const double p = 0.1 * k;
    const cplx psi = amplitude(rest, p);
    const cplx fd = (small.evaluator(p) - psi) / u;
    const cplx gen = 0.5 * rel.velocity(p) * psi + rel.energy(p) * log_derivative(rest, p) * psi;
    diff = std::max(diff, std::abs(fd - gen));
    scale = std::max(scale, std::abs(gen));
  }
  ctx.expect_le("infinitesimal generator (u=1e-5, relative)", diff / scale, 1e-4);
}

void criterion_figures(Context& ctx) {
  {
    const FigureSpec fig = figure_spec(1);
    const DensityGrid grid = figure_grid(fig, fig.panels[1], ctx.spec);
    std::vector<double> ridge;
    for (const auto& row : grid.density) ridge.push_back(ridge_position(grid.x_values, row));
    const double slope = fitted_slope(grid.t_values, ridge);
    const double target = fig.panels[1].packet.beta_r / fig.panels[1].packet.alpha;
    ctx.expect("figure 1 ridge drift = beta/alpha +- 2%", std::abs(slope / target - 1.0) <= 0.02,
               fmt::format("slope {:.6f} vs {}", slope, target));
  }
  {
    const FigureSpec fig = figure_spec(2);
    const DensityGrid grid = figure_grid(fig, fig.panels[0], ctx.spec);
    const int changes = curvature_sign_changes(grid.density.back(), 1e-6);
    ctx.expect("figure 2 lattice oscillations at late t", changes >= 3,
               fmt::format("{} curvature sign changes at t={} (need >= 3)", changes,
                           grid.t_values.back()));
  }
  {
    const FigureSpec fig = figure_spec(3);
    const DensityGrid grid = figure_grid(fig, fig.panels[1], ctx.spec);
    std::vector<double> means;
    for (const auto& row : grid.density) means.push_back(row_mean(grid.x_values, row));
    const double slope = fitted_slope(grid.t_values, means);
    ctx.expect("figure 3 relativistic drift = 0.5 +- 2%", std::abs(slope / 0.5 - 1.0) <= 0.02,
               fmt::format("slope {:.6f}", slope));
  }
  {
    const FigureSpec fig = figure_spec(4);
    const DensityGrid grid = figure_grid(fig, fig.panels[0], ctx.spec);
    const auto row = std::find(grid.t_values.begin(), grid.t_values.end(), 5.0) - grid.t_values.begin();
    const auto peaks = local_maxima(grid.x_values, grid.density.at(row), 0.05);
    bool ok = peaks.size() == 2 && std::abs(peaks[0] + 5.0) <= 0.5 && std::abs(peaks[1] - 5.0) <= 0.5;
    std::string where;
    for (double x : peaks) where += fmt::format(" {:.3f}", x);
    ctx.expect("figure 4 massless bimodality at t=5", ok, "peaks at" + where);
  }
}

void criterion_cosmology(Context& ctx) {
  const std::vector<ScaleFactorModel> models = {
      ScaleFactorModel::power_law(1.0, 1.0, 2.0 / 3.0), ScaleFactorModel::exponential(1.0, 0.3),
      ScaleFactorModel::tabulated({{0.0, 1.0}, {2.0, 1.5}, {5.0, 2.5}, {10.0, 4.0}})};
  const PacketParams massless = make_minimal(DispersionRelation::massless(), 1.0, 0.5);
  const PacketParams nonrel = make_minimal(DispersionRelation::non_relativistic(3.0), 1.0, 0.5);
  double worst_massless = 0.0, worst_nonrel = 0.0;
  const double v0 = mean_velocity_quadrature(nonrel, ctx.spec).value.real();
  for (const auto& model : models) {
    for (double t : {0.0, 0.5, 1.0, 3.0, 8.0}) {
      worst_massless = std::max(
          worst_massless, std::abs(mean_velocity(massless, model, t, ctx.spec).value.real() - 0.5));
      const double scaled = mean_velocity(nonrel, model, t, ctx.spec).value.real() * model(t) / model.r0();
      worst_nonrel = std::max(worst_nonrel, std::abs(scaled - v0));
    }
  }
  ctx.expect_le("massless <v(t)> constant", worst_massless, 1e-10);
  ctx.expect_le("non-relativistic <v(t)> R(t)/R(0) constant", worst_nonrel, 1e-6);

  double worst_classical = 0.0;
  for (double v : {0.1, 0.5, 0.9, 0.99}) {
    for (double r : {0.5, 1.0, 2.0, 10.0}) {
      const double vt = classical_velocity(v, 1.0, r);
      const double lhs = vt / std::sqrt(1.0 - vt * vt) * r;
      const double rhs = v / std::sqrt(1.0 - v * v);
      worst_classical = std::max(worst_classical, std::abs(lhs / rhs - 1.0));
    }
  }
  ctx.expect_le("classical p_rho conservation", worst_classical, 1e-12);

  const ScaleFactorModel still = ScaleFactorModel::power_law(2.0, 1.0, 0.0);
  const std::vector<double> times = {0.0, 1.0, 2.0, 5.0};
  double worst_static = 0.0;
  for (DispersionKind kind :
       {DispersionKind::NonRelativistic, DispersionKind::Relativistic, DispersionKind::Massless}) {
    const PacketParams p = moving_packet(kind);
    const MomentSet m0 = moments_closed_form(p, ctx.spec);
    const ComovingTrace trace = comoving_trace(p, still, times, ctx.spec);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double width = 4.0 * (trace.mean_rho2[k] - trace.mean_rho[k] * trace.mean_rho[k]);
      worst_static = std::max(worst_static, std::abs(width / spreading_width_sq(m0, times[k]) - 1.0));
    }
  }
  ctx.expect_le("static universe reproduces the spreading law", worst_static, 1e-6);
}

double richardson(const std::function<double(double)>& f, double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

void criterion_special(Context& ctx) {
  double worst_w = 0.0;
  for (double x : {1.0, 5.0, 20.0}) {
    const auto j = [](double s) { return bessel_j0_y0(s).first; };
    const auto y = [](double s) { return bessel_j0_y0(s).second; };
    const auto [j0, y0] = bessel_j0_y0(x);
    const double w = j0 * richardson(y, x, 1e-3) - richardson(j, x, 1e-3) * y0;
    worst_w = std::max(worst_w, std::abs(w - 2.0 / (std::numbers::pi * x)));
  }
  ctx.expect_le("Wronskian J0 Y0' - J0' Y0 = 2/(pi x)", worst_w, 1e-10);

  double worst_k = 0.0;
  for (cplx z : {cplx(1.0, 0.0), cplx(2.0, 1.0), cplx(5.0, -3.0)}) {
    const double h = 1e-4;
    const cplx d = (bessel_k01(z + h).k0.value - bessel_k01(z - h).k0.value) / (2.0 * h);
    worst_k = std::max(worst_k, std::abs(d + bessel_k01(z).k1.value));
  }
  ctx.expect_le("K0' = -K1", worst_k, 1e-7);

  double worst_i = 0.0;
  for (int k = 0; k <= 199; ++k) {
    const double x = 0.1 + 0.1 * k;
    const auto i0 = [](double s) { return bessel_i_integer(0, s).value.real(); };
    const double i1 = bessel_i_integer(1, x).value.real();
    worst_i = std::max(worst_i, std::abs(richardson(i0, x, 1e-3) - i1) / i1);
  }
  ctx.expect_le("I0' = I1 on [0.1, 20] (relative)", worst_i, 1e-8);

  double worst_conj = 0.0;
  for (cplx z : {cplx(0.7, 0.4), cplx(3.0, -2.0), cplx(9.0, 5.0), cplx(30.0, 12.0)}) {
    for (int n : {0, 1, 4}) {
      const cplx a = bessel_i_integer(n, std::conj(z)).value;
      const cplx b = std::conj(bessel_i_integer(n, z).value);
      worst_conj = std::max(worst_conj, std::abs(a - b) / std::abs(b));
    }
    const BesselK01 a = bessel_k01(std::conj(z));
    const BesselK01 b = bessel_k01(z);
    worst_conj = std::max(worst_conj, std::abs(a.k0.value - std::conj(b.k0.value)) / std::abs(b.k0.value));
    worst_conj = std::max(worst_conj, std::abs(a.k1.value - std::conj(b.k1.value)) / std::abs(b.k1.value));
  }
  ctx.expect_le("conjugation symmetry (relative)", worst_conj, 1e-12);

  bool positive = true;
  for (double x : {0.05, 0.5, 1.0, 3.0, 10.0, 40.0, 100.0}) {
    const BesselK01 k = bessel_k01(x);
    positive = positive && bessel_i_integer(0, x).value.real() > 0 &&
               bessel_i_integer(1, x).value.real() > 0 && k.k0.value.real() > 0 &&
               k.k1.value.real() > 0;
  }
  ctx.expect("I0, I1, K0, K1 > 0 on the positive axis", positive, "sampled on [0.05, 100]");

  bool ratio_ok = true;
  std::string ratios;
  for (double x : {10.0, 50.0}) {
    const BesselK01 k = bessel_k01(x);
    const double r = k.k0.value.real() / k.k1.value.real();
    ratio_ok = ratio_ok && r > 0.9 && r < 1.0;
    ratios += fmt::format(" K0/K1({})={:.6f}", x, r);
  }
  ctx.expect("K0/K1 in (0.9, 1) at z = 10, 50", ratio_ok, ratios);

  int sign_changes = 0;
  double last = bessel_j0_y0(2.0).first;
  for (int k = 1; k <= 100; ++k) {
    const double v = bessel_j0_y0(2.0 + 0.01 * k).first;
    if ((v > 0) != (last > 0)) ++sign_changes;
    last = v;
  }
  ctx.expect("J0 changes sign once in [2, 3]", sign_changes == 1,
             fmt::format("{} sign changes", sign_changes));

  double worst_i_overlap = 0.0;
  double worst_k_overlap = 0.0;
  for (int r = 0; r <= 8; ++r) {
    for (int a = 0; a < 12; ++a) {
      const double theta = std::numbers::pi * (a / 6.0 - 1.0) + 0.1;
      const cplx z = std::polar(6.0 + 0.25 * r, theta);
      for (int n : {0, 1, 2, 5}) {
        const cplx s = bessel_detail::i_series(n, z).value;
        const cplx q = bessel_detail::i_integral_scaled(n, z).value * std::exp(std::abs(z.real()));
        worst_i_overlap = std::max(worst_i_overlap, std::abs(s - q) / std::abs(q));
      }
      const cplx zk = std::polar(1.5 + 0.125 * r, 0.13 * (a - 6));
      const BesselK01 s = bessel_detail::k01_series(zk);
      const BesselK01 q = bessel_detail::k01_integral_scaled(zk);
      const cplx scale = std::exp(-zk);
      worst_k_overlap = std::max(worst_k_overlap, std::abs(s.k0.value - q.k0.value * scale) / std::abs(s.k0.value));
      worst_k_overlap = std::max(worst_k_overlap, std::abs(s.k1.value - q.k1.value * scale) / std::abs(s.k1.value));
    }
  }
  ctx.expect_le("I series vs integral on |z| in [6, 8]", worst_i_overlap, 1e-9);
  ctx.expect_le("K series vs integral on |z| in [1.5, 2.5]", worst_k_overlap, 1e-9);
}

struct CriterionDef {
  const char* title;
  double time_limit;
  void (*run)(Context&);
};

const CriterionDef kCriteria[kCheckedCriteria] = {
    {"closed-form moments match quadrature", 30.0, criterion_moments},
    {"minimal packets saturate the uncertainty bound", 0.0, criterion_saturation},
    {"spreading law and Ehrenfest drift", 0.0, criterion_spreading},
    {"Green's function continuation vs quadrature", 0.0, criterion_greens},
    {"relativistic space-like tail and light-cone overlap", 0.0, criterion_tail},
    {"Lorentz boost suite", 0.0, criterion_lorentz},
    {"figure reproduction", 120.0, criterion_figures},
    {"expanding-universe propagation", 0.0, criterion_cosmology},
    {"special functions", 10.0, criterion_special},
};

}  // namespace

CriterionReport run_criterion(int id, const QuadratureSpec& spec) {
  if (id < 1 || id > kCheckedCriteria) {
    throw Error(ErrorCode::InvalidInput, fmt::format("criterion {} does not exist", id));
  }
  const CriterionDef& def = kCriteria[id - 1];
  CriterionReport report;
  report.id = id;
  report.title = def.title;
  report.time_limit = def.time_limit;
  Context ctx{report, spec};
  const auto start = Clock::now();
  try {
    def.run(ctx);
  } catch (const std::exception& e) {
    ctx.expect("criterion ran to completion", false, e.what());
  }
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (def.time_limit > 0.0) {
    ctx.expect_le("runtime [s]", report.seconds, def.time_limit);
  }
  return report;
}

}  // namespace wavekit::app
