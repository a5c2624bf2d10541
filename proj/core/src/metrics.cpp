#include "hcslab/metrics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hcslab/parallel.hpp"

namespace hcslab {

namespace {

constexpr double kVacuumTol = 1e-12;
constexpr double kWignerBoundSlack = 1e-9;

void validate_grid_shape(const GridBounds& b, int nx, int np) {
  if (nx < 2 || np < 2) throw std::invalid_argument("wigner_grid: need nx, np >= 2");
  if (!(b.x_max > b.x_min) || !(b.p_max > b.p_min))
    throw std::invalid_argument("wigner_grid: bounds must be increasing");
}

void validate_grid_values(const WignerGrid& g) {
  const double limit = 2.0 / std::numbers::pi + kWignerBoundSlack;
  for (double v : g.values)
    if (!(std::abs(v) <= limit)) {
      std::ostringstream os;
      os << "wigner_grid: value " << v << " exceeds the 2/pi bound";
      throw std::logic_error(os.str());
    }
}

}  // namespace

double mandel_q(const MomentSet& m) {
  if (m.mean_n <= kVacuumTol)
    throw VacuumState("mandel_q: <n> is numerically zero, Q undefined");
  return (m.mean_adag2a2 - m.mean_n * m.mean_n) / m.mean_n;
}

double mandel_q(const FockVector& state) { return mandel_q(moments(state)); }

double skew_information(const MomentSet& m) { return 0.5 + m.mean_n - std::norm(m.mean_a); }

double skew_information(const FockVector& state) { return skew_information(moments(state)); }

double quadrature_squeezing(const MomentSet& m, QuadratureSpec spec) {
  const Complex rot = std::polar(1.0, -2.0 * spec.phi_quad);
  return m.mean_n - std::norm(m.mean_a) + (rot * (m.mean_a2 - m.mean_a * m.mean_a)).real();
}

double quadrature_squeezing(const FockVector& state, QuadratureSpec spec) {
  return quadrature_squeezing(moments(state), spec);
}

QuadratureScanResult quadrature_min_scan(const FockVector& state, int n_angles) {
  if (n_angles < 4) throw std::invalid_argument("quadrature_min_scan: need n_angles >= 4");
  const MomentSet m = moments(state);
  QuadratureScanResult best{0.0, quadrature_squeezing(m, {0.0})};
  for (int k = 1; k < n_angles; ++k) {
    const double angle = k * std::numbers::pi / n_angles;
    const double value = quadrature_squeezing(m, {angle});
    if (value < best.value) best = {angle, value};
  }
  return best;
}

double quadrature_optimal_angle(const MomentSet& m) {
  return 0.5 * (std::arg(m.mean_a2 - m.mean_a * m.mean_a) + std::numbers::pi);
}

double as_squeezing_ymin(const MomentSet& m) {
  return m.mean_adag2a2 - std::norm(m.mean_a2) - std::abs(m.mean_a4 - m.mean_a2 * m.mean_a2);
}

double as_squeezing_ymin(const FockVector& state) { return as_squeezing_ymin(moments(state)); }

double s_ass(const MomentSet& m) { return 0.5 * as_squeezing_ymin(m) / (m.mean_n + 0.5); }

double s_ass(const FockVector& state) { return s_ass(moments(state)); }

UncertaintyY amplitude_squared_uncertainty(const MomentSet& m) {
  const double common = m.mean_adag2a2 + 2.0 * m.mean_n + 1.0;
  const double y1_sq = 0.5 * (common + m.mean_a4.real()) - m.mean_a2.real() * m.mean_a2.real();
  const double y2_sq = 0.5 * (common - m.mean_a4.real()) - m.mean_a2.imag() * m.mean_a2.imag();
  UncertaintyY u;
  u.dy1 = std::sqrt(std::max(0.0, y1_sq));
  u.dy2 = std::sqrt(std::max(0.0, y2_sq));
  u.bound = m.mean_n + 0.5;
  return u;
}

UncertaintyY amplitude_squared_uncertainty(const FockVector& state) {
  return amplitude_squared_uncertainty(moments(state));
}

GridBounds default_bounds(Complex alpha, double half_width) {
  return {alpha.real() - half_width, alpha.real() + half_width, alpha.imag() - half_width,
          alpha.imag() + half_width};
}

WignerGrid wigner_grid(const HcsParams& params, GridBounds bounds, int nx, int np,
                       WignerMethod method) {
  validate_grid_shape(bounds, nx, np);
  if (method == WignerMethod::ParityOracle)
    return wigner_grid(build_hcs_fock(params), bounds, nx, np);
  WignerGrid g;
  g.bounds = bounds;
  g.nx = nx;
  g.np = np;
  g.values.resize(static_cast<std::size_t>(nx) * np);
  normalization_constant(params);  // surface DegenerateState before filling
  parallel_for(static_cast<std::size_t>(nx), [&](std::size_t ix) {
    const double x = g.x_at(static_cast<int>(ix));
    for (int ip = 0; ip < np; ++ip)
      g.values[ix * np + ip] = wigner_closed(params, Complex{x, g.p_at(ip)});
  });
  validate_grid_values(g);
  return g;
}

WignerGrid wigner_grid(const FockVector& state, GridBounds bounds, int nx, int np) {
  validate_grid_shape(bounds, nx, np);
  WignerGrid g;
  g.bounds = bounds;
  g.nx = nx;
  g.np = np;
  g.values.resize(static_cast<std::size_t>(nx) * np);
  // Pad so the displacement guard and the displaced-state support both fit at
  // the farthest grid corner.
  double corner = 0.0;
  for (double x : {bounds.x_min, bounds.x_max})
    for (double p : {bounds.p_min, bounds.p_max})
      corner = std::max(corner, std::abs(Complex{x, p}));
  const double scale = std::sqrt(std::max(0.0, expectation_normal_ordered(state, 1, 1).real()));
  const int needed = std::max(static_cast<int>(std::ceil(4.0 * corner * corner)) + 1,
                              choose_cutoff(scale + corner));
  const FockVector padded_state = padded(state, std::max(needed, state.cutoff()));
  parallel_for(static_cast<std::size_t>(nx), [&](std::size_t ix) {
    const double x = g.x_at(static_cast<int>(ix));
    for (int ip = 0; ip < np; ++ip)
      g.values[ix * np + ip] = wigner_point_oracle(padded_state, Complex{x, g.p_at(ip)});
  });
  validate_grid_values(g);
  return g;
}

NegativityReport negativity_report(const WignerGrid& grid) {
  if (grid.values.empty()) throw std::invalid_argument("negativity_report: empty grid");
  NegativityReport rep;
  rep.min_value = grid.values.front();
  rep.min_location = {grid.x_at(0), grid.p_at(0)};
  double neg = 0.0;
  for (int ix = 0; ix < grid.nx; ++ix)
    for (int ip = 0; ip < grid.np; ++ip) {
      const double w = grid.at(ix, ip);
      if (w < rep.min_value) {
        rep.min_value = w;
        rep.min_location = {grid.x_at(ix), grid.p_at(ip)};
      }
      if (w < 0.0) neg -= w;
    }
  rep.negative_volume = neg * grid.dx() * grid.dp();
  return rep;
}

double grid_integral(const WignerGrid& grid) {
  double s = 0.0;
  for (double v : grid.values) s += v;
  return s * grid.dx() * grid.dp();
}

}  // namespace hcslab
