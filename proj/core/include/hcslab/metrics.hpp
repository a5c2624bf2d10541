#pragma once

#include "hcslab/fock.hpp"
#include "hcslab/hcs.hpp"

namespace hcslab {

// Quadrature angle of X_phi = (a e^{-i phi} + a^dag e^{i phi}) / sqrt(2).
struct QuadratureSpec {
  double phi_quad = 0.0;
};

struct GridBounds {
  double x_min, x_max, p_min, p_max;
};

// Rectangular phase-space grid of Wigner values. Nodes are an inclusive
// linspace; each node is treated as the center of a dx-by-dp cell by the
// integral and negativity reductions (midpoint rule).
struct WignerGrid {
  GridBounds bounds{};
  int nx = 0;
  int np = 0;
  std::vector<double> values;  // values[ix * np + ip]

  double dx() const { return (bounds.x_max - bounds.x_min) / (nx - 1); }
  double dp() const { return (bounds.p_max - bounds.p_min) / (np - 1); }
  double x_at(int ix) const { return bounds.x_min + ix * dx(); }
  double p_at(int ip) const { return bounds.p_min + ip * dp(); }
  double at(int ix, int ip) const { return values[static_cast<std::size_t>(ix) * np + ip]; }
};

struct NegativityReport {
  double min_value = 0.0;
  Complex min_location{0.0, 0.0};
  double negative_volume = 0.0;  // integral of (|W| - W)/2
};

enum class WignerMethod { ClosedForm, ParityOracle };

// ---- scalar metrics ----------------------------------------------------------

// Mandel factor (<a^dag^2 a^2> - <n>^2) / <n>; negative for sub-Poissonian
// statistics. Throws VacuumState when <n> is numerically zero.
double mandel_q(const FockVector& state);
double mandel_q(const MomentSet& m);

// Wigner-Yanase skew information of a pure state: 1/2 + <n> - |<a>|^2.
double skew_information(const FockVector& state);
double skew_information(const MomentSet& m);

// Quadrature squeezing parameter (Var X_phi) - 1/2; negative below vacuum noise.
double quadrature_squeezing(const FockVector& state, QuadratureSpec spec);
double quadrature_squeezing(const MomentSet& m, QuadratureSpec spec);

struct QuadratureScanResult {
  double angle = 0.0;
  double value = 0.0;
};

// Minimum of the squeezing parameter over angles k*pi/n_angles, k < n_angles.
QuadratureScanResult quadrature_min_scan(const FockVector& state, int n_angles);

// Angle minimizing the squeezing parameter exactly: 2 phi = arg(<a^2> - <a>^2) + pi.
double quadrature_optimal_angle(const MomentSet& m);

// Phase-minimized amplitude-squared squeezing combination
// <a^dag^2 a^2> - |<a^2>|^2 - |<a^4> - <a^2>^2|.
double as_squeezing_ymin(const FockVector& state);
double as_squeezing_ymin(const MomentSet& m);

// Energy-renormalized amplitude-squared squeezing factor (1/2) Ymin / (<n> + 1/2);
// squeezing is flagged by values in [-1, 0).
double s_ass(const FockVector& state);
double s_ass(const MomentSet& m);

struct UncertaintyY {
  double dy1 = 0.0;   // std dev of (a^dag^2 + a^2)/2
  double dy2 = 0.0;   // std dev of i(a^dag^2 - a^2)/2
  double bound = 0.0; // <n> + 1/2
};

// Uncertainty product data for the squared-amplitude pair; dy1*dy2 >= bound.
UncertaintyY amplitude_squared_uncertainty(const FockVector& state);
UncertaintyY amplitude_squared_uncertainty(const MomentSet& m);

// ---- Wigner grids --------------------------------------------------------------

// Default figure window: alpha +- 4 in both phase-space directions.
GridBounds default_bounds(Complex alpha, double half_width = 4.0);
inline constexpr int kDefaultGridPoints = 161;

// Closed-form fill (parameter family required).
WignerGrid wigner_grid(const HcsParams& params, GridBounds bounds, int nx, int np,
                       WignerMethod method = WignerMethod::ClosedForm);

// Displaced-parity fill for an arbitrary state; the vector is padded
// internally so the displacement guard holds at every grid node.
WignerGrid wigner_grid(const FockVector& state, GridBounds bounds, int nx, int np);

NegativityReport negativity_report(const WignerGrid& grid);

// Midpoint-rule integral of the grid (should be ~1 over a wide window).
double grid_integral(const WignerGrid& grid);

}  // namespace hcslab
