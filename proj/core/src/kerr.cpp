#include "hcslab/kerr.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hcslab/metrics.hpp"

namespace hcslab {

namespace {

constexpr double kHeraldTol = 1e-14;

double reflectivity(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("postselect: transmissivity must lie in [0, 1]");
  return std::sqrt(std::max(0.0, 1.0 - t * t));
}

}  // namespace

JointState initial_joint_state(const KerrSchemeParams& params) {
  const int cutoff =
      params.cutoff > 0 ? params.cutoff : choose_cutoff(std::abs(params.alpha));
  const FockVector coh = coherent_vector(params.alpha, cutoff);
  JointState js;
  js.alpha = params.alpha;
  js.branch_10 = scaled(coh, std::polar(1.0 / std::sqrt(2.0), params.theta_ps));
  js.branch_01 = scaled(coh, Complex{0.0, 1.0 / std::sqrt(2.0)});
  return js;
}

JointState kerr_evolve_exact(JointState state, double phi0) {
  for (int n = 0; n <= state.branch_10.cutoff(); ++n)
    state.branch_10[n] *= std::polar(1.0, -phi0 * n);
  return state;
}

JointState kerr_evolve_first_order(JointState state, double phi0) {
  for (int n = 0; n <= state.branch_10.cutoff(); ++n)
    state.branch_10[n] *= Complex{1.0, -phi0 * n};
  return state;
}

bool first_order_guard_ok(const KerrSchemeParams& params) {
  const double a = std::abs(params.alpha);
  return std::abs(params.phi0) * (a * a + a) < 0.1;
}

HeraldedResult postselect_d1(const JointState& state, double t) {
  const double r = reflectivity(t);
  HeraldedResult out;
  out.signal_unnormalized = lin_comb(t, state.branch_10, r, state.branch_01);
  out.success_probability = norm_squared(out.signal_unnormalized);
  if (out.success_probability <= kHeraldTol) {
    std::ostringstream os;
    os << "postselect_d1: success probability " << out.success_probability
       << " at t=" << t << " is below the herald threshold";
    throw HeraldFailed(os.str());
  }
  out.signal_normalized = normalized_copy(out.signal_unnormalized);

  // Least-squares decomposition of the signal over the non-orthogonal pair
  // {|alpha>, a^dag|alpha>}: solve the 2x2 Gram system.
  const int n_cut = out.signal_normalized.cutoff();
  const FockVector v1 = coherent_vector(state.alpha, n_cut, TailPolicy::Lenient);
  FockVector v2(n_cut);
  for (int n = 1; n <= n_cut; ++n) v2[n] = std::sqrt(double(n)) * v1[n - 1];
  const Complex g11 = overlap(v1, v1), g12 = overlap(v1, v2);
  const Complex g21 = overlap(v2, v1), g22 = overlap(v2, v2);
  const Complex b1 = overlap(v1, out.signal_normalized);
  const Complex b2 = overlap(v2, out.signal_normalized);
  const Complex det = g11 * g22 - g12 * g21;
  const Complex c1 = (g22 * b1 - g12 * b2) / det;
  const Complex c2 = (g11 * b2 - g21 * b1) / det;
  out.fitted = hcs_params_from_amplitudes(c1, c2, state.alpha);
  out.fidelity_to_fit =
      std::norm(overlap(build_hcs_fock(out.fitted, n_cut - 1), out.signal_normalized));
  return out;
}

double postselect_complement_probability(const JointState& state, double t) {
  const double r = reflectivity(t);
  return norm_squared(lin_comb(r, state.branch_10, -t, state.branch_01));
}

Complex weak_matrix_element_nb(double theta_ps, double t) {
  reflectivity(t);  // range check
  return std::polar(t / std::sqrt(2.0), theta_ps);
}

HeraldedResult run_kerr_scheme(const KerrSchemeParams& params, KerrEvolution evolution) {
  JointState js = initial_joint_state(params);
  js = evolution == KerrEvolution::Exact ? kerr_evolve_exact(std::move(js), params.phi0)
                                         : kerr_evolve_first_order(std::move(js), params.phi0);
  return postselect_d1(js, params.transmissivity);
}

std::vector<SweepRow> transmissivity_sweep(const KerrSchemeParams& params,
                                           const std::vector<double>& t_values,
                                           const SweepOptions& options) {
  JointState evolved = initial_joint_state(params);
  evolved = options.evolution == KerrEvolution::Exact
                ? kerr_evolve_exact(std::move(evolved), params.phi0)
                : kerr_evolve_first_order(std::move(evolved), params.phi0);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<SweepRow> rows;
  rows.reserve(t_values.size());
  for (double t : t_values) {
    SweepRow row;
    row.t = t;
    try {
      const HeraldedResult herald = postselect_d1(evolved, t);
      row.epsilon_fit = herald.fitted.epsilon;
      row.success_probability = herald.success_probability;
      row.fidelity = herald.fidelity_to_fit;
      const MomentSet m = moments(herald.signal_normalized);
      try {
        row.q = mandel_q(m);
      } catch (const VacuumState&) {
        row.q = nan;
      }
      row.s_phi0 = quadrature_squeezing(m, {0.0});
      row.s_ass = s_ass(m);
      if (options.with_wigner) {
        const Complex center = m.mean_a;
        const WignerGrid g =
            wigner_grid(herald.signal_normalized, default_bounds(center, options.wigner_half_width),
                        options.wigner_points, options.wigner_points);
        row.neg_volume = negativity_report(g).negative_volume;
      } else {
        row.neg_volume = nan;
      }
    } catch (const HeraldFailed&) {
      row.herald_failed = true;
      row.epsilon_fit = nan;
      row.success_probability = 0.0;
      row.fidelity = nan;
      row.q = nan;
      row.s_phi0 = nan;
      row.s_ass = nan;
      row.neg_volume = nan;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hcslab
