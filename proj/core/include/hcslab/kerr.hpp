#pragma once

#include <vector>

#include "hcslab/fock.hpp"
#include "hcslab/hcs.hpp"

namespace hcslab {

// Heralding scheme: a single photon split 50/50 over modes b and c, a phase
// shifter on b, a cross-Kerr coupling of b to the coherent signal, a variable
// beam splitter recombining b and c, and detection at D1.
struct KerrSchemeParams {
  Complex alpha{1.0, 0.0};     // signal coherent amplitude
  double phi0 = 0.0;           // dimensionless cross-phase shift per photon pair
  double theta_ps = 0.0;       // phase-shifter angle on mode b
  double transmissivity = 0.5; // VBS amplitude transmissivity t; r = sqrt(1 - t^2)
  int cutoff = 0;              // signal cutoff; <= 0 selects automatically
};

// The photon occupies exactly one of modes b and c, so the joint space is a
// two-branch structure over the signal Fock space. Branch coefficients are
// carried inside the branch vectors.
struct JointState {
  FockVector branch_10;  // signal amplitudes paired with |1>_b |0>_c
  FockVector branch_01;  // signal amplitudes paired with |0>_b |1>_c
  Complex alpha{0.0, 0.0};
};

struct HeraldedResult {
  FockVector signal_unnormalized;
  FockVector signal_normalized;
  double success_probability = 0.0;
  HcsParams fitted;            // least-squares fit onto span{|alpha>, a^dag|alpha>}
  double fidelity_to_fit = 0.0;
};

enum class KerrEvolution { Exact, FirstOrder };

// State after beam splitter and phase shifter, before the Kerr cell:
// branch_10 = (e^{i theta}/sqrt 2) |alpha>, branch_01 = (i/sqrt 2) |alpha>.
JointState initial_joint_state(const KerrSchemeParams& params);

// exp(-i phi0 n_a n_b): multiplies branch_10 amplitudes by e^{-i phi0 n}.
JointState kerr_evolve_exact(JointState state, double phi0);

// Linearized evolution (1 - i phi0 n) on branch_10; generally unnormalized.
JointState kerr_evolve_first_order(JointState state, double phi0);

// true when |phi0| (|alpha|^2 + |alpha|) < 0.1, the regime where the
// linearized evolution is trustworthy. Callers may warn outside it.
bool first_order_guard_ok(const KerrSchemeParams& params);

// Projection onto the D1 click t|1,0> + r|0,1>: heralded signal, success
// probability, parameter fit and its fidelity.
HeraldedResult postselect_d1(const JointState& state, double t);

// Same projection onto the orthogonal detector outcome r|1,0> - t|0,1>.
double postselect_complement_probability(const JointState& state, double t);

// <psi_f| b^dag b |psi_i'> = t e^{i theta} / sqrt 2.
Complex weak_matrix_element_nb(double theta_ps, double t);

// Convenience pipeline: prepare, evolve, postselect.
HeraldedResult run_kerr_scheme(const KerrSchemeParams& params,
                               KerrEvolution evolution = KerrEvolution::Exact);

struct SweepOptions {
  KerrEvolution evolution = KerrEvolution::Exact;
  bool with_wigner = false;    // negative volume is costly; off by default
  int wigner_points = 81;
  double wigner_half_width = 4.0;
};

struct SweepRow {
  double t = 0.0;
  bool herald_failed = false;
  double epsilon_fit = 0.0;
  double success_probability = 0.0;
  double fidelity = 0.0;
  double q = 0.0;
  double s_phi0 = 0.0;
  double s_ass = 0.0;
  double neg_volume = 0.0;  // NaN unless with_wigner
};

std::vector<SweepRow> transmissivity_sweep(const KerrSchemeParams& params,
                                           const std::vector<double>& t_values,
                                           const SweepOptions& options = {});

}  // namespace hcslab
