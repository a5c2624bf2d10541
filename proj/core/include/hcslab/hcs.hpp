#pragma once

#include "hcslab/fock.hpp"

namespace hcslab {

// Parameters of the hybrid coherent state family
//   N [ sqrt(eps) e^{i theta} |alpha> + sqrt(1-eps) e^{i phi} a^dag |alpha> ].
// eps = 1 is the coherent endpoint, eps = 0 the photon-added endpoint.
struct HcsParams {
  double epsilon = 1.0;  // superposition weight, in [0, 1]
  double theta = 0.0;    // phase of the coherent branch
  double phi = 0.0;      // phase of the photon-added branch
  Complex alpha{0.0, 0.0};
};

// Normalization constant N; throws DegenerateState when the bracket under the
// inverse square root is numerically zero.
double normalization_constant(const HcsParams& params);

// Fock-basis construction N [ sqrt(eps) e^{i theta} |alpha> + ... ]. The
// returned vector has cutoff `cutoff + 1` (photon addition grows it by one).
FockVector build_hcs_fock(const HcsParams& params, int cutoff,
                          TailPolicy policy = TailPolicy::Strict);

// Same, at the default auto-selected cutoff for |alpha|.
FockVector build_hcs_fock(const HcsParams& params);

int auto_cutoff(const HcsParams& params);

// Closed-form photon number distribution P_n; the photon-added branch
// contributes nothing at n = 0.
double photon_probability(const HcsParams& params, int n);

// Closed-form <a^dag a>.
double mean_n_closed(const HcsParams& params);

// Two routes to <a^dag^2 a^2>. ClosedForm evaluates the explicit expression
// carried by this module, whose interference term is known to deviate from
// the ladder algebra; OracleValidated evaluates the truncated-Fock sum.
// Everything downstream consumes the oracle route; the closed form is kept
// inspectable and is audited by the validation report.
enum class Adag2A2Variant { ClosedForm, OracleValidated };
double adag2a2_closed(const HcsParams& params, Adag2A2Variant variant);

// Closed-form Wigner function of the hybrid state at phase-space point z.
double wigner_closed(const HcsParams& params, Complex z);

// Endpoint Wigner functions: photon-added coherent state and coherent state.
double wigner_spac(Complex alpha, Complex z);
double wigner_coherent(Complex alpha, Complex z);

// Inverts c1 |alpha> + c2 a^dag |alpha> (unnormalized) into the parameter
// family: eps from the weight ratio, branch phases from the amplitude args.
HcsParams hcs_params_from_amplitudes(Complex c1, Complex c2, Complex alpha = {0.0, 0.0});

}  // namespace hcslab
