#include "hcslab/hcs.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hcslab {

namespace {

constexpr double kDegenerateTol = 1e-12;

void check_params(const HcsParams& p) {
  if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0))
    throw std::invalid_argument("HcsParams: epsilon must lie in [0, 1]");
  if (!std::isfinite(p.theta) || !std::isfinite(p.phi) || !std::isfinite(p.alpha.real()) ||
      !std::isfinite(p.alpha.imag()))
    throw std::invalid_argument("HcsParams: parameters must be finite");
}

// sqrt(eps - eps^2), clamped against rounding at the endpoints.
double cross_weight(double eps) {
  return std::sqrt(std::max(0.0, eps * (1.0 - eps)));
}

double bracket(const HcsParams& p) {
  const double re = (std::polar(1.0, p.theta - p.phi) * p.alpha).real();
  return 2.0 * cross_weight(p.epsilon) * re + (1.0 - p.epsilon) * std::norm(p.alpha) + 1.0;
}

}  // namespace

double normalization_constant(const HcsParams& params) {
  check_params(params);
  const double b = bracket(params);
  if (b <= kDegenerateTol) {
    std::ostringstream os;
    os << "normalization_constant: degenerate superposition, bracket = " << b
       << " at epsilon=" << params.epsilon << " theta=" << params.theta
       << " phi=" << params.phi << " alpha=(" << params.alpha.real() << ","
       << params.alpha.imag() << ")";
    throw DegenerateState(os.str());
  }
  return 1.0 / std::sqrt(b);
}

int auto_cutoff(const HcsParams& params) {
  return choose_cutoff(std::abs(params.alpha));
}

FockVector build_hcs_fock(const HcsParams& params, int cutoff, TailPolicy policy) {
  const double norm = normalization_constant(params);
  const FockVector coh = coherent_vector(params.alpha, cutoff, policy);
  FockVector added;
  if (policy == TailPolicy::Strict) {
    added = apply_creation(coh);
  } else {
    added = FockVector(cutoff + 1);
    for (int n = 0; n <= cutoff; ++n) added[n + 1] = std::sqrt(double(n) + 1.0) * coh[n];
  }
  const Complex c1 = norm * std::sqrt(params.epsilon) * std::polar(1.0, params.theta);
  const Complex c2 = norm * std::sqrt(1.0 - params.epsilon) * std::polar(1.0, params.phi);
  return lin_comb(c1, coh, c2, added);
}

FockVector build_hcs_fock(const HcsParams& params) {
  return build_hcs_fock(params, auto_cutoff(params));
}

double photon_probability(const HcsParams& params, int n) {
  if (n < 0) throw std::invalid_argument("photon_probability: n must be >= 0");
  const double norm = normalization_constant(params);
  const double r = std::abs(params.alpha);
  const double omega = std::arg(params.alpha);
  // alpha^n / sqrt(n!) via log-gamma; r = 0 leaves only the n = 0 / n = 1 terms.
  Complex coherent_part{0.0, 0.0};
  if (r > 0.0)
    coherent_part = std::polar(std::exp(n * std::log(r) - 0.5 * std::lgamma(n + 1.0)), n * omega);
  else if (n == 0)
    coherent_part = 1.0;
  Complex added_part{0.0, 0.0};
  if (n >= 1) {
    if (r > 0.0)
      added_part = std::polar(
          std::exp(0.5 * std::log(double(n)) + (n - 1) * std::log(r) - 0.5 * std::lgamma(double(n))),
          (n - 1) * omega);
    else if (n == 1)
      added_part = 1.0;
  }
  const Complex amp = norm * std::exp(-0.5 * r * r) *
                      (std::sqrt(params.epsilon) * std::polar(1.0, params.theta) * coherent_part +
                       std::sqrt(1.0 - params.epsilon) * std::polar(1.0, params.phi) * added_part);
  return std::norm(amp);
}

double mean_n_closed(const HcsParams& params) {
  const double norm = normalization_constant(params);
  const double eps = params.epsilon;
  const double a2 = std::norm(params.alpha);
  const double re = (std::polar(1.0, params.theta - params.phi) * params.alpha).real();
  const double value = (3.0 - 2.0 * eps) * a2 + (1.0 - eps) * a2 * a2 - eps + 1.0 +
                       2.0 * cross_weight(eps) * (1.0 + a2) * re;
  return norm * norm * value;
}

double adag2a2_closed(const HcsParams& params, Adag2A2Variant variant) {
  if (variant == Adag2A2Variant::OracleValidated)
    return expectation_normal_ordered(build_hcs_fock(params), 2, 2).real();
  const double norm = normalization_constant(params);
  const double eps = params.epsilon;
  const double a2 = std::norm(params.alpha);
  const double re = (std::polar(1.0, params.theta - params.phi) * params.alpha).real();
  const double value = (4.0 - 4.0 * eps) * a2 + (5.0 - 4.0 * eps) * a2 * a2 +
                       (1.0 - eps) * a2 * a2 * a2 +
                       2.0 * a2 * cross_weight(eps) * (2.0 + a2 * a2) * re;
  return norm * norm * value;
}

double wigner_closed(const HcsParams& params, Complex z) {
  const double norm = normalization_constant(params);
  const double eps = params.epsilon;
  const double interference =
      (std::polar(1.0, params.theta - params.phi) * (params.alpha - 2.0 * z)).real();
  const double envelope = std::exp(-2.0 * std::norm(params.alpha - z));
  const double body = eps - 2.0 * cross_weight(eps) * interference -
                      (1.0 - eps) * (1.0 - std::norm(2.0 * z - params.alpha));
  return 2.0 * norm * norm / std::numbers::pi * envelope * body;
}

double wigner_spac(Complex alpha, Complex z) {
  return -2.0 * (1.0 - std::norm(2.0 * z - alpha)) /
         (std::numbers::pi * (1.0 + std::norm(alpha))) * std::exp(-2.0 * std::norm(z - alpha));
}

double wigner_coherent(Complex alpha, Complex z) {
  return 2.0 / std::numbers::pi * std::exp(-2.0 * std::norm(z - alpha));
}

HcsParams hcs_params_from_amplitudes(Complex c1, Complex c2, Complex alpha) {
  const double w1 = std::norm(c1);
  const double w2 = std::norm(c2);
  if (w1 + w2 <= 0.0)
    throw ZeroAmplitudes("hcs_params_from_amplitudes: both amplitudes vanish");
  HcsParams p;
  p.epsilon = w1 / (w1 + w2);
  p.theta = w1 > 0.0 ? std::arg(c1) : 0.0;
  p.phi = w2 > 0.0 ? std::arg(c2) : 0.0;
  p.alpha = alpha;
  return p;
}

}  // namespace hcslab
