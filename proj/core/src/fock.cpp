#include "hcslab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hcslab {

namespace {

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os << what << " (" << value << ")";
  return os.str();
}

}  // namespace

double norm_squared(const FockVector& state) {
  double s = 0.0;
  for (const Complex& a : state.amps) s += std::norm(a);
  return s;
}

double tail_mass(const FockVector& state) {
  double s = 0.0;
  const std::size_t n = state.amps.size();
  for (std::size_t i = n >= 3 ? n - 3 : 0; i < n; ++i) s += std::norm(state.amps[i]);
  return s;
}

bool is_normalized(const FockVector& state, double tol) {
  return std::abs(norm_squared(state) - 1.0) <= tol;
}

int choose_cutoff(double alpha_mag, double tol) {
  if (!(tol > 0.0) || tol > 1e-6)
    throw std::invalid_argument("choose_cutoff: tol must lie in (0, 1e-6]");
  if (!(alpha_mag >= 0.0) || !std::isfinite(alpha_mag))
    throw std::invalid_argument("choose_cutoff: |alpha| must be finite and nonnegative");
  const long double mean = static_cast<long double>(alpha_mag) * alpha_mag + 1.0L;
  long double pmf = std::exp(-mean);
  long double cum = pmf;
  int n = 0;
  while (1.0L - cum >= static_cast<long double>(tol)) {
    ++n;
    pmf *= mean / n;
    cum += pmf;
    if (n > 100000) throw std::logic_error("choose_cutoff: tail sum failed to converge");
  }
  // Margin of 10 for photon addition and displaced-parity evaluation. The
  // coherent top amplitude at the final cutoff must also clear the
  // apply_creation guard (|c_N| sqrt(N+1) <= 1e-8); for large means the
  // Poisson pmf decays slowly enough that a few extra indices are needed.
  int cutoff = n + 10;
  long double probe = pmf;
  for (int m = n + 1; m <= cutoff; ++m) probe *= mean / m;
  while (probe * (cutoff + 1) > 1e-17L) {
    ++cutoff;
    probe *= mean / cutoff;
    if (cutoff > 200000) throw std::logic_error("choose_cutoff: guard scan failed to converge");
  }
  return cutoff;
}

FockVector padded(const FockVector& state, int cutoff) {
  if (cutoff <= state.cutoff()) return state;
  FockVector out = state;
  out.amps.resize(static_cast<std::size_t>(cutoff) + 1, Complex{0.0, 0.0});
  return out;
}

FockVector normalized_copy(const FockVector& state) {
  const double n2 = norm_squared(state);
  if (n2 <= 0.0) throw std::invalid_argument("normalized_copy: zero vector");
  FockVector out = state;
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& a : out.amps) a *= inv;
  return out;
}

Complex overlap(const FockVector& bra, const FockVector& ket) {
  const std::size_t n = std::min(bra.amps.size(), ket.amps.size());
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) s += std::conj(bra.amps[i]) * ket.amps[i];
  return s;
}

FockVector lin_comb(Complex c1, const FockVector& u, Complex c2, const FockVector& v) {
  FockVector out(std::max(u.cutoff(), v.cutoff()));
  for (std::size_t i = 0; i < u.amps.size(); ++i) out.amps[i] += c1 * u.amps[i];
  for (std::size_t i = 0; i < v.amps.size(); ++i) out.amps[i] += c2 * v.amps[i];
  return out;
}

FockVector scaled(const FockVector& state, Complex factor) {
  FockVector out = state;
  for (Complex& a : out.amps) a *= factor;
  return out;
}

FockVector fock_basis_vector(int n, int cutoff) {
  if (n < 0 || n > cutoff) throw std::invalid_argument("fock_basis_vector: index out of range");
  FockVector out(cutoff);
  out[n] = 1.0;
  return out;
}

FockVector coherent_vector(Complex alpha, int cutoff, TailPolicy policy) {
  if (cutoff < 0) throw std::invalid_argument("coherent_vector: cutoff must be >= 0");
  FockVector out(cutoff);
  out[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) out[n] = out[n - 1] * alpha / std::sqrt(double(n));
  if (policy == TailPolicy::Strict && tail_mass(out) > kTailTol)
    throw CutoffInsufficient(describe("coherent_vector: tail mass above tolerance", tail_mass(out)));
  return out;
}

FockVector coherent_vector(Complex alpha) {
  return coherent_vector(alpha, choose_cutoff(std::abs(alpha)), TailPolicy::Strict);
}

FockVector apply_creation(const FockVector& state) {
  const int n_cut = state.cutoff();
  const double top = std::abs(state[n_cut]) * std::sqrt(double(n_cut) + 1.0);
  if (top > 1e-8)
    throw CutoffInsufficient(describe("apply_creation: top amplitude not negligible", top));
  FockVector out(n_cut + 1);
  for (int n = 0; n <= n_cut; ++n) out[n + 1] = std::sqrt(double(n) + 1.0) * state[n];
  return out;
}

FockVector apply_annihilation(const FockVector& state) {
  FockVector out(state.cutoff());
  for (int n = 0; n < state.cutoff(); ++n) out[n] = std::sqrt(double(n) + 1.0) * state[n + 1];
  return out;
}

Complex expectation_normal_ordered(const FockVector& state, int p, int q, TailPolicy policy) {
  if (p < 0 || q < 0 || p + q > 8)
    throw std::invalid_argument("expectation_normal_ordered: need p,q >= 0 and p+q <= 8");
  if (!is_normalized(state, 1e-8))
    throw std::invalid_argument("expectation_normal_ordered: state must be normalized");
  if (policy == TailPolicy::Strict && tail_mass(state) > kTailTol)
    throw CutoffInsufficient(describe("expectation_normal_ordered: tail mass above tolerance",
                                      tail_mass(state)));
  const int n_cut = state.cutoff();
  Complex acc{0.0, 0.0};
  for (int n = q; n <= n_cut; ++n) {
    const int m = n - q + p;
    if (m > n_cut) break;
    // falling-factorial products for a^q|n> and the bra-side a^p|m>
    double ket = 1.0, bra = 1.0;
    for (int j = n - q + 1; j <= n; ++j) ket *= j;
    for (int j = n - q + 1; j <= m; ++j) bra *= j;
    acc += std::conj(state[m]) * state[n] * std::sqrt(ket * bra);
  }
  return acc;
}

MomentSet moments(const FockVector& state, TailPolicy policy) {
  MomentSet m;
  m.mean_a = expectation_normal_ordered(state, 0, 1, policy);
  m.mean_a2 = expectation_normal_ordered(state, 0, 2, policy);
  m.mean_a4 = expectation_normal_ordered(state, 0, 4, policy);
  m.mean_n = expectation_normal_ordered(state, 1, 1, policy).real();
  m.mean_adag2a2 = expectation_normal_ordered(state, 2, 2, policy).real();
  return m;
}

namespace detail {

void fill_displacement(Complex z, int rows, int cols, std::vector<Complex>& out) {
  out.assign(static_cast<std::size_t>(rows) * cols, Complex{0.0, 0.0});
  const double x = std::norm(z);
  if (x == 0.0) {
    for (int k = 0; k < std::min(rows, cols); ++k)
      out[static_cast<std::size_t>(k) * cols + k] = 1.0;
    return;
  }
  const double log_mag = std::log(std::abs(z));
  const double arg_z = std::arg(z);
  // One associated-Laguerre recurrence per diagonal d = m - n; the same
  // L_k^{(|d|)}(x) sequence feeds both triangles.
  for (int d = -(cols - 1); d < rows; ++d) {
    const int a = std::abs(d);
    const int k_max = d >= 0 ? std::min(cols - 1, rows - 1 - d) : std::min(rows - 1, cols - 1 - a);
    if (k_max < 0) continue;
    double l_prev = 0.0;  // L_{k-1}
    double l_cur = 1.0;   // L_k, starting at L_0 = 1
    for (int k = 0; k <= k_max; ++k) {
      if (k > 0) {
        const double l_next = ((2.0 * k - 1.0 + a - x) * l_cur - (k - 1.0 + a) * l_prev) / k;
        l_prev = l_cur;
        l_cur = l_next;
      }
      const double log_pref =
          -0.5 * x + a * log_mag + 0.5 * (std::lgamma(k + 1.0) - std::lgamma(double(k) + a + 1.0));
      const double mag = std::exp(log_pref);
      if (d >= 0) {
        // <k+d|D|k> = sqrt(k!/(k+d)!) z^d e^{-x/2} L_k^{(d)}(x)
        out[static_cast<std::size_t>(k + d) * cols + k] = std::polar(mag, d * arg_z) * l_cur;
      } else {
        // <k|D|k+a> = sqrt(k!/(k+a)!) (-conj z)^a e^{-x/2} L_k^{(a)}(x)
        const double sign = (a % 2 == 0) ? 1.0 : -1.0;
        out[static_cast<std::size_t>(k) * cols + (k + a)] =
            std::polar(mag, -a * arg_z) * (sign * l_cur);
      }
    }
  }
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration from the Chebyshev-angle initial guess.
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p_deriv = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      p_deriv = n * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / p_deriv;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    nodes[i] = -t;
    nodes[n - 1 - i] = t;
    const double w = 2.0 / ((1.0 - t * t) * p_deriv * p_deriv);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

}  // namespace detail

ComplexMatrix displacement_matrix(Complex z, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("displacement_matrix: cutoff must be >= 0");
  if (std::norm(z) > cutoff / 4.0)
    throw CutoffInsufficient(describe("displacement_matrix: |z|^2 exceeds cutoff/4", std::norm(z)));
  ComplexMatrix out(cutoff + 1, cutoff + 1);
  detail::fill_displacement(z, out.rows, out.cols, out.data);
  return out;
}

double wigner_point_oracle(const FockVector& state, Complex z, TailPolicy policy) {
  if (!is_normalized(state, 1e-8))
    throw std::invalid_argument("wigner_point_oracle: state must be normalized");
  if (policy == TailPolicy::Strict && tail_mass(state) > kTailTol)
    throw CutoffInsufficient(describe("wigner_point_oracle: tail mass above tolerance",
                                      tail_mass(state)));
  const int dim = state.cutoff() + 1;
  if (std::norm(z) > state.cutoff() / 4.0)
    throw CutoffInsufficient(describe("wigner_point_oracle: |z|^2 exceeds cutoff/4", std::norm(z)));
  // Only columns under the state's support contribute to D(-z)|state>.
  int support = dim;
  while (support > 1 && state.amps[support - 1] == Complex{0.0, 0.0}) --support;
  std::vector<Complex> d;
  detail::fill_displacement(-z, dim, support, d);
  double acc = 0.0;
  for (int m = 0; m < dim; ++m) {
    Complex displaced{0.0, 0.0};
    const Complex* row = d.data() + static_cast<std::size_t>(m) * support;
    for (int n = 0; n < support; ++n) displaced += row[n] * state.amps[n];
    acc += (m % 2 == 0 ? 1.0 : -1.0) * std::norm(displaced);
  }
  return 2.0 / std::numbers::pi * acc;
}

Complex characteristic_function_normal(const FockVector& state, Complex lambda) {
  if (!is_normalized(state, 1e-8))
    throw std::invalid_argument("characteristic_function_normal: state must be normalized");
  const Complex c = std::conj(lambda);
  // Both exponential series share the terms t_k = (conj(lambda)^k / k!) a^k |state>;
  // e^{-conj(lambda) a} flips the sign of every odd k.
  FockVector term = state;
  FockVector plus = state;
  FockVector minus = state;
  double last_term_norm = 0.0;
  for (int k = 1; k <= state.cutoff(); ++k) {
    term = apply_annihilation(term);
    const Complex f = c / double(k);
    for (Complex& a : term.amps) a *= f;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < term.amps.size(); ++i) {
      plus.amps[i] += term.amps[i];
      minus.amps[i] += sign * term.amps[i];
    }
    last_term_norm = std::sqrt(norm_squared(term));
  }
  if (last_term_norm > 1e-12)
    throw SeriesNotConverged(
        describe("characteristic_function_normal: ladder series truncated by cutoff",
                 last_term_norm));
  return overlap(plus, minus);
}

double wigner_from_characteristic(const FockVector& state, Complex z, double radius, int nodes) {
  if (!is_normalized(state, 1e-8))
    throw std::invalid_argument("wigner_from_characteristic: state must be normalized");
  const int n_cut = state.cutoff();
  // Gram coefficients g[j][k] = <a^j s | a^k s> / (j! k!), so that
  // C_N(lambda) = sum_{j,k} lambda^j (-conj lambda)^k g[j][k].
  std::vector<FockVector> powers;
  powers.reserve(n_cut + 1);
  powers.push_back(state);
  std::vector<double> inv_fact{1.0};
  int order = 0;
  for (int k = 1; k <= n_cut; ++k) {
    FockVector next = apply_annihilation(powers.back());
    const double weight = std::sqrt(norm_squared(next)) * inv_fact.back() / k;
    powers.push_back(std::move(next));
    inv_fact.push_back(inv_fact.back() / k);
    order = k;
    if (weight * std::pow(radius, k) < 1e-18) break;
  }
  std::vector<std::vector<Complex>> gram(order + 1, std::vector<Complex>(order + 1));
  for (int j = 0; j <= order; ++j)
    for (int k = 0; k <= order; ++k)
      gram[j][k] = overlap(powers[j], powers[k]) * inv_fact[j] * inv_fact[k];

  std::vector<double> gl_nodes, gl_weights;
  detail::gauss_legendre(nodes, gl_nodes, gl_weights);
  std::vector<Complex> lam_pow(order + 1), neg_conj_pow(order + 1);

  const double x = z.real();
  const double p = z.imag();
  double integral = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double u = radius * gl_nodes[i];
    for (int j = 0; j < nodes; ++j) {
      const double v = radius * gl_nodes[j];
      const Complex lambda{u, v};
      lam_pow[0] = 1.0;
      neg_conj_pow[0] = 1.0;
      for (int k = 1; k <= order; ++k) {
        lam_pow[k] = lam_pow[k - 1] * lambda;
        neg_conj_pow[k] = neg_conj_pow[k - 1] * (-std::conj(lambda));
      }
      Complex cn{0.0, 0.0};
      for (int a = 0; a <= order; ++a) {
        Complex row{0.0, 0.0};
        for (int b = 0; b <= order; ++b) row += gram[a][b] * neg_conj_pow[b];
        cn += lam_pow[a] * row;
      }
      // e^{conj(lambda) z - lambda conj(z)} = e^{2i (u p - v x)}
      const double phase = 2.0 * (u * p - v * x);
      const double envelope = std::exp(-0.5 * (u * u + v * v));
      integral += gl_weights[i] * gl_weights[j] *
                  (std::cos(phase) * cn.real() - std::sin(phase) * cn.imag()) * envelope;
    }
  }
  integral *= radius * radius;
  return integral / (std::numbers::pi * std::numbers::pi);
}

}  // namespace hcslab
