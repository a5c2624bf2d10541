#pragma once

#include <complex>
#include <vector>

#include "hcslab/errors.hpp"

namespace hcslab {

using Complex = std::complex<double>;

// Tolerances shared by the truncation bookkeeping.
inline constexpr double kNormTol = 1e-10;      // |norm^2 - 1| for "normalized"
inline constexpr double kTailTol = 1e-10;      // tail mass admissible in metrics
inline constexpr double kCutoffTailTol = 1e-12;  // default choose_cutoff budget

enum class TailPolicy { Strict, Lenient };

// State vector on the truncated Fock basis; amps[n] multiplies |n>.
struct FockVector {
  std::vector<Complex> amps;

  FockVector() = default;
  explicit FockVector(int cutoff) : amps(static_cast<std::size_t>(cutoff) + 1) {}

  int cutoff() const { return static_cast<int>(amps.size()) - 1; }
  Complex& operator[](int n) { return amps[static_cast<std::size_t>(n)]; }
  const Complex& operator[](int n) const { return amps[static_cast<std::size_t>(n)]; }
};

// Dense complex matrix, row-major.
struct ComplexMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Complex> data;

  ComplexMatrix() = default;
  ComplexMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
  Complex& at(int m, int n) { return data[static_cast<std::size_t>(m) * cols + n]; }
  const Complex& at(int m, int n) const { return data[static_cast<std::size_t>(m) * cols + n]; }
};

// Normally ordered moments consumed by the nonclassicality metrics.
struct MomentSet {
  Complex mean_a;        // <a>
  Complex mean_a2;       // <a^2>
  Complex mean_a4;       // <a^4>
  double mean_n;         // <a^dag a>
  double mean_adag2a2;   // <a^dag^2 a^2>
};

// ---- vector bookkeeping -----------------------------------------------------

double norm_squared(const FockVector& state);

// Probability mass carried by the top three retained Fock indices.
double tail_mass(const FockVector& state);

bool is_normalized(const FockVector& state, double tol = kNormTol);

// Smallest cutoff whose Poisson tail (mean |alpha|^2 + 1) stays below tol,
// plus a margin of 10 for photon addition and displaced-parity evaluation.
int choose_cutoff(double alpha_mag, double tol = kCutoffTailTol);

// Zero-extends (or returns unchanged) to the requested cutoff.
FockVector padded(const FockVector& state, int cutoff);

FockVector normalized_copy(const FockVector& state);

// <bra|ket>; vectors of different cutoff are zero-extended.
Complex overlap(const FockVector& bra, const FockVector& ket);

// c1*u + c2*v, zero-extended to the larger cutoff.
FockVector lin_comb(Complex c1, const FockVector& u, Complex c2, const FockVector& v);

FockVector scaled(const FockVector& state, Complex factor);

// |n> on a basis with the given cutoff.
FockVector fock_basis_vector(int n, int cutoff);

// ---- construction and ladder algebra ----------------------------------------

// Coherent state amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!), built by the
// multiplicative recurrence. Under TailPolicy::Strict the tail must fit.
FockVector coherent_vector(Complex alpha, int cutoff, TailPolicy policy = TailPolicy::Strict);

// Coherent state at the default auto-selected cutoff.
FockVector coherent_vector(Complex alpha);

// a^dag applied to the state; the cutoff grows by one. Errors if the top
// amplitude would carry non-negligible weight across the truncation edge.
FockVector apply_creation(const FockVector& state);

// a applied to the state; the cutoff is unchanged (top amplitude becomes 0).
FockVector apply_annihilation(const FockVector& state);

// ---- expectation values ------------------------------------------------------

// <a^dag^p a^q> evaluated exactly on the truncated basis. Requires a
// normalized state and p + q <= 8; under TailPolicy::Strict the retained tail
// must be negligible.
Complex expectation_normal_ordered(const FockVector& state, int p, int q,
                                   TailPolicy policy = TailPolicy::Strict);

MomentSet moments(const FockVector& state, TailPolicy policy = TailPolicy::Strict);

// ---- displacement and phase-space oracles ------------------------------------

// Matrix elements <m|D(z)|n> from the associated-Laguerre closed form with
// stable upward recurrences. Guard: |z|^2 <= cutoff/4.
ComplexMatrix displacement_matrix(Complex z, int cutoff);

// Brute-force Wigner value (2/pi) sum_n (-1)^n |<n|D(-z)|state>|^2.
double wigner_point_oracle(const FockVector& state, Complex z,
                           TailPolicy policy = TailPolicy::Strict);

// Normally ordered characteristic function <e^{lambda a^dag} e^{-conj(lambda) a}>,
// evaluated by exponential ladder series on the truncated basis.
Complex characteristic_function_normal(const FockVector& state, Complex lambda);

// Second, independent Wigner route: 2-D Gauss-Legendre quadrature of the
// Fourier integral of the normally ordered characteristic function.
double wigner_from_characteristic(const FockVector& state, Complex z,
                                  double radius = 7.0, int nodes = 80);

namespace detail {

// Rectangular block of displacement matrix elements <m|D(z)|n>,
// m < rows, n < cols. No truncation guard; callers are responsible.
void fill_displacement(Complex z, int rows, int cols, std::vector<Complex>& out);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace detail

}  // namespace hcslab
