#pragma once

#include <stdexcept>
#include <string>

namespace hcslab {

// Base class for all numerical failure modes of the library. The CLI maps
// these to exit code 3 (HeraldFailed to 4).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fock truncation cannot represent the requested state or operation to the
// required tolerance.
struct CutoffInsufficient : Error {
  using Error::Error;
};

// The normalization bracket of a hybrid state is numerically zero; the state
// family is degenerate at these parameters.
struct DegenerateState : Error {
  using Error::Error;
};

// An operator exponential series was truncated by the cutoff before its terms
// became negligible.
struct SeriesNotConverged : Error {
  using Error::Error;
};

// Mandel Q is undefined: the state has (numerically) zero mean photon number.
struct VacuumState : Error {
  using Error::Error;
};

// Postselection succeeded with probability indistinguishable from zero.
struct HeraldFailed : Error {
  using Error::Error;
};

// Both superposition amplitudes vanish; no parameter set reproduces them.
struct ZeroAmplitudes : Error {
  using Error::Error;
};

}  // namespace hcslab
