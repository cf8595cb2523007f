#pragma once

#include <stdexcept>
#include <string>

namespace edlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Temporal stencil asked for more slices than the stack holds, or an
// unsupported derivative order.
struct MissingSlices : Error {
  using Error::Error;
};

// An integrator or operator produced NaN/Inf.
struct NonFiniteValue : Error {
  using Error::Error;
};

// Iterative elliptic solve exhausted its budget.
struct NoConvergence : Error {
  using Error::Error;
};

// Elliptic operator has a near-zero mode (other than the constant handled
// by the zero-mean convention).
struct Degenerate : Error {
  using Error::Error;
};

// |B0| below threshold where the matter-density reconstruction divides by it.
struct DegeneratePotential : Error {
  using Error::Error;
};

// Matter density below threshold where an equation divides by it.
struct VanishingDensity : Error {
  using Error::Error;
};

// |i F^1 + F^2| (or |psi1|) below threshold; the component elimination is
// obstructed (free-field special case).
struct DegenerateField : Error {
  using Error::Error;
};

// The phase of a complex field winds around a periodic axis; no global
// single-valued gauge function exists.
struct WindingObstruction : Error {
  using Error::Error;
};

// Coherent-state amplitude outside the truncation-safe ball.
struct AmplitudeTooLarge : Error {
  using Error::Error;
};

// Bad experiment configuration (unknown key, out-of-range value).
struct ConfigError : Error {
  using Error::Error;
};

// A pipeline failed; carries originating module context in the message.
struct PipelineError : Error {
  using Error::Error;
};

}  // namespace edlab
