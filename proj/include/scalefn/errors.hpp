#ifndef SCALEFN_ERRORS_HPP
#define SCALEFN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scalefn {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Map construction / validation.
struct ConfigError : Error { using Error::Error; };
struct OverlapError : ConfigError { using ConfigError::ConfigError; };
struct GapError : ConfigError { using ConfigError::ConfigError; };
struct AlignmentError : ConfigError { using ConfigError::ConfigError; };
struct NonMonotoneError : ConfigError { using ConfigError::ConfigError; };
struct NonDiffeo : ConfigError { using ConfigError::ConfigError; };

// Evaluation.
struct OutOfDomain : Error { using Error::Error; };
struct NotInImage : Error { using Error::Error; };

// Dynamics.
struct NotGeometricallyFinite : Error { using Error::Error; };
struct CycleThroughCritical : Error { using Error::Error; };
struct ExponentMismatch : Error { using Error::Error; };
struct HypothesisViolated : Error { using Error::Error; };
struct ChainUnresolved : Error { using Error::Error; };
struct CriticalOnOrbit : Error { using Error::Error; };

// Symbolic.
struct UnsuitableWord : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Estimation.
struct NoConvergence : Error { using Error::Error; };
struct NotGoodMarkov : Error { using Error::Error; };
struct NotDecaying : Error { using Error::Error; };
struct FamilyNotConvergent : Error { using Error::Error; };
struct IncompatibleCombinatorics : Error { using Error::Error; };

} // namespace scalefn

#endif
