#pragma once

#include <stdexcept>
#include <string>

namespace perifrac {

// Base class for every failure this library reports deliberately.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// spectral core
struct InvalidGrid : Error { using Error::Error; };
struct SampleError : Error { using Error::Error; };
struct InvalidOrder : Error { using Error::Error; };

// fractional operator
struct ToleranceUnreachable : Error { using Error::Error; };
struct InvalidShift : Error { using Error::Error; };

// nonlinear solver
struct PositivityViolated : Error { using Error::Error; };
struct MaxIterExceeded : Error { using Error::Error; };
struct SingularJacobian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct InvalidPair : Error { using Error::Error; };

// continuation / homotopy
struct SeedFailed : Error { using Error::Error; };
struct StepCollapse : Error { using Error::Error; };
struct NoFoldInBranch : Error { using Error::Error; };
struct NoBracket : Error { using Error::Error; };
struct HomotopyStall : Error { using Error::Error; };

// certificates
struct WindowGrowthExceeded : Error { using Error::Error; };
struct DriftRequired : Error { using Error::Error; };
struct InvalidBeta : Error { using Error::Error; };
struct RootBracketFailed : Error { using Error::Error; };
struct MissingCertificate : Error { using Error::Error; };

// configuration / io
struct SchemaError : Error { using Error::Error; };

// violated documented precondition that has no more specific type above
struct PreconditionViolation : Error { using Error::Error; };

} // namespace perifrac
