#ifndef HEIGHTLAB_ERRORS_HPP
#define HEIGHTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heightlab {

// Every failure mode the library can signal.  Config/IO problems map to CLI
// exit code 2, math preconditions to 3, and check-command mismatches to 4.
enum class ErrorKind {
    ReduciblePolynomial,
    InconsistentBasis,
    ZeroAtFinitePlace,
    IndexDivisor,
    AllZero,
    ZeroIdeal,
    DomainError,
    PrecisionExhausted,
    UnsupportedField,
    IndeterminacyPoint,
    NotBig,
    DegenerateCone,
    NotOnBoundary,
    NotOnPolyhedralPart,
    NonCyclic,
    DivergentIntegral,
    IncompatibleAction,
    InconsistentExtensionTable,
    NotOnVariety,
    NotQuadratic,
    NonStabilized,
    SingularFactor,
    GradientVanishes,
    NonConvergent,
    MismatchFound,
    InsufficientRungs,
    DegenerateWindow,
    NonSplitWitness,
    ParseError,
    IoError,
    Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

// Exit-code classes used by the CLI.
int exit_code_for(ErrorKind k);

}  // namespace heightlab

#endif
