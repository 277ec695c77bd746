#include "heightlab/errors.hpp"

namespace heightlab {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
        case ErrorKind::InconsistentBasis: return "InconsistentBasis";
        case ErrorKind::ZeroAtFinitePlace: return "ZeroAtFinitePlace";
        case ErrorKind::IndexDivisor: return "IndexDivisor";
        case ErrorKind::AllZero: return "AllZero";
        case ErrorKind::ZeroIdeal: return "ZeroIdeal";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::UnsupportedField: return "UnsupportedField";
        case ErrorKind::IndeterminacyPoint: return "IndeterminacyPoint";
        case ErrorKind::NotBig: return "NotBig";
        case ErrorKind::DegenerateCone: return "DegenerateCone";
        case ErrorKind::NotOnBoundary: return "NotOnBoundary";
        case ErrorKind::NotOnPolyhedralPart: return "NotOnPolyhedralPart";
        case ErrorKind::NonCyclic: return "NonCyclic";
        case ErrorKind::DivergentIntegral: return "DivergentIntegral";
        case ErrorKind::IncompatibleAction: return "IncompatibleAction";
        case ErrorKind::InconsistentExtensionTable: return "InconsistentExtensionTable";
        case ErrorKind::NotOnVariety: return "NotOnVariety";
        case ErrorKind::NotQuadratic: return "NotQuadratic";
        case ErrorKind::NonStabilized: return "NonStabilized";
        case ErrorKind::SingularFactor: return "SingularFactor";
        case ErrorKind::GradientVanishes: return "GradientVanishes";
        case ErrorKind::NonConvergent: return "NonConvergent";
        case ErrorKind::MismatchFound: return "MismatchFound";
        case ErrorKind::InsufficientRungs: return "InsufficientRungs";
        case ErrorKind::DegenerateWindow: return "DegenerateWindow";
        case ErrorKind::NonSplitWitness: return "NonSplitWitness";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::Internal: return "Internal";
    }
    return "Error";
}

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::ParseError:
        case ErrorKind::IoError:
            return 2;
        case ErrorKind::MismatchFound:
        case ErrorKind::NonSplitWitness:
            return 4;
        default:
            return 3;
    }
}

}  // namespace heightlab
