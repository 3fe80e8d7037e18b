#include "lf/error.hpp"

namespace lf {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::FactorizationIncomplete: return "FactorizationIncomplete";
        case ErrorKind::NotIrreducible: return "NotIrreducible";
        case ErrorKind::Inseparable: return "Inseparable";
        case ErrorKind::InseparableRootSearch: return "InseparableRootSearch";
        case ErrorKind::NotSublattice: return "NotSublattice";
        case ErrorKind::UnstableKernel: return "UnstableKernel";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::InconsistentMinimality: return "InconsistentMinimality";
        case ErrorKind::RelationViolated: return "RelationViolated";
        case ErrorKind::SingularAtPrecision: return "SingularAtPrecision";
        case ErrorKind::NormalizationFailed: return "NormalizationFailed";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::Precondition: return "Precondition";
        case ErrorKind::Parse: return "Parse";
        case ErrorKind::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

}  // namespace lf
