#pragma once

#include <stdexcept>
#include <string>

namespace lf {

enum class ErrorKind {
    InsufficientPrecision,
    DivisionByZero,
    FactorizationIncomplete,
    NotIrreducible,
    Inseparable,
    InseparableRootSearch,
    NotSublattice,
    UnstableKernel,
    CapExceeded,
    InconsistentMinimality,
    RelationViolated,
    SingularAtPrecision,
    NormalizationFailed,
    NonConvergence,
    BudgetExceeded,
    Precondition,
    Parse,
    Unsupported,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

// The const char* overload keeps hot paths free of string construction.
inline void require(bool cond, const char* what) {
    if (!cond) fail(ErrorKind::Precondition, what);
}
inline void require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorKind::Precondition, what);
}

}  // namespace lf
