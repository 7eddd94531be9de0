#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dertool {

// Exit-code classes, mirrored by the CLI: input errors are the caller's
// fault, math negatives are honest "no" answers from a theorem, internal
// violations mean a library invariant broke and should never happen.
enum class ErrorClass { MathNegative = 1, Input = 2, Internal = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string msg)
        : std::runtime_error(std::move(msg)), cls_(cls) {}
    ErrorClass error_class() const noexcept { return cls_; }

private:
    ErrorClass cls_;
};

struct InputError : Error {
    explicit InputError(std::string m) : Error(ErrorClass::Input, std::move(m)) {}
};
struct MathNegativeError : Error {
    explicit MathNegativeError(std::string m) : Error(ErrorClass::MathNegative, std::move(m)) {}
};
struct InternalError : Error {
    explicit InternalError(std::string m) : Error(ErrorClass::Internal, std::move(m)) {}
};

// exact-arith / exact-linalg
struct ZeroPolynomial : InputError {
    ZeroPolynomial() : InputError("zero polynomial not allowed here") {}
};
struct DimensionMismatch : InputError {
    explicit DimensionMismatch(std::string m = "dimension mismatch") : InputError(std::move(m)) {}
};
struct NotSquare : InputError {
    NotSquare() : InputError("matrix is not square") {}
};
struct IterationBound : InternalError {
    explicit IterationBound(std::string m) : InternalError(std::move(m)) {}
};
struct NotCommuting : InputError {
    NotCommuting() : InputError("operators do not commute") {}
};
struct NotNilpotent : InputError {
    NotNilpotent() : InputError("operator is not nilpotent") {}
};
struct NotInvertible : InputError {
    NotInvertible() : InputError("operator is not invertible") {}
};

// findim-algebra
struct NotAssociative : InputError {
    NotAssociative(int i, int j, int k)
        : InputError("structure constants are not associative at basis triple (" +
                     std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")"),
          i(i), j(j), k(k) {}
    int i, j, k;
};
struct BadUnit : InputError {
    explicit BadUnit(int i)
        : InputError("claimed unit fails the unit law on basis element " + std::to_string(i)), i(i) {}
    int i;
};
struct AlgebraMismatch : InputError {
    AlgebraMismatch() : InputError("elements belong to different algebras") {}
};
struct NotUnital : InputError {
    explicit NotUnital(std::string m = "algebra has no unit") : InputError(std::move(m)) {}
};

// poly-ext-algebra
struct DegreeCapExceeded : InputError {
    explicit DegreeCapExceeded(int got, int cap)
        : InputError("degree " + std::to_string(got) + " exceeds cap " + std::to_string(cap)) {}
};
struct UnsupportedOperator : InputError {
    explicit UnsupportedOperator(std::string m) : InputError(std::move(m)) {}
};
struct NotPreimage : InputError {
    explicit NotPreimage(std::string m) : InputError(std::move(m)) {}
};

// deriv-calc
struct NotLocallyNilpotent : InputError {
    explicit NotLocallyNilpotent(std::string m = "operator is not locally nilpotent")
        : InputError(std::move(m)) {}
};
struct NotEDerivation : InputError {
    NotEDerivation() : InputError("operator is not an E-derivation") {}
};
struct NotEndomorphism : InputError {
    NotEndomorphism() : InputError("operator is not an algebra endomorphism") {}
};
struct PreconditionFailed : InputError {
    explicit PreconditionFailed(std::string which)
        : InputError("precondition failed: " + which), which(std::move(which)) {
        // re-derive from what() on copy; keep the tag for callers
    }
    std::string which;
};
struct KernelCheckFailed : InternalError {
    explicit KernelCheckFailed(std::string m) : InternalError(std::move(m)) {}
};
struct NotSplit : MathNegativeError {
    explicit NotSplit(std::string factor)
        : MathNegativeError("spectrum does not split over Q; offending factor " + factor),
          offending_factor(std::move(factor)) {}
    std::string offending_factor;
};
struct GradingViolation : InternalError {
    explicit GradingViolation(std::string m) : InternalError(std::move(m)) {}
};
struct StructureMismatch : InternalError {
    explicit StructureMismatch(std::string m) : InternalError(std::move(m)) {}
};
struct NoStabilization : InternalError {
    NoStabilization() : InternalError("unit orbit failed to stabilize within dim+1 steps") {}
};
struct RankMismatch : InternalError {
    explicit RankMismatch(std::string m) : InternalError(std::move(m)) {}
};

// cli / parsing
struct ParseError : InputError {
    ParseError(std::size_t pos, std::string m)
        : InputError("parse error at position " + std::to_string(pos) + ": " + m), pos(pos) {}
    std::size_t pos;
};
struct UnknownBasisName : InputError {
    explicit UnknownBasisName(std::string name)
        : InputError("unknown basis name '" + name + "'"), name(std::move(name)) {}
    std::string name;
};

} // namespace dertool
