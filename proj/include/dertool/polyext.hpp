#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "dertool/algebra.hpp"

namespace dertool {

// The polynomial extension B[t] of a finite-dimensional algebra B, with t
// central. The degree cap is a computation guard: exceeding it is a hard
// error, never a silent truncation.
struct PolyExtAlgebra {
    AlgebraPtr coeff;
    int degree_cap = 64;
};

using PolyAlgPtr = std::shared_ptr<const PolyExtAlgebra>;

PolyAlgPtr poly_ext(AlgebraPtr coeff, int degree_cap = 64);

// Element of B[t]: B-valued coefficients indexed by degree in t, with no
// trailing zero coefficient.
class PolyExtElem {
public:
    PolyExtElem() = default;
    PolyExtElem(PolyAlgPtr alg, std::vector<AlgElem> coeffs);

    const PolyAlgPtr& algebra() const { return alg_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    AlgElem coeff(int k) const;
    const std::vector<AlgElem>& coeffs() const { return c_; }

    PolyExtElem operator+(const PolyExtElem& o) const;
    PolyExtElem operator-(const PolyExtElem& o) const;
    PolyExtElem operator-() const;
    PolyExtElem operator*(const PolyExtElem& o) const; // convolution; checks the cap
    bool operator==(const PolyExtElem& o) const;

private:
    void check_same(const PolyExtElem& o) const;
    void trim();
    PolyAlgPtr alg_;
    std::vector<AlgElem> c_;
};

PolyExtElem scale(const Rat& r, const PolyExtElem& a);
inline bool is_zero(const PolyExtElem& a) { return a.is_zero(); }

PolyExtElem zero_pelem(const PolyAlgPtr& alg);
PolyExtElem const_pelem(const PolyAlgPtr& alg, const AlgElem& b);      // degree 0
PolyExtElem monomial_pelem(const PolyAlgPtr& alg, const AlgElem& b, int k); // b * t^k
PolyExtElem t_pelem(const PolyAlgPtr& alg); // 1_B * t; requires B unital

// The operator families built into the backend: the coefficient derivative
// d/dt, the shift endomorphism t -> t + c*1_B, the identity, and the
// E-derivation I - shift_c.
struct PolyOp {
    enum class Kind { Derivative, Shift, Identity, IMinusShift };
    Kind kind = Kind::Derivative;
    Rat c = Rat(0); // shift amount for Shift / IMinusShift

    static PolyOp derivative() { return {Kind::Derivative, Rat(0)}; }
    static PolyOp shift(Rat c) { return {Kind::Shift, std::move(c)}; }
    static PolyOp identity() { return {Kind::Identity, Rat(0)}; }
    static PolyOp i_minus_shift(Rat c) { return {Kind::IMinusShift, std::move(c)}; }
};

PolyExtElem apply_op(const PolyOp& op, const PolyExtElem& a);

// Some u with T(u) = target, or nullopt. Supported for the derivative
// (termwise antiderivative) and I - shift_c (degreewise back-substitution
// from the top, since the operator strictly lowers t-degree). Residual
// kernel component (the constant term) is set to zero.
std::optional<PolyExtElem> solve_slice(const PolyOp& op, const PolyExtElem& target);

// e * s0 * e, re-checked to still be a preimage of e under op.
PolyExtElem normalize_s(const PolyOp& op, const PolyExtElem& e, const PolyExtElem& s0);

} // namespace dertool
