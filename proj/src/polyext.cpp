#include "dertool/polyext.hpp"

namespace dertool {

PolyAlgPtr poly_ext(AlgebraPtr coeff, int degree_cap) {
    if (!coeff) throw InputError("polynomial extension needs a coefficient algebra");
    if (degree_cap < 1) throw InputError("degree cap must be >= 1");
    return std::make_shared<const PolyExtAlgebra>(PolyExtAlgebra{std::move(coeff), degree_cap});
}

PolyExtElem::PolyExtElem(PolyAlgPtr alg, std::vector<AlgElem> coeffs)
    : alg_(std::move(alg)), c_(std::move(coeffs)) {
    if (!alg_) throw InputError("element needs an algebra");
    for (const auto& a : c_)
        if (a.algebra() != alg_->coeff) throw AlgebraMismatch();
    trim();
    if (degree() > alg_->degree_cap) throw DegreeCapExceeded(degree(), alg_->degree_cap);
}

void PolyExtElem::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void PolyExtElem::check_same(const PolyExtElem& o) const {
    if (alg_ != o.alg_) throw AlgebraMismatch();
}

AlgElem PolyExtElem::coeff(int k) const {
    if (k >= 0 && k < static_cast<int>(c_.size())) return c_[k];
    return zero_elem(alg_->coeff);
}

PolyExtElem PolyExtElem::operator+(const PolyExtElem& o) const {
    check_same(o);
    std::vector<AlgElem> r;
    int d = std::max(degree(), o.degree());
    for (int k = 0; k <= d; ++k) r.push_back(coeff(k) + o.coeff(k));
    return PolyExtElem(alg_, std::move(r));
}

PolyExtElem PolyExtElem::operator-(const PolyExtElem& o) const {
    check_same(o);
    std::vector<AlgElem> r;
    int d = std::max(degree(), o.degree());
    for (int k = 0; k <= d; ++k) r.push_back(coeff(k) - o.coeff(k));
    return PolyExtElem(alg_, std::move(r));
}

PolyExtElem PolyExtElem::operator-() const {
    std::vector<AlgElem> r;
    for (const auto& a : c_) r.push_back(-a);
    return PolyExtElem(alg_, std::move(r));
}

PolyExtElem PolyExtElem::operator*(const PolyExtElem& o) const {
    check_same(o);
    if (is_zero() || o.is_zero()) return zero_pelem(alg_);
    int d = degree() + o.degree();
    if (d > alg_->degree_cap) throw DegreeCapExceeded(d, alg_->degree_cap);
    std::vector<AlgElem> r(d + 1, zero_elem(alg_->coeff));
    for (int i = 0; i <= degree(); ++i) {
        if (c_[i].is_zero()) continue;
        for (int j = 0; j <= o.degree(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return PolyExtElem(alg_, std::move(r));
}

bool PolyExtElem::operator==(const PolyExtElem& o) const {
    check_same(o);
    return c_ == o.c_;
}

PolyExtElem scale(const Rat& r, const PolyExtElem& a) {
    std::vector<AlgElem> out;
    for (const auto& x : a.coeffs()) out.push_back(scale(r, x));
    return PolyExtElem(a.algebra(), std::move(out));
}

PolyExtElem zero_pelem(const PolyAlgPtr& alg) { return PolyExtElem(alg, {}); }

PolyExtElem const_pelem(const PolyAlgPtr& alg, const AlgElem& b) {
    return PolyExtElem(alg, {b});
}

PolyExtElem monomial_pelem(const PolyAlgPtr& alg, const AlgElem& b, int k) {
    if (k < 0) throw InputError("negative t-degree");
    std::vector<AlgElem> c(k + 1, zero_elem(alg->coeff));
    c[k] = b;
    return PolyExtElem(alg, std::move(c));
}

PolyExtElem t_pelem(const PolyAlgPtr& alg) {
    return monomial_pelem(alg, unit_elem(alg->coeff), 1);
}

PolyExtElem apply_op(const PolyOp& op, const PolyExtElem& a) {
    const auto& alg = a.algebra();
    switch (op.kind) {
    case PolyOp::Kind::Identity:
        return a;
    case PolyOp::Kind::Derivative: {
        std::vector<AlgElem> r;
        for (int k = 1; k <= a.degree(); ++k) r.push_back(scale(Rat(k), a.coeff(k)));
        return PolyExtElem(alg, std::move(r));
    }
    case PolyOp::Kind::Shift: {
        if (!alg->coeff->unit()) throw NotUnital("shift endomorphism needs a unital coefficient algebra");
        // a_k (t + c)^k contributes C(k,j) c^{k-j} a_k to degree j.
        int d = a.degree();
        if (d < 0) return a;
        std::vector<AlgElem> r(d + 1, zero_elem(alg->coeff));
        for (int k = 0; k <= d; ++k) {
            if (a.coeff(k).is_zero()) continue;
            Rat cpow(1);
            for (int j = k; j >= 0; --j) {
                r[j] = r[j] + scale(binomial(k, j) * cpow, a.coeff(k));
                cpow *= op.c;
            }
        }
        return PolyExtElem(alg, std::move(r));
    }
    case PolyOp::Kind::IMinusShift:
        return a - apply_op(PolyOp::shift(op.c), a);
    }
    throw InternalError("unreachable operator kind");
}

std::optional<PolyExtElem> solve_slice(const PolyOp& op, const PolyExtElem& target) {
    const auto& alg = target.algebra();
    switch (op.kind) {
    case PolyOp::Kind::Derivative: {
        if (target.degree() + 1 > alg->degree_cap)
            throw DegreeCapExceeded(target.degree() + 1, alg->degree_cap);
        std::vector<AlgElem> u(target.degree() + 2, zero_elem(alg->coeff));
        for (int k = 0; k <= target.degree(); ++k)
            u[k + 1] = scale(Rat(1) / Rat(k + 1), target.coeff(k));
        return PolyExtElem(alg, std::move(u));
    }
    case PolyOp::Kind::IMinusShift: {
        if (op.c.is_zero()) // zero operator
            return target.is_zero() ? std::optional<PolyExtElem>(zero_pelem(alg)) : std::nullopt;
        if (target.is_zero()) return zero_pelem(alg);
        int d = target.degree();
        int m = d + 1;
        if (m > alg->degree_cap) throw DegreeCapExceeded(m, alg->degree_cap);
        // target_i = -sum_{j>i} C(j,i) c^{j-i} u_j; solve from the top down
        // with the constant term pinned to zero.
        std::vector<AlgElem> u(m + 1, zero_elem(alg->coeff));
        for (int i = d; i >= 0; --i) {
            AlgElem rhs = -target.coeff(i);
            for (int j = i + 2; j <= m; ++j) {
                Rat cpow(1);
                for (int p = 0; p < j - i; ++p) cpow *= op.c;
                rhs = rhs - scale(binomial(j, i) * cpow, u[j]);
            }
            u[i + 1] = scale(Rat(1) / (Rat(i + 1) * op.c), rhs);
        }
        PolyExtElem result(alg, std::move(u));
        if (!(apply_op(op, result) == target))
            throw InternalError("back-substitution failed to reproduce the target");
        return result;
    }
    default:
        throw UnsupportedOperator("solve_slice supports d/dt and I-shift only");
    }
}

PolyExtElem normalize_s(const PolyOp& op, const PolyExtElem& e, const PolyExtElem& s0) {
    PolyExtElem s = e * s0 * e;
    if (!(apply_op(op, s) == e))
        throw NotPreimage("e*s0*e is no longer a preimage of e");
    return s;
}

} // namespace dertool
