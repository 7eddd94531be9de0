#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dertool/algebra.hpp"
#include "dertool/rational.hpp"

namespace dertool {

// The series calculus of locally nilpotent operators, written once over an
// abstract element type E (finite-dimensional elements or B[t] elements).
// E needs +, -, *, scale(Rat, E), is_zero(E) and ==. Operators are plain
// callables; local nilpotency is the caller's responsibility (classify
// first), and the hard step cap converts a broken promise into an error
// instead of a hang.

template <class E>
using ElemOp = std::function<E(const E&)>;

inline constexpr int kSeriesStepCap = 4096;

namespace detail {
[[noreturn]] inline void series_diverged(const char* what) {
    throw NotLocallyNilpotent(std::string(what) + ": operator series did not terminate");
}
} // namespace detail

// All powers T^0(a), T^1(a), ... up to (and excluding) the first zero.
template <class E>
std::vector<E> orbit(const ElemOp<E>& op, const E& a) {
    std::vector<E> out;
    E cur = a;
    for (int k = 0; k <= kSeriesStepCap; ++k) {
        if (is_zero(cur)) return out;
        out.push_back(cur);
        cur = op(cur);
    }
    detail::series_diverged("orbit");
}

template <class E>
E op_power(const ElemOp<E>& op, E a, int k) {
    for (int i = 0; i < k; ++i) a = op(a);
    return a;
}

// e^D(a) = sum_k D^k(a) / k!
template <class E>
E exp_apply(const ElemOp<E>& d, const E& a) {
    E acc = a - a;
    std::vector<E> pows = orbit(d, a);
    for (std::size_t k = 0; k < pows.size(); ++k) acc = acc + scale(inv_factorial(k), pows[k]);
    return acc;
}

// Xi(D)(a) = a - e^D(a)
template <class E>
E xi_apply(const ElemOp<E>& d, const E& a) {
    return a - exp_apply(d, a);
}

// Lambda(delta)(a) = -sum_{k>=1} delta^k(a) / k
template <class E>
E lambda_apply(const ElemOp<E>& delta, const E& a) {
    E acc = a - a;
    std::vector<E> pows = orbit(delta, a);
    for (std::size_t k = 1; k < pows.size(); ++k)
        acc = acc - scale(Rat(1) / Rat(Int(k)), pows[k]);
    return acc;
}

// The n-fold E-Leibniz identity:
// delta^n(ab) = sum_i C(n,i) delta^i(a) * delta^{n-i}((I-delta)^i(b)).
template <class E>
bool e_leibniz_holds(const ElemOp<E>& delta, const E& a, const E& b, int n) {
    E lhs = op_power<E>(delta, a * b, n);
    E rhs = lhs - lhs;
    for (int i = 0; i <= n; ++i) {
        E da = op_power<E>(delta, a, i);
        E phib = b;
        for (int k = 0; k < i; ++k) phib = phib - delta(phib); // (I - delta)^i
        E db = op_power<E>(delta, phib, n - i);
        rhs = rhs + scale(binomial(n, i), da * db);
    }
    return lhs == rhs;
}

// Configuration (s, e) for the kernel projections: D(s) = e, D(e) = 0,
// e^2 = e, s in eAe. Throws PreconditionFailed naming the first broken one.
template <class E>
void check_s_config(const ElemOp<E>& d, const E& s, const E& e) {
    if (!(d(s) == e)) throw PreconditionFailed("D(s) = e");
    if (!is_zero(d(e))) throw PreconditionFailed("D(e) = 0");
    if (!(e * e == e)) throw PreconditionFailed("e^2 = e");
    if (!(e * s * e == s)) throw PreconditionFailed("s in eAe");
}

// phi_{-s}(a) = sum_i (-1)^i / i! * D^i(a) * s^i, with s^0 = e; the mirrored
// psi_{-s} puts the s powers on the left. Both land in ker D.
template <class E>
E kernel_projection_unchecked(const ElemOp<E>& d, const E& s, const E& e, const E& a,
                              Side side) {
    std::vector<E> pows = orbit(d, a);
    E spow = e; // s^0 = e
    E acc = a - a;
    for (std::size_t i = 0; i < pows.size(); ++i) {
        Rat c = inv_factorial(i) * (i % 2 ? Rat(-1) : Rat(1));
        acc = acc + scale(c, side == Side::Left ? pows[i] * spow : spow * pows[i]);
        spow = (i == 0) ? s : spow * s;
    }
    return acc;
}

template <class E>
E kernel_projection(const ElemOp<E>& d, const E& s, const E& e, const E& a, Side side) {
    check_s_config(d, s, e);
    E result = kernel_projection_unchecked(d, s, e, a, side);
    if (!is_zero(d(result)))
        throw KernelCheckFailed("kernel projection output escaped ker D");
    return result;
}

// Reconstruction identities: a*e = sum_j 1/j! phi_{-s}(D^j(a)) s^j
// (Side::Right, matching the preimage convention) and
// e*a = sum_j 1/j! s^j psi_{-s}(D^j(a)) (Side::Left). For the property suites.
template <class E>
E reconstruct_one_sided(const ElemOp<E>& d, const E& s, const E& e, const E& a, Side side) {
    std::vector<E> pows = orbit(d, a);
    E spow = e;
    E acc = a - a;
    for (std::size_t j = 0; j < pows.size(); ++j) {
        Side proj_side = side == Side::Right ? Side::Left : Side::Right;
        E proj = kernel_projection_unchecked(d, s, e, pows[j], proj_side);
        acc = acc + scale(inv_factorial(j), side == Side::Right ? proj * spow : spow * proj);
        spow = (j == 0) ? s : spow * s;
    }
    return acc;
}

// Preimage of a*e (Side::Right) or e*a (Side::Left) under D:
//   right: sum_j 1/(j+1)! phi_{-s}(D^j(a)) s^{j+1}
//   left:  sum_j 1/(j+1)! s^{j+1} psi_{-s}(D^j(a))
template <class E>
E one_sided_preimage(const ElemOp<E>& d, const E& s, const E& e, const E& a, Side side) {
    check_s_config(d, s, e);
    std::vector<E> pows = orbit(d, a);
    E spow = s; // s^{j+1}
    E acc = a - a;
    for (std::size_t j = 0; j < pows.size(); ++j) {
        Side proj_side = side == Side::Right ? Side::Left : Side::Right;
        E proj = kernel_projection_unchecked(d, s, e, pows[j], proj_side);
        acc = acc + scale(inv_factorial(j + 1),
                          side == Side::Right ? proj * spow : spow * proj);
        spow = spow * s;
    }
    return acc;
}

// Preimage of a*e*b under D:
// sum_{i,j} 1/(i! j! (i+j+1)) phi_{-s}(D^i(a)) s^{i+j+1} psi_{-s}(D^j(b)).
template <class E>
E two_sided_preimage(const ElemOp<E>& d, const E& s, const E& e, const E& a, const E& b) {
    check_s_config(d, s, e);
    std::vector<E> apows = orbit(d, a);
    std::vector<E> bpows = orbit(d, b);
    E acc = a - a;
    for (std::size_t i = 0; i < apows.size(); ++i) {
        E phi = kernel_projection_unchecked(d, s, e, apows[i], Side::Left);
        for (std::size_t j = 0; j < bpows.size(); ++j) {
            E psi = kernel_projection_unchecked(d, s, e, bpows[j], Side::Right);
            E spow = s;
            for (std::size_t k = 0; k < i + j; ++k) spow = spow * s; // s^{i+j+1}
            Rat c = inv_factorial(i) * inv_factorial(j) / Rat(Int(i + j + 1));
            acc = acc + scale(c, phi * spow * psi);
        }
    }
    return acc;
}

// h(D) = -I - sum_{n>=2} D^{n-1}/n!, the factor with Xi(D) = D h(D).
template <class E>
E h_apply(const ElemOp<E>& d, const E& a) {
    std::vector<E> pows = orbit(d, a);
    E acc = -a;
    for (std::size_t n = 2; n <= pows.size(); ++n)
        acc = acc - scale(inv_factorial(n), pows[n - 1]);
    return acc;
}

// h(D)^{-1}(a) via the unipotent inversion of h(D) = F - G with F = -I and
// G = sum_{n>=2} D^{n-1}/n!: the inverse is sum_k (-1)^{k+1} G^k.
template <class E>
E h_inverse_apply(const ElemOp<E>& d, const E& a) {
    auto g = [&](const E& x) {
        std::vector<E> pows = orbit(d, x);
        E acc = x - x;
        for (std::size_t n = 2; n <= pows.size(); ++n)
            acc = acc + scale(inv_factorial(n), pows[n - 1]);
        return acc;
    };
    E acc = a - a;
    E gpow = a;
    for (int k = 0; k <= kSeriesStepCap; ++k) {
        if (is_zero(gpow)) return acc;
        acc = acc + scale(k % 2 ? Rat(1) : Rat(-1), gpow);
        gpow = g(gpow);
    }
    detail::series_diverged("h_inverse");
}

} // namespace dertool
