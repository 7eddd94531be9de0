#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "dertool/errors.hpp"

namespace dertool {

// Exact scalars of the base field Q. Arbitrary-precision rationals kept in
// canonical form (reduced, positive denominator) by the backing type.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p/q" or "p"; normalizes sign so the denominator stays positive.
Rat rat_from_string(const std::string& s);

// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string rat_to_string(const Rat& r);

inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw InputError("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rat(num, den);
}

Int factorial(unsigned n);
Rat inv_factorial(unsigned n);
Rat binomial(unsigned n, unsigned k);

// k(k-1)...(k-i+1); the empty product (i = 0) is 1.
Rat falling_factorial(unsigned k, unsigned i);

inline Rat zero_like(const Rat&) { return Rat(0); }
inline Rat one_like(const Rat&) { return Rat(1); }
inline bool is_zero(const Rat& r) { return r.is_zero(); }

} // namespace dertool
