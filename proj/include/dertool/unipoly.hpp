#pragma once

#include <initializer_list>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dertool/rational.hpp"

namespace dertool {

// Univariate polynomial over Q, coefficients lowest degree first.
// Canonical form: no trailing zero coefficient; the zero polynomial is empty.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    UniPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(const Rat& r) { return UniPoly({r}); }
    static UniPoly t() { return UniPoly({Rat(0), Rat(1)}); }
    static UniPoly monomial(int deg, const Rat& coeff);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0);
    }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator-() const;
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    UniPoly scaled(const Rat& r) const;
    UniPoly monic() const; // zero stays zero
    UniPoly derivative() const;
    Rat eval(const Rat& x) const;

    std::string str(const std::string& var = "t") const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rat> c_;
};

// Quotient and remainder; divisor must be nonzero.
std::pair<UniPoly, UniPoly> poly_divmod(const UniPoly& num, const UniPoly& den);

// Exact quotient; throws InternalError if the division leaves a remainder.
UniPoly poly_exact_div(const UniPoly& num, const UniPoly& den);

// Monic gcd; poly_gcd(0,0) = 0 and poly_gcd(p,0) = monic(p).
UniPoly poly_gcd(UniPoly p, UniPoly q);

UniPoly poly_lcm(const UniPoly& p, const UniPoly& q);

// Extended Euclid: returns (g, u, v) with u*a + v*b = g and g monic (or zero).
std::tuple<UniPoly, UniPoly, UniPoly> poly_extended_gcd(const UniPoly& a, const UniPoly& b);

// Monic p / gcd(p, p'); result has no repeated roots. Throws ZeroPolynomial.
UniPoly squarefree_part(const UniPoly& p);

// All rational roots, each listed once, sorted ascending. Rational-root
// theorem on the primitive integer form. Throws ZeroPolynomial.
std::vector<Rat> rational_roots(const UniPoly& p);

// Arithmetic modulo a monic modulus m (degree >= 1).
UniPoly poly_mod(const UniPoly& p, const UniPoly& m);
UniPoly poly_mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m);
// p(z) mod m, by Horner on the coefficients of p.
UniPoly poly_compose_mod(const UniPoly& p, const UniPoly& z, const UniPoly& m);
// Inverse of a modulo m; throws NotInvertible if gcd(a, m) != 1.
UniPoly poly_invmod(const UniPoly& a, const UniPoly& m);

} // namespace dertool
