#pragma once

#include <string>
#include <utility>

#include "dertool/rational.hpp"
#include "dertool/unipoly.hpp"

namespace dertool {

// Element a + b*theta of the quadratic extension Q[t]/(modulus), where the
// modulus is a fixed monic degree-2 polynomial irreducible over Q.
// The default modulus is t^2 - 2.
class QuadExt {
public:
    QuadExt() : a_(0), b_(0), u_(0), v_(-2) {}
    QuadExt(int n) : a_(n), b_(0), u_(0), v_(-2) {} // NOLINT: scalar promotion
    QuadExt(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)), u_(0), v_(-2) {}

    // Modulus t^2 + u*t + v, validated monic and irreducible.
    QuadExt(Rat a, Rat b, const UniPoly& modulus)
        : a_(std::move(a)), b_(std::move(b)) {
        if (modulus.degree() != 2 || modulus.leading() != 1)
            throw InputError("quadratic extension modulus must be monic of degree 2");
        if (!rational_roots(modulus).empty())
            throw InputError("quadratic extension modulus must be irreducible over Q");
        u_ = modulus.coeff(1);
        v_ = modulus.coeff(0);
    }

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    UniPoly modulus() const { return UniPoly({v_, u_, Rat(1)}); }
    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    QuadExt operator+(const QuadExt& o) const {
        auto [x, y] = align(o);
        return with_same_mod(x.a_ + y.a_, x.b_ + y.b_, x);
    }
    QuadExt operator-(const QuadExt& o) const {
        auto [x, y] = align(o);
        return with_same_mod(x.a_ - y.a_, x.b_ - y.b_, x);
    }
    QuadExt operator-() const { return with_same_mod(-a_, -b_, *this); }

    // theta^2 = -u*theta - v
    QuadExt operator*(const QuadExt& o) const {
        auto [x, y] = align(o);
        Rat cross = x.a_ * y.b_ + x.b_ * y.a_;
        Rat sq = x.b_ * y.b_;
        return with_same_mod(x.a_ * y.a_ - x.v_ * sq, cross - x.u_ * sq, x);
    }

    QuadExt inverse() const {
        // Multiply by the conjugate a + b*(-u - theta); the norm is rational
        // and nonzero because the modulus is irreducible.
        Rat norm = a_ * a_ - a_ * b_ * u_ + b_ * b_ * v_;
        if (norm.is_zero()) throw NotInvertible();
        return with_same_mod((a_ - b_ * u_) / norm, -b_ / norm, *this);
    }
    QuadExt operator/(const QuadExt& o) const { return *this * o.inverse(); }

    bool operator==(const QuadExt& o) const {
        if (!same_mod(o) && !is_rational() && !o.is_rational()) throw AlgebraMismatch();
        return a_ == o.a_ && b_ == o.b_;
    }

    std::string str() const {
        if (b_.is_zero()) return rat_to_string(a_);
        std::string s = rat_to_string(a_) + (b_ < 0 ? " - " : " + ");
        Rat mag = b_ < 0 ? Rat(-b_) : b_;
        if (mag != 1) s += rat_to_string(mag) + "*";
        return s + "theta";
    }

private:
    bool same_mod(const QuadExt& o) const { return u_ == o.u_ && v_ == o.v_; }

    // Purely rational values (b = 0) coerce to the other operand's modulus,
    // so that scalar literals like QuadExt(1) mix with any session modulus.
    std::pair<QuadExt, QuadExt> align(const QuadExt& o) const {
        if (same_mod(o)) return {*this, o};
        if (is_rational()) {
            QuadExt me = *this;
            me.u_ = o.u_; me.v_ = o.v_;
            return {me, o};
        }
        if (o.is_rational()) {
            QuadExt other = o;
            other.u_ = u_; other.v_ = v_;
            return {*this, other};
        }
        throw AlgebraMismatch();
    }

    static QuadExt with_same_mod(Rat a, Rat b, const QuadExt& like) {
        QuadExt r;
        r.a_ = std::move(a);
        r.b_ = std::move(b);
        r.u_ = like.u_;
        r.v_ = like.v_;
        return r;
    }

    Rat a_, b_;
    Rat u_, v_; // modulus t^2 + u*t + v
};

// Rational values coerce to any modulus in arithmetic, so plain literals do.
inline QuadExt zero_like(const QuadExt&) { return QuadExt(0); }
inline QuadExt one_like(const QuadExt&) { return QuadExt(1); }
inline bool is_zero(const QuadExt& x) { return x.is_zero(); }

} // namespace dertool
