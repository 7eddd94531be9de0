#include "dertool/unipoly.hpp"

#include <algorithm>
#include <set>

namespace dertool {

UniPoly UniPoly::monomial(int deg, const Rat& coeff) {
    if (coeff.is_zero() || deg < 0) return UniPoly();
    std::vector<Rat> c(deg + 1, Rat(0));
    c[deg] = coeff;
    return UniPoly(std::move(c));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-() const {
    std::vector<Rat> r(c_);
    for (auto& x : r) x = -x;
    return UniPoly(std::move(r));
}

UniPoly UniPoly::scaled(const Rat& r) const {
    if (r.is_zero()) return UniPoly();
    std::vector<Rat> out(c_);
    for (auto& x : out) x *= r;
    return UniPoly(std::move(out));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return UniPoly();
    return scaled(Rat(1) / leading());
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rat> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(Int(i));
    return UniPoly(std::move(r));
}

Rat UniPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::string UniPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        Rat a = coeff(i);
        if (a.is_zero()) continue;
        bool neg = a < 0;
        Rat mag = neg ? Rat(-a) : a;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        bool unit_coeff = (mag == 1) && i > 0;
        if (!unit_coeff) out += rat_to_string(mag);
        if (i > 0) {
            if (!unit_coeff) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::pair<UniPoly, UniPoly> poly_divmod(const UniPoly& num, const UniPoly& den) {
    if (den.is_zero()) throw InputError("polynomial division by zero");
    std::vector<Rat> rem(num.coeffs());
    int dd = den.degree();
    if (num.degree() < dd) return {UniPoly(), num};
    std::vector<Rat> quot(num.degree() - dd + 1, Rat(0));
    Rat lead = den.leading();
    for (int i = num.degree(); i >= dd; --i) {
        Rat q = rem[i] / lead;
        if (q.is_zero()) continue;
        quot[i - dd] = q;
        for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= q * den.coeff(j);
    }
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly poly_exact_div(const UniPoly& num, const UniPoly& den) {
    auto [q, r] = poly_divmod(num, den);
    if (!r.is_zero()) throw InternalError("polynomial division expected to be exact");
    return q;
}

UniPoly poly_gcd(UniPoly p, UniPoly q) {
    while (!q.is_zero()) {
        auto [quot, rem] = poly_divmod(p, q);
        (void)quot;
        p = std::move(q);
        q = rem.monic(); // keep coefficients small
    }
    return p.monic();
}

UniPoly poly_lcm(const UniPoly& p, const UniPoly& q) {
    if (p.is_zero() || q.is_zero()) return UniPoly();
    UniPoly g = poly_gcd(p, q);
    return poly_exact_div(p * q, g).monic();
}

std::tuple<UniPoly, UniPoly, UniPoly> poly_extended_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly r0 = a, r1 = b;
    UniPoly u0 = UniPoly::constant(Rat(1)), u1;
    UniPoly v0, v1 = UniPoly::constant(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(r0, r1);
        UniPoly u2 = u0 - q * u1;
        UniPoly v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (r0.is_zero()) return {UniPoly(), UniPoly(), UniPoly()};
    Rat lead = r0.leading();
    Rat inv = Rat(1) / lead;
    return {r0.scaled(inv), u0.scaled(inv), v0.scaled(inv)};
}

UniPoly squarefree_part(const UniPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    UniPoly g = poly_gcd(p, p.derivative());
    return poly_exact_div(p.monic(), g).monic();
}

namespace {

std::vector<Int> positive_divisors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> divs;
    for (Int i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            divs.push_back(i);
            if (i * i != n) divs.push_back(n / i);
        }
    }
    return divs;
}

} // namespace

std::vector<Rat> rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    std::set<Rat> roots;

    // Strip the power of t; 0 is a root iff the constant term vanishes.
    int low = 0;
    while (low <= p.degree() && p.coeff(low).is_zero()) ++low;
    if (low > 0) roots.insert(Rat(0));
    std::vector<Rat> rest;
    for (int i = low; i <= p.degree(); ++i) rest.push_back(p.coeff(i));
    if (rest.size() <= 1) {
        return {roots.begin(), roots.end()};
    }

    // Primitive integer form.
    Int den_lcm = 1;
    for (const auto& c : rest) den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
    std::vector<Int> ic(rest.size());
    Int content = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) {
        ic[i] = numerator(rest[i]) * (den_lcm / denominator(rest[i]));
        content = boost::multiprecision::gcd(content, ic[i]);
    }
    for (auto& c : ic) c /= content;

    UniPoly prim(std::vector<Rat>(ic.begin(), ic.end()));
    for (const Int& u : positive_divisors(ic.front())) {
        for (const Int& v : positive_divisors(ic.back())) {
            Rat cand(u, v);
            if (prim.eval(cand).is_zero()) roots.insert(cand);
            if (prim.eval(-cand).is_zero()) roots.insert(-cand);
        }
    }
    return {roots.begin(), roots.end()}; // std::set iterates ascending
}

UniPoly poly_mod(const UniPoly& p, const UniPoly& m) {
    return poly_divmod(p, m).second;
}

UniPoly poly_mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m) {
    return poly_mod(a * b, m);
}

UniPoly poly_compose_mod(const UniPoly& p, const UniPoly& z, const UniPoly& m) {
    UniPoly acc;
    for (int i = p.degree(); i >= 0; --i) {
        acc = poly_mod(acc * z + UniPoly::constant(p.coeff(i)), m);
    }
    return acc;
}

UniPoly poly_invmod(const UniPoly& a, const UniPoly& m) {
    auto [g, u, v] = poly_extended_gcd(poly_mod(a, m), m);
    (void)v;
    if (g.degree() != 0) throw NotInvertible();
    return poly_mod(u, m);
}

} // namespace dertool
