#include "dertool/rational.hpp"

namespace dertool {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw InputError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        return make_rat(num, den);
    } catch (const std::runtime_error& e) {
        throw InputError("bad rational literal '" + s + "': " + e.what());
    }
}

std::string rat_to_string(const Rat& r) {
    return r.str(); // cpp_rational prints "p/q", or "p" when q = 1
}

Int factorial(unsigned n) {
    Int f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

Rat inv_factorial(unsigned n) { return Rat(Int(1), factorial(n)); }

Rat binomial(unsigned n, unsigned k) {
    if (k > n) return Rat(0);
    Int num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= Int(n - i);
        den *= Int(i + 1);
    }
    return Rat(num, den);
}

Rat falling_factorial(unsigned k, unsigned i) {
    Int p = 1;
    for (unsigned j = 0; j < i; ++j) {
        if (j > k) return Rat(0);
        p *= Int(k) - Int(j);
    }
    return Rat(p);
}

} // namespace dertool
