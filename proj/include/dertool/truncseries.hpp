#pragma once

#include <vector>

#include "dertool/rational.hpp"
#include "dertool/unipoly.hpp"

namespace dertool {

// Formal power series truncated at a fixed order N: exactly the
// coefficients of degrees 0..N, nothing adaptive.
class TruncSeries {
public:
    explicit TruncSeries(int order) : c_(order + 1, Rat(0)) {
        if (order < 0) throw InputError("truncation order must be >= 0");
    }
    TruncSeries(int order, const UniPoly& p) : TruncSeries(order) {
        for (int i = 0; i <= order; ++i) c_[i] = p.coeff(i);
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rat& coeff(int i) const { return c_[i]; }
    Rat& coeff(int i) { return c_[i]; }

    TruncSeries operator+(const TruncSeries& o) const;
    TruncSeries operator*(const TruncSeries& o) const; // truncated convolution
    bool operator==(const TruncSeries& o) const { return c_ == o.c_; }

    bool is_constant(const Rat& r) const;

private:
    std::vector<Rat> c_;
};

// Checks the series identity behind the claim S_i(y) = y/i: the product
// (1-t)^i * sum_{n=i}^{N+i} (1/n) C(n,i) t^{n-i} must equal the constant
// series 1/i through order N. Requires i >= 1 and N >= i.
bool series_identity_check(int i, int N);

} // namespace dertool
