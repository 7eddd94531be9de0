#include "dertool/truncseries.hpp"

namespace dertool {

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
    if (order() != o.order()) throw DimensionMismatch("series orders differ");
    TruncSeries r(order());
    for (int i = 0; i <= order(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
    if (order() != o.order()) throw DimensionMismatch("series orders differ");
    TruncSeries r(order());
    for (int i = 0; i <= order(); ++i) {
        for (int j = 0; i + j <= order(); ++j) {
            if (j > o.order()) break;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    return r;
}

bool TruncSeries::is_constant(const Rat& r) const {
    if (c_[0] != r) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

bool series_identity_check(int i, int N) {
    if (i < 1 || N < i) throw InputError("series_identity_check requires i >= 1 and N >= i");

    TruncSeries tail(N);
    for (int n = i; n <= N + i; ++n) {
        int power = n - i;
        if (power > N) break;
        tail.coeff(power) += binomial(n, i) / Rat(n);
    }

    // (1 - t)^i as an exact polynomial, truncated.
    UniPoly one_minus_t({Rat(1), Rat(-1)});
    UniPoly pow = UniPoly::constant(Rat(1));
    for (int k = 0; k < i; ++k) pow = pow * one_minus_t;

    TruncSeries product = TruncSeries(N, pow) * tail;
    return product.is_constant(Rat(1) / Rat(i));
}

} // namespace dertool
