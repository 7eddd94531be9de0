#include "dertool/linalg.hpp"

namespace dertool {

QMat eval_poly_at(const UniPoly& p, const QMat& a) {
    if (!a.square()) throw NotSquare();
    int n = a.rows();
    QMat acc(n, n);
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * a;
        Rat c = p.coeff(i);
        if (!c.is_zero())
            for (int d = 0; d < n; ++d) acc.at(d, d) += c;
    }
    return acc;
}

std::optional<int> nilpotency_index(const QMat& a) {
    if (!a.square()) throw NotSquare();
    int n = a.rows();
    QMat p = QMat::identity(n);
    for (int k = 0; k <= n; ++k) {
        if (p.is_zero_matrix()) return k;
        if (k == n) break;
        p = p * a;
    }
    return std::nullopt;
}

UniPoly minimal_polynomial(const QMat& a) {
    if (!a.square()) throw NotSquare();
    int n = a.rows();
    if (n == 0) return UniPoly::constant(Rat(1));
    UniPoly m = UniPoly::constant(Rat(1));
    for (int s = 0; s < n && m.degree() < n; ++s) {
        // Krylov chain of the s-th standard basis vector.
        std::vector<QVec> chain;
        QVec v(n, Rat(0));
        v[s] = Rat(1);
        Subspace<Rat> span(n);
        while (span.add(v)) {
            chain.push_back(v);
            v = mat_vec(a, v);
        }
        // v = A^k e_s is the first dependent vector; express it in the chain.
        int k = static_cast<int>(chain.size());
        QMat cols(n, k);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < n; ++i) cols.at(i, j) = chain[j][i];
        auto x = solve_linear(cols, v);
        if (!x) throw InternalError("Krylov dependence must be expressible in the chain");
        std::vector<Rat> p(k + 1, Rat(0));
        p[k] = Rat(1);
        for (int j = 0; j < k; ++j) p[j] = -(*x)[j];
        m = poly_lcm(m, UniPoly(std::move(p)));
    }
    return m.monic();
}

JCDecomp jordan_chevalley(const QMat& a) {
    if (!a.square()) throw NotSquare();
    int n = a.rows();
    UniPoly m = minimal_polynomial(a);
    UniPoly mt = squarefree_part(m);

    // Newton iteration in Q[t]/(m), starting from z = t.
    UniPoly z = UniPoly::t();
    UniPoly mt_d = mt.derivative();
    int cap = 2;
    for (int d = 1; d < m.degree(); d <<= 1) ++cap; // ceil(log2(deg m)) + 2
    int steps = 0;
    while (!poly_compose_mod(mt, z, m).is_zero()) {
        if (++steps > cap)
            throw IterationBound("Jordan-Chevalley Newton iteration exceeded its bound");
        UniPoly deriv_at_z = poly_compose_mod(mt_d, z, m);
        UniPoly u = poly_invmod(deriv_at_z, m);
        z = poly_mod(z - poly_mulmod(poly_compose_mod(mt, z, m), u, m), m);
    }

    JCDecomp out{eval_poly_at(z, a), QMat(n, n), z, 0};
    out.nilpotent = a - out.semisimple;
    auto idx = nilpotency_index(out.nilpotent);
    if (!idx) throw InternalError("Jordan-Chevalley nilpotent part is not nilpotent");
    out.nilpotency_index = out.nilpotent.is_zero_matrix() ? 0 : *idx;
    return out;
}

QMat invert_shifted(const QMat& f, const QMat& g) {
    if (!f.square() || !g.square() || f.rows() != g.rows())
        throw DimensionMismatch("invert_shifted needs square matrices of equal size");
    if (!(f * g == g * f)) throw NotCommuting();
    auto nu = nilpotency_index(g);
    if (!nu) throw NotNilpotent();
    auto finv = inverse(f);
    if (!finv) throw NotInvertible();

    int terms = std::max(1, *nu); // G = 0 still contributes the k = 0 term
    QMat acc(f.rows(), f.rows());
    QMat gpow = QMat::identity(f.rows());
    QMat fpow = *finv;
    for (int k = 0; k < terms; ++k) {
        acc = acc + gpow * fpow;
        if (k + 1 < terms) {
            gpow = gpow * g;
            fpow = fpow * *finv;
        }
    }
    if (!((f - g) * acc == QMat::identity(f.rows())))
        throw InternalError("invert_shifted series failed to invert F - G");
    return acc;
}

bool solvability_transfer_check(const QMat& a, const QVec& y, const UniPoly& modulus) {
    if (a.rows() != static_cast<int>(y.size()))
        throw DimensionMismatch("right-hand side length mismatch");
    bool over_q = solve_linear(a, y).has_value();

    Matrix<QuadExt> ae(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            ae.at(i, j) = QuadExt(a.at(i, j), Rat(0), modulus);
    std::vector<QuadExt> ye(y.size(), QuadExt(0));
    for (std::size_t i = 0; i < y.size(); ++i) ye[i] = QuadExt(y[i], Rat(0), modulus);
    bool over_ext = solve_linear(ae, ye).has_value();

    return over_q == over_ext;
}

} // namespace dertool
