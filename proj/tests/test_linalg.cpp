#include <doctest.h>

#include "dertool/linalg.hpp"
#include "dertool/rng.hpp"

using namespace dertool;

namespace {

QMat mat2(int a, int b, int c, int d) {
    QMat m(2, 2);
    m.at(0, 0) = a; m.at(0, 1) = b;
    m.at(1, 0) = c; m.at(1, 1) = d;
    return m;
}

QMat random_mat(Rng& rng, int n, int maxabs) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = rng.small_int(maxabs);
    return m;
}

UniPoly from_ints(std::initializer_list<int> cs) {
    std::vector<Rat> v;
    for (int c : cs) v.emplace_back(c);
    return UniPoly(std::move(v));
}

} // namespace

TEST_CASE("solve_linear") {
    auto x = solve_linear(QMat::identity(2), {Rat(3), Rat(1, 2)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rat(3));
    CHECK((*x)[1] == Rat(1, 2));

    CHECK_FALSE(solve_linear(mat2(1, 1, 0, 0), {Rat(1), Rat(1)}).has_value());

    // Hand Gaussian elimination: x = -4, y = 9/2.
    auto y = solve_linear(mat2(1, 2, 3, 4), {Rat(5), Rat(6)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] == Rat(-4));
    CHECK((*y)[1] == Rat(9, 2));

    CHECK_THROWS_AS(solve_linear(mat2(1, 0, 0, 1), QVec{Rat(1)}), DimensionMismatch);
}

TEST_CASE("nullspace and image basis") {
    auto ns = nullspace(QMat(2, 2));
    REQUIRE(ns.size() == 2);
    CHECK(ns[0] == QVec{Rat(1), Rat(0)});
    CHECK(ns[1] == QVec{Rat(0), Rat(1)});

    CHECK(nullspace(QMat::identity(3)).empty());

    auto ns2 = nullspace(mat2(0, 1, 0, 0));
    REQUIRE(ns2.size() == 1);
    CHECK(ns2[0] == QVec{Rat(1), Rat(0)});

    auto im = image_basis(mat2(0, 1, 0, 0));
    REQUIRE(im.size() == 1);
    CHECK(im[0] == QVec{Rat(1), Rat(0)});
    CHECK(image_basis(QMat(2, 2)).empty());
    CHECK(image_basis(QMat::identity(2)).size() == 2);
}

TEST_CASE("rank-nullity on random matrices") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        int n = static_cast<int>(rng.int_in(1, 5));
        int m = static_cast<int>(rng.int_in(1, 5));
        QMat a(n, m);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < m; ++c) a.at(r, c) = rng.small_int(3);
        int rk = rank(a);
        CHECK(rk + static_cast<int>(nullspace(a).size()) == m);
        CHECK(static_cast<int>(image_basis(a).size()) == rk);
        // Every solution returned is a real solution.
        QVec x(m);
        for (auto& v : x) v = rng.small_int(3);
        QVec y = mat_vec(a, x);
        auto sol = solve_linear(a, y);
        REQUIRE(sol.has_value());
        CHECK(mat_vec(a, *sol) == y);
    }
}

TEST_CASE("minimal polynomial") {
    CHECK(minimal_polynomial(QMat::identity(4)) == from_ints({-1, 1}));
    CHECK(minimal_polynomial(mat2(0, 1, 0, 0)) == from_ints({0, 0, 1}));
    // Krylov by hand: A^2 = A for [[0,1],[0,1]], so t^2 - t.
    CHECK(minimal_polynomial(mat2(0, 1, 0, 1)) == from_ints({0, -1, 1}));
}

TEST_CASE("minimal polynomial annihilates and is minimal") {
    Rng rng(17);
    for (int i = 0; i < 60; ++i) {
        int n = static_cast<int>(rng.int_in(1, 5));
        QMat a = random_mat(rng, n, 3);
        UniPoly m = minimal_polynomial(a);
        CHECK(eval_poly_at(m, a).is_zero_matrix());
        CHECK(m.leading() == Rat(1));
        // No proper monic divisor annihilates: peel one rational root off
        // where possible, otherwise compare with the Krylov dimension bound.
        for (const Rat& r : rational_roots(m)) {
            UniPoly q = poly_exact_div(m, UniPoly({Rat(-r), Rat(1)}));
            CHECK_FALSE(eval_poly_at(q, a).is_zero_matrix());
        }
        CHECK(m.degree() <= n);
    }
}

TEST_CASE("jordan_chevalley on the stock examples") {
    JCDecomp u = jordan_chevalley(mat2(1, 1, 0, 1));
    CHECK(u.semisimple == QMat::identity(2));
    CHECK(u.nilpotent == mat2(0, 1, 0, 0));
    CHECK(u.nilpotency_index == 2);

    JCDecomp fixed = jordan_chevalley(mat2(0, 1, 0, 1));
    CHECK(fixed.semisimple == mat2(0, 1, 0, 1));
    CHECK(fixed.nilpotent.is_zero_matrix());
    CHECK(fixed.nilpotency_index == 0);

    JCDecomp s = jordan_chevalley(mat2(2, 1, 0, 2));
    CHECK(s.semisimple == QMat::identity(2).scaled(Rat(2)));
    CHECK(s.nilpotent == mat2(0, 1, 0, 0));

    CHECK_THROWS_AS(jordan_chevalley(QMat(2, 3)), NotSquare);
}

TEST_CASE("jordan_chevalley invariants on random matrices") {
    Rng rng(23);
    for (int i = 0; i < 40; ++i) {
        int n = static_cast<int>(rng.int_in(1, 6));
        QMat a = random_mat(rng, n, 3);
        JCDecomp jc = jordan_chevalley(a);
        CHECK(jc.semisimple + jc.nilpotent == a);
        CHECK(jc.semisimple * jc.nilpotent == jc.nilpotent * jc.semisimple);
        CHECK(eval_poly_at(jc.witness, a) == jc.semisimple);
        UniPoly ms = minimal_polynomial(jc.semisimple);
        CHECK(squarefree_part(ms) == ms);
        if (jc.nilpotency_index == 0) {
            CHECK(jc.nilpotent.is_zero_matrix());
        } else {
            CHECK(jc.nilpotent.pow(jc.nilpotency_index).is_zero_matrix());
            CHECK_FALSE(jc.nilpotent.pow(jc.nilpotency_index - 1).is_zero_matrix());
        }
    }
}

TEST_CASE("invert_shifted") {
    QMat n01 = mat2(0, 1, 0, 0);
    CHECK(invert_shifted(QMat::identity(2), n01) == mat2(1, 1, 0, 1));
    CHECK(invert_shifted(-QMat::identity(2), QMat(2, 2)) == -QMat::identity(2));
    // Finite series by hand: F^{-1} + G F^{-2} = I/2 + [[0,3],[0,0]]/4.
    QMat got = invert_shifted(QMat::identity(2).scaled(Rat(2)), mat2(0, 3, 0, 0));
    QMat want(2, 2);
    want.at(0, 0) = Rat(1, 2);
    want.at(0, 1) = Rat(3, 4);
    want.at(1, 1) = Rat(1, 2);
    CHECK(got == want);

    CHECK_THROWS_AS(invert_shifted(mat2(1, 1, 0, 1), mat2(0, 0, 1, 0)), NotCommuting);
    CHECK_THROWS_AS(invert_shifted(QMat::identity(2), QMat::identity(2)), NotNilpotent);
    CHECK_THROWS_AS(invert_shifted(QMat(2, 2), mat2(0, 1, 0, 0)), NotInvertible);
}

TEST_CASE("invert_shifted really inverts on random valid inputs") {
    Rng rng(31);
    for (int i = 0; i < 50; ++i) {
        int n = static_cast<int>(rng.int_in(1, 4));
        // F = c I and G strictly upper triangular commute.
        Rat c = rng.small_int(3);
        if (c.is_zero()) c = Rat(1);
        QMat f = QMat::identity(n).scaled(c);
        QMat g(n, n);
        for (int r = 0; r < n; ++r)
            for (int col = r + 1; col < n; ++col) g.at(r, col) = rng.small_int(3);
        QMat inv = invert_shifted(f, g);
        CHECK((f - g) * inv == QMat::identity(n));
        CHECK(inv * (f - g) == QMat::identity(n));
    }
}

TEST_CASE("solvability transfer between Q and Q(sqrt 2)") {
    CHECK(solvability_transfer_check(QMat::identity(3), {Rat(1), Rat(2), Rat(3)}));
    CHECK(solvability_transfer_check(mat2(1, 1, 0, 0), {Rat(1), Rat(1)}));
    Rng rng(37);
    for (int i = 0; i < 60; ++i) {
        QMat a(3, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) a.at(r, c) = rng.small_int(3);
        // Rank <= 2 by overwriting the last row with a combination.
        Rat u = rng.small_rat(2, 2), v = rng.small_rat(2, 2);
        for (int c = 0; c < 3; ++c) a.at(2, c) = u * a.at(0, c) + v * a.at(1, c);
        QVec y{rng.small_int(3), rng.small_int(3), rng.small_int(3)};
        CHECK(solvability_transfer_check(a, y));
    }
}

TEST_CASE("matrix power and exact inverse") {
    QMat a = mat2(1, 1, 0, 1);
    CHECK(a.pow(0) == QMat::identity(2));
    CHECK(a.pow(3) == mat2(1, 3, 0, 1));
    auto inv = inverse(mat2(1, 2, 3, 4));
    REQUIRE(inv.has_value());
    CHECK(*inv * mat2(1, 2, 3, 4) == QMat::identity(2));
    CHECK_FALSE(inverse(mat2(1, 2, 2, 4)).has_value());
}
