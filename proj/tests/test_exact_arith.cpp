#include <doctest.h>

#include <algorithm>

#include "dertool/quadext.hpp"
#include "dertool/rng.hpp"
#include "dertool/truncseries.hpp"
#include "dertool/unipoly.hpp"

using namespace dertool;

namespace {

UniPoly from_ints(std::initializer_list<int> cs) {
    std::vector<Rat> v;
    for (int c : cs) v.emplace_back(c);
    return UniPoly(std::move(v));
}

UniPoly random_poly(Rng& rng, int max_deg, int max_abs) {
    std::vector<Rat> v;
    int d = static_cast<int>(rng.int_in(0, max_deg));
    for (int i = 0; i <= d; ++i) v.push_back(rng.small_int(max_abs));
    return UniPoly(std::move(v));
}

} // namespace

TEST_CASE("rational parse and print round-trip") {
    CHECK(rat_to_string(rat_from_string("3/2")) == "3/2");
    CHECK(rat_to_string(rat_from_string("-4/6")) == "-2/3");
    CHECK(rat_to_string(rat_from_string("7")) == "7");
    CHECK(rat_to_string(Rat(0)) == "0");
    CHECK(rat_from_string("3/-6") == Rat(-1, 2));
    CHECK_THROWS_AS(rat_from_string("1/0"), InputError);
    CHECK_THROWS_AS(rat_from_string(""), InputError);
}

TEST_CASE("rational field laws on random triples") {
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        Rat a = rng.small_rat(20, 9), b = rng.small_rat(20, 9), c = rng.small_rat(20, 9);
        CHECK(Rat((a + b) + c) == Rat(a + (b + c)));
        CHECK(Rat((a * b) * c) == Rat(a * (b * c)));
        CHECK(Rat(a + b) == Rat(b + a));
        CHECK(Rat(a * b) == Rat(b * a));
        CHECK(Rat(a * (b + c)) == Rat(a * b + a * c));
    }
}

TEST_CASE("binomial and factorial helpers") {
    CHECK(binomial(5, 2) == Rat(10));
    CHECK(binomial(3, 5) == Rat(0));
    CHECK(factorial(6) == Int(720));
    CHECK(inv_factorial(4) == Rat(1, 24));
    CHECK(falling_factorial(5, 2) == Rat(20));
    CHECK(falling_factorial(5, 0) == Rat(1));
    CHECK(falling_factorial(2, 4) == Rat(0));
}

TEST_CASE("poly gcd on the stock examples") {
    // (t^2 - 1, t - 1) -> t - 1
    CHECK(poly_gcd(from_ints({-1, 0, 1}), from_ints({-1, 1})) == from_ints({-1, 1}));
    // gcd with zero is the monic normalization
    CHECK(poly_gcd(from_ints({0, 0, 2}), UniPoly()) == from_ints({0, 0, 1}));
    CHECK(poly_gcd(UniPoly(), UniPoly()) == UniPoly());
    // Euclid by hand: t^3 - t = (t^2 - 2t + 1)(t + 2) + (2t - 2), then
    // t^2 - 2t + 1 = (t - 1)^2 exactly, so the gcd is t - 1.
    CHECK(poly_gcd(from_ints({0, -1, 0, 1}), from_ints({1, -2, 1})) == from_ints({-1, 1}));
}

TEST_CASE("poly gcd divides both arguments exactly") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        UniPoly p = random_poly(rng, 5, 4), q = random_poly(rng, 5, 4);
        UniPoly g = poly_gcd(p, q);
        if (g.is_zero()) {
            CHECK(p.is_zero());
            CHECK(q.is_zero());
            continue;
        }
        CHECK(poly_divmod(p, g).second.is_zero());
        CHECK(poly_divmod(q, g).second.is_zero());
    }
}

TEST_CASE("squarefree part") {
    // (t - 1)^2 -> t - 1
    CHECK(squarefree_part(from_ints({1, -2, 1})) == from_ints({-1, 1}));
    // already squarefree
    CHECK(squarefree_part(from_ints({0, -1, 1})) == from_ints({0, -1, 1}));
    // t^2 (t - 3)^3 -> t(t - 3) = t^2 - 3t
    UniPoly p = from_ints({0, 0, 1}) * from_ints({-3, 1}) * from_ints({-3, 1}) * from_ints({-3, 1});
    CHECK(squarefree_part(p) == from_ints({0, -3, 1}));
    CHECK_THROWS_AS(squarefree_part(UniPoly()), ZeroPolynomial);
}

TEST_CASE("squarefree part has no repeated roots") {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        UniPoly p = random_poly(rng, 4, 3);
        if (p.is_zero()) continue;
        // Square a random factor to make repetition likely.
        UniPoly f = random_poly(rng, 2, 2);
        if (!f.is_zero()) p = p * f * f;
        UniPoly sf = squarefree_part(p);
        CHECK(poly_gcd(sf, sf.derivative()).degree() == 0);
        CHECK(poly_divmod(p, sf).second.is_zero());
    }
}

TEST_CASE("rational roots") {
    auto roots = rational_roots(from_ints({0, -1, 1})); // t^2 - t
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == Rat(0));
    CHECK(roots[1] == Rat(1));

    CHECK(rational_roots(from_ints({-2, 0, 1})).empty()); // t^2 - 2

    auto r2 = rational_roots(from_ints({1, -3, 2})); // 2t^2 - 3t + 1
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == Rat(1, 2));
    CHECK(r2[1] == Rat(1));

    CHECK_THROWS_AS(rational_roots(UniPoly()), ZeroPolynomial);
}

TEST_CASE("rational roots of random split products") {
    Rng rng(13);
    for (int i = 0; i < 60; ++i) {
        // Build prod (q_j t - p_j) from known roots p_j / q_j.
        std::vector<Rat> want;
        UniPoly p = UniPoly::constant(Rat(1));
        int k = static_cast<int>(rng.int_in(1, 4));
        for (int j = 0; j < k; ++j) {
            Rat root = rng.small_rat(4, 3);
            want.push_back(root);
            p = p * UniPoly({Rat(-numerator(root)), Rat(denominator(root))});
        }
        std::sort(want.begin(), want.end());
        want.erase(std::unique(want.begin(), want.end()), want.end());
        auto got = rational_roots(p);
        CHECK(got == want);
    }
}

TEST_CASE("extended gcd and modular inverse") {
    UniPoly m = from_ints({1, -2, 1}); // (t-1)^2
    UniPoly a = from_ints({0, 1});     // t, coprime to (t-1)^2
    auto [g, u, v] = poly_extended_gcd(a, m);
    CHECK(g == UniPoly::constant(Rat(1)));
    CHECK(u * a + v * m == UniPoly::constant(Rat(1)));
    UniPoly inv = poly_invmod(a, m);
    CHECK(poly_mulmod(inv, a, m) == UniPoly::constant(Rat(1)));
    CHECK_THROWS_AS(poly_invmod(from_ints({-1, 1}), m), NotInvertible);
}

TEST_CASE("series identity: geometric case and the full range") {
    CHECK(series_identity_check(1, 10));
    CHECK(series_identity_check(2, 30));
    CHECK(series_identity_check(5, 30));
    for (int i = 1; i <= 10; ++i) CHECK(series_identity_check(i, 30));
    CHECK_THROWS_AS(series_identity_check(0, 5), InputError);
    CHECK_THROWS_AS(series_identity_check(3, 2), InputError);
}

TEST_CASE("truncated series arithmetic") {
    TruncSeries a(3, from_ints({1, 1}));  // 1 + t
    TruncSeries b(3, from_ints({1, -1})); // 1 - t
    TruncSeries prod = a * b;
    CHECK(prod == TruncSeries(3, from_ints({1, 0, -1})));
    CHECK_FALSE(prod.is_constant(Rat(1)));
    TruncSeries c(2, from_ints({5}));
    CHECK(c.is_constant(Rat(5)));
    CHECK_THROWS_AS(a + c, DimensionMismatch);
}

TEST_CASE("quadratic extension arithmetic over t^2 - 2") {
    QuadExt a(Rat(1), Rat(1)); // 1 + theta
    QuadExt b(Rat(2), Rat(-3));
    // (1 + theta)(2 - 3 theta) = 2 - theta - 3 theta^2 = -4 - theta
    CHECK((a * b) == QuadExt(Rat(-4), Rat(-1)));
    CHECK((a * a.inverse()) == QuadExt(1));
    CHECK((a - a).is_zero());
    CHECK((a / a) == QuadExt(1));
    CHECK_THROWS_AS(QuadExt(Rat(0), Rat(0)).inverse(), NotInvertible);
}

TEST_CASE("quadratic extension rejects reducible moduli") {
    CHECK_THROWS_AS(QuadExt(Rat(1), Rat(1), UniPoly({Rat(-1), Rat(0), Rat(1)})), InputError);
    CHECK_THROWS_AS(QuadExt(Rat(1), Rat(1), UniPoly({Rat(0), Rat(1)})), InputError);
    // t^2 + 1 is fine (no rational root).
    QuadExt i(Rat(0), Rat(1), UniPoly({Rat(1), Rat(0), Rat(1)}));
    CHECK((i * i) == QuadExt(-1));
}

TEST_CASE("random quadratic extension field laws") {
    Rng rng(99);
    for (int k = 0; k < 100; ++k) {
        QuadExt a(rng.small_rat(5, 3), rng.small_rat(5, 3));
        QuadExt b(rng.small_rat(5, 3), rng.small_rat(5, 3));
        QuadExt c(rng.small_rat(5, 3), rng.small_rat(5, 3));
        CHECK((a * b) == (b * a));
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * (b + c)) == (a * b + a * c));
        if (!a.is_zero()) CHECK((a * a.inverse()) == QuadExt(1));
    }
}
