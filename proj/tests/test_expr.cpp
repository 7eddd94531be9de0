#include <doctest.h>

#include "dertool/expr.hpp"
#include "dertool/rng.hpp"

using namespace dertool;

namespace {

PolyAlgPtr qt() {
    static PolyAlgPtr a = poly_ext(rational_field());
    return a;
}

PolyAlgPtr t2t() {
    static PolyAlgPtr a = poly_ext(upper_triangular2());
    return a;
}

} // namespace

TEST_CASE("parse elements of T2[t]") {
    PolyExtElem x = parse_poly_elem("E11*t + 3/2*E12", t2t());
    CHECK(x.degree() == 1);
    CHECK(x.coeff(0) == scale(Rat(3, 2), basis_elem(upper_triangular2(), 1)));
    CHECK(x.coeff(1) == basis_elem(upper_triangular2(), 0));
}

TEST_CASE("expansion with powers and parentheses") {
    CHECK(parse_poly_elem("t^2 - (t+1)^2", qt()) == parse_poly_elem("-2*t - 1", qt()));
    CHECK(parse_poly_elem("(t+1)*(t-1)", qt()) == parse_poly_elem("t^2 - 1", qt()));
    CHECK(parse_poly_elem("2^3", qt()) == parse_poly_elem("8", qt()));
    CHECK(parse_poly_elem("t^0", qt()) == parse_poly_elem("1", qt()));
}

TEST_CASE("multiplication preserves order") {
    CHECK(parse_fin_elem("E12*E11", upper_triangular2()).is_zero());
    CHECK(parse_fin_elem("E11*E12", upper_triangular2()) ==
          basis_elem(upper_triangular2(), 1));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_fin_elem("E11 +", upper_triangular2()), ParseError);
    CHECK_THROWS_AS(parse_fin_elem("E13", upper_triangular2()), UnknownBasisName);
    CHECK_THROWS_AS(parse_fin_elem("E11 @ E12", upper_triangular2()), ParseError);
    CHECK_THROWS_AS(parse_fin_elem("(E11", upper_triangular2()), ParseError);
    CHECK_THROWS_AS(parse_fin_elem("t^2", upper_triangular2()), ParseError);
    CHECK_THROWS_AS(parse_fin_elem("E11^(2)", upper_triangular2()), ParseError);
    CHECK_THROWS_AS(parse_poly_elem("3/0*t", qt()), ParseError);
    CHECK_THROWS_AS(parse_poly_elem("", qt()), ParseError);
}

TEST_CASE("printing is canonical and reparses") {
    CHECK(print_elem(parse_poly_elem("t^2 - 2*t - 0", qt())) == "-2*t + t^2");
    CHECK(print_elem(zero_pelem(qt())) == "0");
    CHECK(print_elem(parse_fin_elem("E11 - E22", upper_triangular2())) == "E11 - E22");
    CHECK(print_elem(parse_poly_elem("-1/2 + t", qt())) == "-1/2 + t");
}

TEST_CASE("round trip on random elements") {
    Rng rng(401);
    for (int trial = 0; trial < 80; ++trial) {
        bool poly = rng.coin();
        if (poly) {
            auto alg = rng.coin() ? qt() : t2t();
            int deg = static_cast<int>(rng.int_in(0, 6));
            std::vector<AlgElem> cs;
            for (int k = 0; k <= deg; ++k) {
                QVec v(alg->coeff->dim());
                for (auto& x : v) x = rng.small_rat(5, 3);
                cs.emplace_back(alg->coeff, std::move(v));
            }
            PolyExtElem a(alg, std::move(cs));
            CHECK(parse_poly_elem(print_elem(a), alg) == a);
        } else {
            auto alg = rng.coin() ? AlgebraPtr(dual_numbers()) : AlgebraPtr(upper_triangular2());
            QVec v(alg->dim());
            for (auto& x : v) x = rng.small_rat(5, 3);
            AlgElem a(alg, std::move(v));
            CHECK(parse_fin_elem(print_elem(a), alg) == a);
        }
    }
}

TEST_CASE("scalar terms need a unit") {
    std::vector<QVec> table{QVec{Rat(0)}};
    auto nonunital = algebra_from_table(1, {"y"}, std::move(table), std::nullopt);
    CHECK_THROWS_AS(parse_fin_elem("1 + y", nonunital), ParseError);
    CHECK(parse_fin_elem("3*y", nonunital) == scale(Rat(3), basis_elem(nonunital, 0)));
    CHECK(parse_fin_elem("0", nonunital).is_zero());
}
