#include <doctest.h>

#include "dertool/derivcalc.hpp"
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

PolyExtElem pe(const PolyAlgPtr& alg, const std::string& text) {
    return parse_poly_elem(text, alg);
}

ElemOp<PolyExtElem> op_of(const PolyOp& op) {
    return [op](const PolyExtElem& x) { return apply_op(op, x); };
}

PolyExtElem random_pelem(Rng& rng, const PolyAlgPtr& alg, int max_deg) {
    int deg = static_cast<int>(rng.int_in(0, max_deg));
    std::vector<AlgElem> cs;
    for (int k = 0; k <= deg; ++k) {
        QVec v(alg->coeff->dim());
        for (auto& x : v) x = rng.small_int(3);
        cs.emplace_back(alg->coeff, std::move(v));
    }
    return PolyExtElem(alg, std::move(cs));
}

} // namespace

TEST_CASE("xi of the derivative is I minus the unit shift") {
    auto d = op_of(PolyOp::derivative());
    // Shift oracle: e^(d/dt) substitutes t -> t + 1.
    for (const char* text : {"t^2", "t^3 - 2*t", "5"}) {
        PolyExtElem a = pe(qt(), text);
        PolyExtElem want = a - apply_op(PolyOp::shift(Rat(1)), a);
        CHECK(xi_apply<PolyExtElem>(d, a) == want);
    }
    CHECK(xi_apply<PolyExtElem>(d, pe(qt(), "t^2")) == pe(qt(), "-2*t - 1"));
}

TEST_CASE("xi of the zero operator is zero") {
    auto zero = op_of(PolyOp::i_minus_shift(Rat(0)));
    CHECK(xi_apply<PolyExtElem>(zero, pe(qt(), "t^3 + 1")).is_zero());
}

TEST_CASE("xi of ad(E12) on T2") {
    auto t2 = upper_triangular2();
    FinOp ad = ad_operator(basis_elem(t2, 1));
    // Finite sum by hand: e^D(E11) = E11 - E12, so Xi(D)(E11) = E12.
    CHECK(apply(xi_of(ad), basis_elem(t2, 0)) == basis_elem(t2, 1));
}

TEST_CASE("lambda of I minus shift recovers the derivative") {
    auto delta = op_of(PolyOp::i_minus_shift(Rat(1)));
    // delta(t^2) = -2t - 1, delta^2(t^2) = 2, delta^3 = 0, so
    // -(delta + delta^2/2)(t^2) = 2t.
    CHECK(lambda_apply<PolyExtElem>(delta, pe(qt(), "t^2")) == pe(qt(), "2*t"));
    CHECK(lambda_apply<PolyExtElem>(op_of(PolyOp::i_minus_shift(Rat(0))),
                                    pe(qt(), "t^2"))
              .is_zero());
}

TEST_CASE("lambda inverts xi on the T2 commutator") {
    auto t2 = upper_triangular2();
    FinOp ad = ad_operator(basis_elem(t2, 1));
    FinOp back = lambda_of(xi_of(ad));
    for (int i = 0; i < 3; ++i)
        CHECK(apply(back, basis_elem(t2, i)) == apply(ad, basis_elem(t2, i)));
}

TEST_CASE("xi and lambda are mutually inverse on monomials") {
    Rng rng(101);
    auto d = op_of(PolyOp::derivative());
    auto delta = op_of(PolyOp::i_minus_shift(Rat(1)));
    for (auto alg : {qt(), t2t()}) {
        for (int trial = 0; trial < 20; ++trial) {
            PolyExtElem a = random_pelem(rng, alg, 8);
            // Lambda(Xi(d/dt)) = d/dt elementwise.
            auto xi_d = [&](const PolyExtElem& x) { return xi_apply<PolyExtElem>(d, x); };
            CHECK(lambda_apply<PolyExtElem>(xi_d, a) == apply_op(PolyOp::derivative(), a));
            // Xi(Lambda(I - shift)) = I - shift elementwise.
            auto lam = [&](const PolyExtElem& x) { return lambda_apply<PolyExtElem>(delta, x); };
            CHECK(xi_apply<PolyExtElem>(lam, a) ==
                  apply_op(PolyOp::i_minus_shift(Rat(1)), a));
        }
    }
}

TEST_CASE("exp of a derivation is multiplicative") {
    Rng rng(103);
    auto d = op_of(PolyOp::derivative());
    for (auto alg : {qt(), t2t()}) {
        for (int trial = 0; trial < 25; ++trial) {
            PolyExtElem a = random_pelem(rng, alg, 5);
            PolyExtElem b = random_pelem(rng, alg, 5);
            CHECK(exp_apply<PolyExtElem>(d, a * b) ==
                  exp_apply<PolyExtElem>(d, a) * exp_apply<PolyExtElem>(d, b));
        }
    }
}

TEST_CASE("n-fold E-Leibniz identity") {
    auto delta = op_of(PolyOp::i_minus_shift(Rat(1)));
    PolyExtElem t = pe(qt(), "t");
    CHECK(e_leibniz_holds<PolyExtElem>(delta, t, t, 0));
    CHECK(e_leibniz_holds<PolyExtElem>(delta, t, t, 1));
    CHECK(e_leibniz_holds<PolyExtElem>(delta, t, t, 2));
    Rng rng(107);
    for (auto alg : {qt(), t2t()}) {
        for (int trial = 0; trial < 25; ++trial) {
            PolyExtElem a = random_pelem(rng, alg, 5);
            PolyExtElem b = random_pelem(rng, alg, 5);
            int n = static_cast<int>(rng.int_in(0, 5));
            CHECK(e_leibniz_holds<PolyExtElem>(delta, a, b, n));
        }
    }
}

TEST_CASE("kernel projections land in the kernel") {
    auto d = op_of(PolyOp::derivative());
    PolyExtElem s = pe(qt(), "t"), e = pe(qt(), "1");

    // phi_{-t}(t^2 + 3) is evaluation at zero.
    CHECK(kernel_projection<PolyExtElem>(d, s, e, pe(qt(), "t^2 + 3"), Side::Left) ==
          pe(qt(), "3"));
    CHECK(kernel_projection<PolyExtElem>(d, s, e, e, Side::Left) == e);

    PolyExtElem s2 = pe(t2t(), "E11*t"), e2 = pe(t2t(), "E11");
    auto d2 = op_of(PolyOp::derivative());
    CHECK(kernel_projection<PolyExtElem>(d2, s2, e2, pe(t2t(), "E12*t"), Side::Left)
              .is_zero());
}

TEST_CASE("kernel projection preconditions are named") {
    auto d = op_of(PolyOp::derivative());
    PolyExtElem s = pe(qt(), "t"), e = pe(qt(), "1");
    CHECK_THROWS_WITH_AS(
        kernel_projection<PolyExtElem>(d, pe(qt(), "t^2"), e, e, Side::Left),
        "precondition failed: D(s) = e", PreconditionFailed);
    CHECK_THROWS_WITH_AS(kernel_projection<PolyExtElem>(d, s, pe(qt(), "t"), e, Side::Left),
                         "precondition failed: D(s) = e", PreconditionFailed);
    // e not idempotent: D(s) = e with s = 2t, e = 2 passes the first check.
    CHECK_THROWS_WITH_AS(
        kernel_projection<PolyExtElem>(d, pe(qt(), "2*t"), pe(qt(), "2"), e, Side::Left),
        "precondition failed: e^2 = e", PreconditionFailed);
    // s outside eAe: s = E11*t + E12 still has D(s) = E11 but fails the
    // sandwich test e*s*e = s.
    auto d2 = op_of(PolyOp::derivative());
    CHECK_THROWS_WITH_AS(
        kernel_projection<PolyExtElem>(d2, pe(t2t(), "E11*t + E22*t"),
                                       pe(t2t(), "E11"), pe(t2t(), "E12"), Side::Left),
        "precondition failed: D(s) = e", PreconditionFailed);
    CHECK_THROWS_WITH_AS(
        kernel_projection<PolyExtElem>(d2, pe(t2t(), "E11*t + E12"), pe(t2t(), "E11"),
                                       pe(t2t(), "E12"), Side::Left),
        "precondition failed: s in eAe", PreconditionFailed);
}

TEST_CASE("reconstruction identities") {
    Rng rng(109);
    struct Config { PolyAlgPtr alg; const char* s; const char* e; };
    for (const Config& cfg : {Config{qt(), "t", "1"}, Config{t2t(), "E11*t", "E11"}}) {
        auto d = op_of(PolyOp::derivative());
        PolyExtElem s = pe(cfg.alg, cfg.s), e = pe(cfg.alg, cfg.e);
        for (int trial = 0; trial < 25; ++trial) {
            PolyExtElem a = random_pelem(rng, cfg.alg, 8);
            CHECK(reconstruct_one_sided<PolyExtElem>(d, s, e, a, Side::Right) == a * e);
            CHECK(reconstruct_one_sided<PolyExtElem>(d, s, e, a, Side::Left) == e * a);
        }
    }
}

TEST_CASE("one-sided preimages") {
    auto d = op_of(PolyOp::derivative());
    PolyExtElem s = pe(qt(), "t"), e = pe(qt(), "1");

    CHECK(one_sided_preimage<PolyExtElem>(d, s, e, pe(qt(), "t"), Side::Right) ==
          pe(qt(), "1/2*t^2"));
    CHECK(one_sided_preimage<PolyExtElem>(d, s, e, e, Side::Right) == s);

    PolyExtElem s2 = pe(t2t(), "E11*t"), e2 = pe(t2t(), "E11");
    PolyExtElem a2 = pe(t2t(), "E12*t");
    PolyExtElem pre = one_sided_preimage<PolyExtElem>(d, s2, e2, a2, Side::Left);
    CHECK(pre == pe(t2t(), "1/2*E12*t^2"));
    CHECK(apply_op(PolyOp::derivative(), pre) == e2 * a2);
}

TEST_CASE("one-sided preimages map onto their targets") {
    Rng rng(113);
    struct Config { PolyAlgPtr alg; const char* s; const char* e; };
    for (const Config& cfg : {Config{qt(), "t", "1"}, Config{t2t(), "E11*t", "E11"}}) {
        auto d = op_of(PolyOp::derivative());
        PolyExtElem s = pe(cfg.alg, cfg.s), e = pe(cfg.alg, cfg.e);
        for (int trial = 0; trial < 25; ++trial) {
            PolyExtElem a = random_pelem(rng, cfg.alg, 8);
            for (Side side : {Side::Left, Side::Right}) {
                PolyExtElem target = side == Side::Right ? a * e : e * a;
                PolyExtElem pre = one_sided_preimage<PolyExtElem>(d, s, e, a, side);
                CHECK(apply_op(PolyOp::derivative(), pre) == target);
            }
        }
    }
}

TEST_CASE("two-sided preimages") {
    auto d = op_of(PolyOp::derivative());
    PolyExtElem s = pe(qt(), "t"), e = pe(qt(), "1");
    CHECK(two_sided_preimage<PolyExtElem>(d, s, e, e, e) == s);
    CHECK(two_sided_preimage<PolyExtElem>(d, s, e, pe(qt(), "t"), e) == pe(qt(), "1/2*t^2"));

    PolyExtElem s2 = pe(t2t(), "E11*t"), e2 = pe(t2t(), "E11");
    PolyExtElem pre = two_sided_preimage<PolyExtElem>(d, s2, e2, pe(t2t(), "E11"),
                                                      pe(t2t(), "E12"));
    CHECK(pre == pe(t2t(), "E12*t"));

    Rng rng(127);
    for (int trial = 0; trial < 20; ++trial) {
        PolyExtElem a = random_pelem(rng, t2t(), 6);
        PolyExtElem b = random_pelem(rng, t2t(), 6);
        PolyExtElem p = two_sided_preimage<PolyExtElem>(d, s2, e2, a, b);
        CHECK(apply_op(PolyOp::derivative(), p) == a * e2 * b);
    }
}

TEST_CASE("h inversion") {
    auto d = op_of(PolyOp::derivative());
    CHECK(h_inverse_apply<PolyExtElem>(d, pe(qt(), "1")) == pe(qt(), "-1"));
    Rng rng(131);
    for (auto alg : {qt(), t2t()}) {
        for (int trial = 0; trial < 20; ++trial) {
            PolyExtElem a = random_pelem(rng, alg, 6);
            CHECK(h_apply<PolyExtElem>(d, h_inverse_apply<PolyExtElem>(d, a)) == a);
            CHECK(h_inverse_apply<PolyExtElem>(d, h_apply<PolyExtElem>(d, a)) == a);
            // Xi(D) = D h(D) = h(D) D elementwise.
            PolyExtElem via_h = h_apply<PolyExtElem>(d, apply_op(PolyOp::derivative(), a));
            CHECK(xi_apply<PolyExtElem>(d, a) == via_h);
        }
    }
}

TEST_CASE("orbit refuses non locally nilpotent operators") {
    auto sh = op_of(PolyOp::shift(Rat(1)));
    CHECK_THROWS_AS(orbit<PolyExtElem>(sh, pe(qt(), "1")), NotLocallyNilpotent);
}
