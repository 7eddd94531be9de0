#include "dertool/certificate.hpp"

#include "dertool/expr.hpp"

namespace dertool {

std::string to_string(Construction c) {
    switch (c) {
    case Construction::OneSidedRight: return "eqn3_3";
    case Construction::OneSidedLeft: return "eqn3_4";
    case Construction::TwoSided: return "two_sided";
    case Construction::EDerivViaH: return "ederiv_via_hD";
    case Construction::SpectralBlock: return "spectral_block";
    case Construction::UnitSurjectivity: return "unit_surjectivity";
    }
    throw InternalError("unreachable construction tag");
}

Construction construction_from_string(const std::string& s) {
    if (s == "eqn3_3") return Construction::OneSidedRight;
    if (s == "eqn3_4") return Construction::OneSidedLeft;
    if (s == "two_sided") return Construction::TwoSided;
    if (s == "ederiv_via_hD") return Construction::EDerivViaH;
    if (s == "spectral_block") return Construction::SpectralBlock;
    if (s == "unit_surjectivity") return Construction::UnitSurjectivity;
    throw InputError("unknown construction tag '" + s + "'");
}

json certificate_to_json(const Certificate& c) {
    json j;
    j["backend"] = c.backend;
    j["algebra"] = c.algebra;
    j["operator"] = c.op;
    j["construction"] = to_string(c.construction);
    j["target"] = c.target;
    j["preimage"] = c.preimage;
    j["meta"] = c.meta;
    return j;
}

Certificate certificate_from_json(const json& j) {
    Certificate c;
    c.backend = j.at("backend").get<std::string>();
    c.algebra = j.at("algebra");
    c.op = j.at("operator");
    c.construction = construction_from_string(j.at("construction").get<std::string>());
    c.target = j.at("target").get<std::string>();
    c.preimage = j.at("preimage").get<std::string>();
    if (j.contains("meta")) c.meta = j["meta"];
    return c;
}

json opdesc_matrix(const QMat& m) {
    return json{{"kind", "matrix"}, {"entries", matrix_to_json(m)}};
}

json opdesc_ad(const std::string& elem_expr) {
    return json{{"kind", "ad"}, {"x", elem_expr}};
}

json opdesc_i_endo(const QMat& phi) {
    return json{{"kind", "I-endo"}, {"entries", matrix_to_json(phi)}};
}

json opdesc_poly(const PolyOp& op) {
    switch (op.kind) {
    case PolyOp::Kind::Derivative: return json{{"kind", "d/dt"}};
    case PolyOp::Kind::Shift: return json{{"kind", "shift"}, {"c", rat_to_string(op.c)}};
    case PolyOp::Kind::Identity: return json{{"kind", "identity"}};
    case PolyOp::Kind::IMinusShift:
        return json{{"kind", "I-shift"}, {"c", rat_to_string(op.c)}};
    }
    throw InternalError("unreachable operator kind");
}

FinOp finop_from_desc(const json& desc, const AlgebraPtr& alg) {
    std::string kind = desc.at("kind").get<std::string>();
    if (kind == "matrix") return make_op(alg, matrix_from_json(desc.at("entries")));
    if (kind == "ad")
        return ad_operator(parse_fin_elem(desc.at("x").get<std::string>(), alg));
    if (kind == "I-endo")
        return i_minus(make_op(alg, matrix_from_json(desc.at("entries"))));
    throw InputError("unknown finite-dimensional operator kind '" + kind + "'");
}

PolyOp polyop_from_desc(const json& desc) {
    std::string kind = desc.at("kind").get<std::string>();
    if (kind == "d/dt") return PolyOp::derivative();
    if (kind == "shift") return PolyOp::shift(rat_from_string(desc.at("c").get<std::string>()));
    if (kind == "identity") return PolyOp::identity();
    if (kind == "I-shift")
        return PolyOp::i_minus_shift(rat_from_string(desc.at("c").get<std::string>()));
    throw InputError("unknown polynomial operator kind '" + kind + "'");
}

namespace {

void require_verified(bool ok) {
    if (!ok) throw InternalError("certificate failed its construction-time check");
}

json fin_meta(const AlgElem& s, const AlgElem& e) {
    return json{{"s", print_elem(s)}, {"e", print_elem(e)}};
}

json poly_meta(const PolyExtElem& s, const PolyExtElem& e) {
    return json{{"s", print_elem(s)},
                {"e", print_elem(e)},
                {"degree_cap", s.algebra()->degree_cap}};
}

Certificate fin_cert(const FinOp& op, const json& opdesc, Construction c,
                     const AlgElem& target, const AlgElem& preimage, json meta) {
    require_verified(apply(op, preimage) == target);
    Certificate cert;
    cert.backend = "findim";
    cert.algebra = algebra_to_json(op.alg);
    cert.op = opdesc;
    cert.construction = c;
    cert.target = print_elem(target);
    cert.preimage = print_elem(preimage);
    cert.meta = std::move(meta);
    return cert;
}

Certificate poly_cert(const PolyOp& op, const PolyAlgPtr& alg, Construction c,
                      const PolyExtElem& target, const PolyExtElem& preimage, json meta) {
    require_verified(apply_op(op, preimage) == target);
    Certificate cert;
    cert.backend = "polyext";
    cert.algebra = polyalg_to_json(alg);
    cert.op = opdesc_poly(op);
    cert.construction = c;
    cert.target = print_elem(target);
    cert.preimage = print_elem(preimage);
    cert.meta = std::move(meta);
    return cert;
}

} // namespace

Certificate certify_one_sided(const FinOp& d, const json& opdesc, const AlgElem& s,
                              const AlgElem& e, const AlgElem& a, Side side) {
    if (!nilpotency_index(d.mat)) throw NotLocallyNilpotent();
    auto op = as_elem_op(d);
    AlgElem target = side == Side::Right ? a * e : e * a;
    AlgElem pre = one_sided_preimage(op, s, e, a, side);
    return fin_cert(d, opdesc,
                    side == Side::Right ? Construction::OneSidedRight : Construction::OneSidedLeft,
                    target, pre, fin_meta(s, e));
}

Certificate certify_two_sided(const FinOp& d, const json& opdesc, const AlgElem& s,
                              const AlgElem& e, const AlgElem& a, const AlgElem& b) {
    if (!nilpotency_index(d.mat)) throw NotLocallyNilpotent();
    auto op = as_elem_op(d);
    AlgElem target = a * e * b;
    AlgElem pre = two_sided_preimage(op, s, e, a, b);
    return fin_cert(d, opdesc, Construction::TwoSided, target, pre, fin_meta(s, e));
}

Certificate certify_ederiv(const FinOp& delta, const json& opdesc, const AlgElem& v,
                           const std::optional<AlgElem>& d_witness) {
    if (!nilpotency_index(delta.mat)) throw NotLocallyNilpotent();
    FinOp d = lambda_of(delta);
    if (d_witness && !(apply(d, *d_witness) == v))
        throw PreconditionFailed("D(u) = v for the supplied witness");
    auto dop = as_elem_op(d);
    AlgElem w = h_inverse_apply(dop, v);
    auto x = solve_linear(d.mat, w.coeffs());
    if (!x) throw MathNegativeError("target is not in the image of the operator");
    AlgElem pre(delta.alg, *x);
    json meta{{"associated_derivation", matrix_to_json(d.mat)}};
    return fin_cert(delta, opdesc, Construction::EDerivViaH, v, pre, std::move(meta));
}

Certificate certify_spectral(const FinOp& delta, const json& opdesc, DeltaKind kind,
                             const AlgElem& target) {
    int n = delta.alg->dim();
    GradingDecomp g = kind == DeltaKind::Derivation
                          ? grade(delta, OpKind::Derivation)
                          : grade(i_minus(delta), OpKind::Endomorphism);
    Rat special = kind == DeltaKind::Derivation ? Rat(0) : Rat(1);

    // Coordinates of the target against the union of the block bases.
    QMat basis(n, n);
    int col = 0;
    std::vector<std::pair<int, int>> owner; // (block, index within block)
    for (std::size_t b = 0; b < g.blocks.size(); ++b)
        for (std::size_t i = 0; i < g.blocks[b].size(); ++i, ++col) {
            for (int r = 0; r < n; ++r) basis.at(r, col) = g.blocks[b][i].coeffs()[r];
            owner.emplace_back(static_cast<int>(b), static_cast<int>(i));
        }
    auto coords = solve_linear(basis, target.coeffs());
    if (!coords) throw InternalError("grading blocks failed to span the target");

    AlgElem pre = zero_elem(delta.alg);
    for (std::size_t b = 0; b < g.blocks.size(); ++b) {
        const auto& blk = g.blocks[b];
        if (blk.empty()) continue;
        int k = static_cast<int>(blk.size());
        QVec vcoords(k, Rat(0));
        for (int c2 = 0; c2 < n; ++c2)
            if (owner[c2].first == static_cast<int>(b)) vcoords[owner[c2].second] = (*coords)[c2];
        bool all_zero = true;
        for (const auto& r : vcoords) all_zero &= r.is_zero();
        if (all_zero) continue;

        // Matrix of delta restricted to the block, in block coordinates.
        QMat blk_cols(n, k);
        for (int j = 0; j < k; ++j)
            for (int r = 0; r < n; ++r) blk_cols.at(r, j) = blk[j].coeffs()[r];
        QMat restricted(k, k);
        for (int j = 0; j < k; ++j) {
            AlgElem img = apply(delta, blk[j]);
            auto c3 = solve_linear(blk_cols, img.coeffs());
            if (!c3) throw InternalError("block not invariant in spectral certify");
            for (int r = 0; r < k; ++r) restricted.at(r, j) = (*c3)[r];
        }

        QVec ucoords;
        if (g.eigenvalues[b] == special) {
            auto sol = solve_linear(restricted, vcoords);
            if (!sol)
                throw MathNegativeError("target's special-block component is not in the image");
            ucoords = *sol;
        } else {
            // On a non-special block delta = scalar + nilpotent, inverted by
            // the finite unipotent series.
            Rat lam = kind == DeltaKind::Derivation ? g.eigenvalues[b]
                                                    : Rat(1) - g.eigenvalues[b];
            QMat f = QMat::identity(k).scaled(lam);
            QMat nil = restricted - f;
            QMat inv = invert_shifted(f, -nil); // (F - G)^{-1} with G = -nil
            ucoords = mat_vec(inv, vcoords);
        }
        QVec lifted = mat_vec(blk_cols, ucoords);
        pre = pre + AlgElem(delta.alg, std::move(lifted));
    }
    json meta{{"eigenvalues", json::array()}};
    for (const auto& l : g.eigenvalues) meta["eigenvalues"].push_back(rat_to_string(l));
    return fin_cert(delta, opdesc, Construction::SpectralBlock, target, pre, std::move(meta));
}

Certificate certify_unit_surjectivity(const FinOp& delta, const json& opdesc) {
    if (!delta.alg->unit()) throw NotUnital();
    auto u = solve_linear(delta.mat, *delta.alg->unit());
    if (!u) throw MathNegativeError("the unit is not in the image");
    return fin_cert(delta, opdesc, Construction::UnitSurjectivity, unit_elem(delta.alg),
                    AlgElem(delta.alg, *u), json::object());
}

Certificate certify_one_sided(const PolyOp& d, const PolyAlgPtr& alg, const PolyExtElem& s,
                              const PolyExtElem& e, const PolyExtElem& a, Side side) {
    auto op = [&d](const PolyExtElem& x) { return apply_op(d, x); };
    PolyExtElem target = side == Side::Right ? a * e : e * a;
    PolyExtElem pre = one_sided_preimage<PolyExtElem>(op, s, e, a, side);
    return poly_cert(d, alg,
                     side == Side::Right ? Construction::OneSidedRight
                                         : Construction::OneSidedLeft,
                     target, pre, poly_meta(s, e));
}

Certificate certify_two_sided(const PolyOp& d, const PolyAlgPtr& alg, const PolyExtElem& s,
                              const PolyExtElem& e, const PolyExtElem& a, const PolyExtElem& b) {
    auto op = [&d](const PolyExtElem& x) { return apply_op(d, x); };
    PolyExtElem target = a * e * b;
    PolyExtElem pre = two_sided_preimage<PolyExtElem>(op, s, e, a, b);
    return poly_cert(d, alg, Construction::TwoSided, target, pre, poly_meta(s, e));
}

Certificate certify_ederiv(const PolyOp& delta, const PolyAlgPtr& alg, const PolyExtElem& v,
                           const std::optional<PolyExtElem>& d_witness) {
    if (delta.kind != PolyOp::Kind::IMinusShift)
        throw UnsupportedOperator("E-derivation certificates need an I-shift operator");
    if (delta.c.is_zero()) {
        if (!v.is_zero()) throw MathNegativeError("zero operator only reaches zero");
        return poly_cert(delta, alg, Construction::EDerivViaH, v, zero_pelem(alg),
                         json::object());
    }
    // The associated derivation is c * d/dt.
    auto dop = [&](const PolyExtElem& x) {
        return scale(delta.c, apply_op(PolyOp::derivative(), x));
    };
    if (d_witness && !(dop(*d_witness) == v))
        throw PreconditionFailed("D(u) = v for the supplied witness");
    PolyExtElem w = h_inverse_apply<PolyExtElem>(dop, v);
    auto x = solve_slice(PolyOp::derivative(), scale(Rat(1) / delta.c, w));
    if (!x) throw InternalError("antiderivative cannot fail");
    json meta{{"associated_derivation", "c*d/dt"}, {"c", rat_to_string(delta.c)}};
    return poly_cert(delta, alg, Construction::EDerivViaH, v, *x, std::move(meta));
}

Certificate certify_unit_surjectivity(const PolyOp& delta, const PolyAlgPtr& alg) {
    PolySurjReport rep = surjectivity_analysis(delta, alg);
    if (!rep.surjective) throw MathNegativeError("the unit is not in the image");
    return poly_cert(delta, alg, Construction::UnitSurjectivity,
                     const_pelem(alg, unit_elem(alg->coeff)), *rep.preimage_of_one,
                     json::object());
}

VerifyResult verify_certificate(const json& cert_json) {
    Certificate c = certificate_from_json(cert_json);
    if (c.backend == "findim") {
        AlgebraPtr alg = algebra_from_json(c.algebra);
        FinOp op = finop_from_desc(c.op, alg);
        AlgElem target = parse_fin_elem(c.target, alg);
        AlgElem preimage = parse_fin_elem(c.preimage, alg);
        AlgElem got = apply(op, preimage);
        if (got == target) return {true, "verified"};
        return {false, "operator(preimage) = " + print_elem(got) + ", expected " + c.target};
    }
    if (c.backend == "polyext") {
        PolyAlgPtr alg = polyalg_from_json(c.algebra);
        PolyOp op = polyop_from_desc(c.op);
        PolyExtElem target = parse_poly_elem(c.target, alg);
        PolyExtElem preimage = parse_poly_elem(c.preimage, alg);
        PolyExtElem got = apply_op(op, preimage);
        if (got == target) return {true, "verified"};
        return {false, "operator(preimage) = " + print_elem(got) + ", expected " + c.target};
    }
    throw InputError("unknown certificate backend '" + c.backend + "'");
}

} // namespace dertool
