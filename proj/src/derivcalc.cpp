#include "dertool/derivcalc.hpp"

#include <algorithm>

#include "dertool/expr.hpp"
#include "dertool/rng.hpp"

namespace dertool {

FinOp make_op(AlgebraPtr alg, QMat mat) {
    if (!alg) throw InputError("operator needs an algebra");
    if (mat.rows() != alg->dim() || mat.cols() != alg->dim())
        throw DimensionMismatch("operator matrix must be dim x dim");
    return FinOp{std::move(alg), std::move(mat)};
}

FinOp identity_op(const AlgebraPtr& alg) {
    return FinOp{alg, QMat::identity(alg->dim())};
}

FinOp ad_operator(const AlgElem& x) {
    const auto& alg = x.algebra();
    return make_op(alg, mul_operator_matrix(x, Side::Left) - mul_operator_matrix(x, Side::Right));
}

FinOp i_minus(const FinOp& op) {
    return FinOp{op.alg, QMat::identity(op.alg->dim()) - op.mat};
}

AlgElem apply(const FinOp& op, const AlgElem& a) {
    if (a.algebra() != op.alg) throw AlgebraMismatch();
    return AlgElem(op.alg, mat_vec(op.mat, a.coeffs()));
}

ElemOp<AlgElem> as_elem_op(const FinOp& op) {
    return [op](const AlgElem& a) { return apply(op, a); };
}

namespace {

// Law checks shared by both backends; both sides of each law are bilinear
// in (a, b), so basis pairs (finite-dim) or sampled pairs (poly) decide.
template <class E>
struct LawScan {
    bool derivation = true;
    bool endomorphism = true;
    bool ederivation = true;
    std::optional<std::pair<std::string, std::string>> first_derivation_failure;

    void feed(const ElemOp<E>& t, const E& a, const E& b) {
        E ab = a * b;
        E tab = t(ab);
        E ta = t(a), tb = t(b);
        if (derivation && !(tab == ta * b + a * tb)) {
            derivation = false;
            if (!first_derivation_failure)
                first_derivation_failure = {print_elem(a), print_elem(b)};
        }
        if (endomorphism && !(tab == ta * tb)) endomorphism = false;
        // E-derivation law (the product rule with the correction term),
        // equivalently: I - T is an endomorphism.
        if (ederivation && !(tab == ta * b + a * tb - ta * tb)) ederivation = false;
    }
};

} // namespace

OpClass classify(const FinOp& op) {
    LawScan<AlgElem> scan;
    int n = op.alg->dim();
    auto t = as_elem_op(op);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            scan.feed(t, basis_elem(op.alg, i), basis_elem(op.alg, j));

    OpClass out;
    out.is_derivation = scan.derivation;
    out.is_endomorphism = scan.endomorphism;
    out.is_ederivation = scan.ederivation;
    out.failure_witness = scan.first_derivation_failure;
    out.sampled = false;

    auto idx = nilpotency_index(op.mat);
    if (idx) {
        out.locally_nilpotent = OpClass::LN::Yes;
        out.ln_witness = "operator matrix is nilpotent of index " + std::to_string(*idx);
    } else {
        out.locally_nilpotent = OpClass::LN::No;
        QMat pn = op.mat.pow(n);
        for (int i = 0; i < n; ++i) {
            bool nonzero = false;
            for (int r = 0; r < n; ++r) nonzero |= !pn.at(r, i).is_zero();
            if (nonzero) {
                // A^n b_i != 0 rules out A^m b_i = 0 for every m, since the
                // Krylov annihilator of b_i would then divide t^n.
                out.ln_witness = print_elem(basis_elem(op.alg, i));
                break;
            }
        }
    }
    return out;
}

OpClass classify(const PolyOp& op, const PolyAlgPtr& alg, std::uint64_t seed, int sample_pairs) {
    LawScan<PolyExtElem> scan;
    auto t = [&](const PolyExtElem& a) { return apply_op(op, a); };

    std::vector<PolyExtElem> gens;
    for (int i = 0; i < alg->coeff->dim(); ++i)
        gens.push_back(const_pelem(alg, basis_elem(alg->coeff, i)));
    if (alg->coeff->unit()) gens.push_back(t_pelem(alg));
    for (const auto& a : gens)
        for (const auto& b : gens) scan.feed(t, a, b);

    Rng rng(seed);
    auto random_elem = [&]() {
        int deg = static_cast<int>(rng.int_in(0, 6));
        std::vector<AlgElem> c;
        for (int k = 0; k <= deg; ++k) {
            QVec v(alg->coeff->dim());
            for (auto& x : v) x = rng.small_int(3);
            c.emplace_back(alg->coeff, std::move(v));
        }
        return PolyExtElem(alg, std::move(c));
    };
    for (int i = 0; i < sample_pairs; ++i) scan.feed(t, random_elem(), random_elem());

    OpClass out;
    out.is_derivation = scan.derivation;
    out.is_endomorphism = scan.endomorphism;
    out.is_ederivation = scan.ederivation;
    out.failure_witness = scan.first_derivation_failure;
    out.sampled = true;

    switch (op.kind) {
    case PolyOp::Kind::Derivative:
        out.locally_nilpotent = OpClass::LN::Yes;
        out.ln_witness = "strictly decreases t-degree";
        break;
    case PolyOp::Kind::IMinusShift:
        out.locally_nilpotent = OpClass::LN::Yes;
        out.ln_witness = op.c.is_zero() ? "zero operator" : "strictly decreases t-degree";
        break;
    case PolyOp::Kind::Shift:
    case PolyOp::Kind::Identity:
        out.locally_nilpotent = OpClass::LN::No;
        out.ln_witness = print_elem(const_pelem(alg, basis_elem(alg->coeff, 0)));
        break;
    }
    return out;
}

FinOp xi_of(const FinOp& d) {
    auto idx = nilpotency_index(d.mat);
    if (!idx) throw NotLocallyNilpotent();
    int n = d.alg->dim();
    QMat expd(n, n);
    QMat pw = QMat::identity(n);
    for (int k = 0; k < std::max(1, *idx); ++k) {
        expd = expd + pw.scaled(inv_factorial(k));
        pw = pw * d.mat;
    }
    return FinOp{d.alg, QMat::identity(n) - expd};
}

FinOp lambda_of(const FinOp& delta) {
    auto idx = nilpotency_index(delta.mat);
    if (!idx) throw NotLocallyNilpotent();
    int n = delta.alg->dim();
    QMat acc(n, n);
    QMat pw = delta.mat;
    for (int k = 1; k < std::max(1, *idx); ++k) {
        acc = acc - pw.scaled(Rat(1) / Rat(k));
        pw = pw * delta.mat;
    }
    return FinOp{delta.alg, acc};
}

Subspace<Rat> kernel_subspace(const FinOp& op) {
    Subspace<Rat> s(op.alg->dim());
    for (auto& v : nullspace(op.mat)) s.add(std::move(v));
    return s;
}

Subspace<Rat> image_subspace(const FinOp& op) {
    Subspace<Rat> s(op.alg->dim());
    for (auto& v : image_basis(op.mat)) s.add(std::move(v));
    return s;
}

GradingDecomp grade(const FinOp& op, OpKind kind) {
    int n = op.alg->dim();
    JCDecomp jc = jordan_chevalley(op.mat);
    UniPoly ms = squarefree_part(minimal_polynomial(op.mat));
    std::vector<Rat> roots = rational_roots(ms);
    UniPoly split = UniPoly::constant(Rat(1));
    for (const Rat& r : roots) split = split * UniPoly({-r, Rat(1)});
    if (!(split == ms)) {
        UniPoly leftover = poly_exact_div(ms, split);
        throw NotSplit(leftover.str());
    }

    GradingDecomp g;
    g.eigenvalues = roots;
    g.semisimple = jc.semisimple;
    g.nilpotent = jc.nilpotent;
    g.witness = jc.witness;

    int total = 0;
    Subspace<Rat> all(n);
    for (const Rat& lam : roots) {
        QMat shifted = jc.semisimple;
        for (int i = 0; i < n; ++i) shifted.at(i, i) -= lam;
        std::vector<AlgElem> block;
        for (auto& v : nullspace(shifted)) {
            all.add(v);
            block.emplace_back(op.alg, std::move(v));
        }
        total += static_cast<int>(block.size());
        g.blocks.push_back(std::move(block));
    }
    if (total != n || all.dim() != n)
        throw GradingViolation("eigenspaces do not span the algebra");

    // T-invariance of each block and the product rule on block-basis pairs.
    std::vector<Subspace<Rat>> spans;
    for (const auto& blk : g.blocks) {
        Subspace<Rat> s(n);
        for (const auto& v : blk) s.add(v.coeffs());
        spans.push_back(std::move(s));
    }
    for (std::size_t b = 0; b < g.blocks.size(); ++b)
        for (const auto& v : g.blocks[b])
            if (!spans[b].contains(apply(op, v).coeffs()))
                throw GradingViolation("block is not invariant under the operator");

    for (std::size_t p = 0; p < g.blocks.size(); ++p) {
        for (std::size_t q = 0; q < g.blocks.size(); ++q) {
            Rat target = kind == OpKind::Derivation
                             ? Rat(g.eigenvalues[p] + g.eigenvalues[q])
                             : Rat(g.eigenvalues[p] * g.eigenvalues[q]);
            auto it = std::find(g.eigenvalues.begin(), g.eigenvalues.end(), target);
            for (const auto& u : g.blocks[p]) {
                for (const auto& v : g.blocks[q]) {
                    AlgElem w = u * v;
                    bool ok = it == g.eigenvalues.end()
                                  ? w.is_zero()
                                  : spans[it - g.eigenvalues.begin()].contains(w.coeffs());
                    if (!ok) throw GradingViolation("product rule failed on a block pair");
                }
            }
        }
    }

    if (kind == OpKind::Endomorphism) {
        for (const Rat& lam : g.eigenvalues) {
            if (lam.is_zero() || lam == 1) continue;
            Rat inv = Rat(1) / lam;
            bool has = std::find(g.eigenvalues.begin(), g.eigenvalues.end(), inv) !=
                       g.eigenvalues.end();
            if (has && lam < inv) g.reciprocal_pairs.emplace_back(lam, inv);
            if (has && lam == inv) g.reciprocal_pairs.emplace_back(lam, inv); // lam = -1
        }
    }
    return g;
}

ImageDecomp image_decomposition(const FinOp& op, DeltaKind kind) {
    int n = op.alg->dim();
    Subspace<Rat> direct = image_subspace(op);

    GradingDecomp g = kind == DeltaKind::Derivation
                          ? grade(op, OpKind::Derivation)
                          : grade(i_minus(op), OpKind::Endomorphism);
    Rat special = kind == DeltaKind::Derivation ? Rat(0) : Rat(1);

    Subspace<Rat> structured(n);
    Subspace<Rat> nilpart(n);
    for (std::size_t b = 0; b < g.blocks.size(); ++b) {
        if (g.eigenvalues[b] == special) {
            // On the special block the operator acts as +/- the nilpotent
            // part of the graded operator, so its image there is Nil(block).
            for (const auto& v : g.blocks[b]) {
                QVec w = mat_vec(g.nilpotent, v.coeffs());
                nilpart.add(w);
                structured.add(std::move(w));
            }
        } else {
            for (const auto& v : g.blocks[b]) structured.add(v.coeffs());
        }
    }
    if (!(structured == direct))
        throw StructureMismatch("structured image differs from the computed image");

    ImageDecomp out{{}, std::move(g), {}};
    for (const auto& v : direct.basis()) out.image.emplace_back(op.alg, v);
    for (const auto& v : nilpart.basis()) out.nilpart_image.emplace_back(op.alg, v);
    return out;
}

UnitOrbit unit_orbit(const FinOp& phi) {
    if (!phi.alg->unit()) throw NotUnital();
    OpClass cls = classify(phi);
    if (!cls.is_endomorphism) throw NotEndomorphism();

    int n = phi.alg->dim();
    UnitOrbit out;
    out.elems.push_back(unit_elem(phi.alg));
    for (int i = 1; i <= n + 1; ++i) {
        AlgElem next = apply(phi, out.elems.back());
        bool repeated = next == out.elems.back();
        out.elems.push_back(next);
        if (repeated) {
            out.d = std::max(1, i - 1);
            break;
        }
        if (next.is_zero()) {
            out.d = i;
            break;
        }
        if (i == n + 1) throw NoStabilization();
    }
    out.elems.resize(out.d + 1);
    out.stable = out.elems.back();
    out.nilpotent_branch = out.stable.is_zero();

    for (std::size_t i = 0; i < out.elems.size(); ++i)
        for (std::size_t j = i; j < out.elems.size(); ++j) {
            const AlgElem& ei = out.elems[i];
            const AlgElem& ej = out.elems[j];
            if (!(ei * ej == ej) || !(ej * ei == ej))
                throw InternalError("unit orbit product identity failed");
        }
    return out;
}

SurjReport surjectivity_analysis(const FinOp& delta, DeltaKind kind) {
    if (!delta.alg->unit()) throw NotUnital();
    int n = delta.alg->dim();
    SurjReport rep;
    rep.dim = n;
    rep.route = kind == DeltaKind::Derivation ? "derivation" : "ederivation";

    auto u = solve_linear(delta.mat, *delta.alg->unit());
    rep.rank = rank(delta.mat);
    if (!u) {
        rep.verdict = SurjReport::Verdict::NotInImage;
        return rep;
    }
    if (rep.rank != n)
        throw RankMismatch("unit is in the image but the operator is not surjective");

    rep.verdict = SurjReport::Verdict::Surjective;
    rep.preimage_of_one = AlgElem(delta.alg, *u);

    if (kind == DeltaKind::EDerivation) {
        FinOp phi = i_minus(delta);
        rep.orbit = unit_orbit(phi);
        int d = rep.orbit->d;
        // delta_d = I - phi^d sends e_d * u / d to e_d.
        FinOp delta_d{delta.alg, QMat::identity(n) - phi.mat.pow(d)};
        AlgElem x = scale(Rat(1) / Rat(d), rep.orbit->stable * *rep.preimage_of_one);
        if (!(apply(delta_d, x) == rep.orbit->stable))
            throw InternalError("stable idempotent chain failed to verify");
        rep.ed_chain_preimage = x;

        Subspace<Rat> span(n);
        for (const auto& v : one_sided_span(rep.orbit->stable, Side::Right)) span.add(v.coeffs());
        AlgElem complement = unit_elem(delta.alg) - rep.orbit->stable;
        for (const auto& v : one_sided_span(complement, Side::Right)) span.add(v.coeffs());
        if (span.dim() != n)
            throw InternalError("e_d A + (1 - e_d) A failed to cover the algebra");
        rep.decomposition_checked = true;
    }
    return rep;
}

PolySurjReport surjectivity_analysis(const PolyOp& delta, const PolyAlgPtr& alg) {
    PolySurjReport rep;
    PolyExtElem one = const_pelem(alg, unit_elem(alg->coeff));
    if (delta.kind == PolyOp::Kind::Identity) {
        rep.surjective = true;
        rep.preimage_of_one = one;
        return rep;
    }
    auto u = solve_slice(delta, one);
    rep.surjective = u.has_value();
    if (u) rep.preimage_of_one = std::move(*u);
    return rep;
}

} // namespace dertool
