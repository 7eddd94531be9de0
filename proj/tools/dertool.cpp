#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "dertool/certificate.hpp"
#include "dertool/expr.hpp"
#include "dertool/hunter.hpp"
#include "dertool/session.hpp"
#include "dertool/truncseries.hpp"

namespace {

using namespace dertool;

int g_exit = 0;

struct BackendSel {
    bool poly = false;
    AlgebraPtr fin;   // coefficient algebra when poly
    PolyAlgPtr palg;
};

BackendSel load_backend(const std::string& spec, bool polyext, int cap) {
    BackendSel b;
    if (spec.rfind("builtin:", 0) != 0) {
        json j = load_json_file(spec);
        if (j.contains("coeff_algebra")) {
            b.poly = true;
            b.palg = polyalg_from_json(j);
            b.fin = b.palg->coeff;
            return b;
        }
        b.fin = algebra_from_json(j);
    } else {
        b.fin = load_algebra_spec(spec);
    }
    if (polyext) {
        b.poly = true;
        b.palg = poly_ext(b.fin, cap);
    }
    return b;
}

struct OpSel {
    bool poly = false;
    FinOp fop;
    PolyOp pop;
    json desc;
};

// Operator mini-language: "d/dt", "I-shift(c)", "shift(c)", "identity",
// "matrix:<file>", "ad(<element>)", "I-endo:<file>".
OpSel parse_opspec(const std::string& s, const BackendSel& backend) {
    OpSel op;
    auto paren_arg = [&](std::size_t open) {
        if (s.back() != ')') throw InputError("expected ')' at the end of '" + s + "'");
        return s.substr(open + 1, s.size() - open - 2);
    };
    if (s == "d/dt") {
        if (!backend.poly) throw InputError("d/dt needs the polynomial backend");
        op.poly = true;
        op.pop = PolyOp::derivative();
    } else if (s.rfind("I-shift(", 0) == 0) {
        if (!backend.poly) throw InputError("I-shift needs the polynomial backend");
        op.poly = true;
        op.pop = PolyOp::i_minus_shift(rat_from_string(paren_arg(7)));
    } else if (s.rfind("shift(", 0) == 0) {
        if (!backend.poly) throw InputError("shift needs the polynomial backend");
        op.poly = true;
        op.pop = PolyOp::shift(rat_from_string(paren_arg(5)));
    } else if (s == "identity") {
        if (backend.poly) {
            op.poly = true;
            op.pop = PolyOp::identity();
        } else {
            op.fop = identity_op(backend.fin);
            op.desc = opdesc_matrix(op.fop.mat);
            return op;
        }
    } else if (s.rfind("matrix:", 0) == 0) {
        if (backend.poly) throw InputError("matrix operators act on the finite-dimensional backend");
        op.fop = make_op(backend.fin, matrix_from_json(load_json_file(s.substr(7))));
        op.desc = opdesc_matrix(op.fop.mat);
        return op;
    } else if (s.rfind("ad(", 0) == 0) {
        if (backend.poly) throw InputError("ad operators act on the finite-dimensional backend");
        std::string expr = paren_arg(2);
        op.fop = ad_operator(parse_fin_elem(expr, backend.fin));
        op.desc = opdesc_ad(expr);
        return op;
    } else if (s.rfind("I-endo:", 0) == 0) {
        if (backend.poly) throw InputError("I-endo operators act on the finite-dimensional backend");
        QMat phi = matrix_from_json(load_json_file(s.substr(7)));
        op.fop = i_minus(make_op(backend.fin, phi));
        op.desc = opdesc_i_endo(phi);
        return op;
    } else {
        throw InputError("unknown operator spec '" + s + "'");
    }
    op.desc = opdesc_poly(op.pop);
    return op;
}

void emit(const json& j, bool as_json) {
    if (as_json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        std::cout << it.key() << ": "
                  << (it.value().is_string() ? it.value().get<std::string>()
                                             : it.value().dump())
                  << "\n";
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DERTOOL_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

ElemOp<PolyExtElem> poly_elem_op(const PolyOp& op) {
    return [op](const PolyExtElem& x) { return apply_op(op, x); };
}

void require_ln(const OpSel& op, const BackendSel& backend, std::uint64_t seed) {
    OpClass cls = op.poly ? classify(op.pop, backend.palg, seed)
                          : classify(op.fop);
    if (cls.locally_nilpotent != OpClass::LN::Yes) throw NotLocallyNilpotent();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculus of derivations and E-derivations"};
    app.require_subcommand(1);

    std::string algebra_spec, opspec, elem_expr, out_file, cert_file, matrix_file;
    std::string construction, kind_str, mode_str;
    std::string e_expr, s_expr, a_expr, b_expr, target_expr;
    bool polyext = false, as_json = false;
    int cap = 64, claim_i = 0, claim_max = 0, order = 30, trials = 100;
    std::uint64_t seed = default_seed();

    Session session;
    session.master_seed = seed;

    auto add_backend_opts = [&](CLI::App* sc, bool need_op) {
        sc->add_option("--algebra", algebra_spec, "algebra JSON file or builtin:<name>")
            ->required();
        sc->add_flag("--polyext", polyext, "work in B[t] over the algebra");
        sc->add_option("--cap", cap, "degree cap for B[t]");
        if (need_op) sc->add_option("--op", opspec, "operator spec")->required();
        sc->add_flag("--json", as_json, "machine-readable output");
    };

    // check: classify an operator
    auto* sc_check = app.add_subcommand("check", "classify an operator");
    add_backend_opts(sc_check, true);
    sc_check->add_option("--seed", seed, "sampling seed (poly backend laws)");
    sc_check->callback([&] {
        BackendSel b = load_backend(algebra_spec, polyext, cap);
        OpSel op = parse_opspec(opspec, b);
        OpClass cls = op.poly ? classify(op.pop, b.palg, seed) : classify(op.fop);
        emit(opclass_to_json(cls), as_json);
    });

    // jc: Jordan-Chevalley decomposition of a matrix
    auto* sc_jc = app.add_subcommand("jc", "Jordan-Chevalley decomposition of a square matrix");
    sc_jc->add_option("--matrix", matrix_file, "matrix JSON file")->required();
    sc_jc->add_flag("--json", as_json, "machine-readable output");
    sc_jc->add_option("-o,--out", out_file, "write the decomposition to a file");
    sc_jc->callback([&] {
        JCDecomp jc = jordan_chevalley(matrix_from_json(load_json_file(matrix_file)));
        json j = jc_to_json(jc);
        if (!out_file.empty()) atomic_write_file(out_file, j.dump(2) + "\n");
        emit(j, as_json);
    });

    // grade
    auto* sc_grade = app.add_subcommand("grade", "eigenvalue grading of a split operator");
    add_backend_opts(sc_grade, true);
    sc_grade->add_option("--kind", kind_str, "derivation|endomorphism")->required();
    sc_grade->callback([&] {
        BackendSel b = load_backend(algebra_spec, polyext, cap);
        if (b.poly) throw InputError("grading runs on the finite-dimensional backend");
        OpSel op = parse_opspec(opspec, b);
        OpKind kind = kind_str == "derivation"      ? OpKind::Derivation
                      : kind_str == "endomorphism" ? OpKind::Endomorphism
                                                    : throw InputError("bad --kind");
        emit(grading_to_json(grade(op.fop, kind), b.fin), as_json);
    });

    // image
    auto* sc_image = app.add_subcommand("image", "structured image decomposition");
    add_backend_opts(sc_image, true);
    sc_image->add_option("--kind", kind_str, "derivation|ederivation")->required();
    sc_image->callback([&] {
        BackendSel b = load_backend(algebra_spec, polyext, cap);
        if (b.poly) throw InputError("image decomposition runs on the finite-dimensional backend");
        OpSel op = parse_opspec(opspec, b);
        DeltaKind kind = kind_str == "derivation"     ? DeltaKind::Derivation
                         : kind_str == "ederivation" ? DeltaKind::EDerivation
                                                      : throw InputError("bad --kind");
        ImageDecomp dec = image_decomposition(op.fop, kind);
        json j;
        json img = json::array();
        for (const auto& v : dec.image) img.push_back(print_elem(v));
        j["image_basis"] = std::move(img);
        json nil = json::array();
        for (const auto& v : dec.nilpart_image) nil.push_back(print_elem(v));
        j["nilpotent_part_image"] = std::move(nil);
        j["grading"] = grading_to_json(dec.grading, b.fin);
        emit(j, as_json);
    });

    // exp / log
    for (bool is_exp : {true, false}) {
        auto* sc = app.add_subcommand(is_exp ? "exp" : "log",
                                      is_exp ? "apply Xi(D) = I - e^D"
                                             : "apply Lambda(delta) = ln(I - delta)");
        add_backend_opts(sc, true);
        sc->add_option("--elem", elem_expr, "element expression");
        sc->callback([&, is_exp] {
            BackendSel b = load_backend(algebra_spec, polyext, cap);
            OpSel op = parse_opspec(opspec, b);
            require_ln(op, b, seed);
            json j;
            if (op.poly) {
                if (elem_expr.empty()) throw InputError("--elem is required on the polynomial backend");
                PolyExtElem a = parse_poly_elem(elem_expr, b.palg);
                auto fn = poly_elem_op(op.pop);
                PolyExtElem r = is_exp ? xi_apply<PolyExtElem>(fn, a)
                                       : lambda_apply<PolyExtElem>(fn, a);
                j["result"] = print_elem(r);
            } else {
                FinOp mapped = is_exp ? xi_of(op.fop) : lambda_of(op.fop);
                j["matrix"] = matrix_to_json(mapped.mat);
                if (!elem_expr.empty()) {
                    AlgElem a = parse_fin_elem(elem_expr, b.fin);
                    j["result"] = print_elem(apply(mapped, a));
                }
            }
            emit(j, as_json);
        });
    }

    // certify
    auto* sc_cert = app.add_subcommand("certify", "construct and verify a preimage certificate");
    add_backend_opts(sc_cert, true);
    sc_cert->add_option("--construction", construction,
                        "one_sided_right|one_sided_left|two_sided|ederiv|spectral|unit")
        ->required();
    sc_cert->add_option("--e", e_expr, "idempotent e");
    sc_cert->add_option("--s", s_expr, "preimage s of e (solved when omitted)");
    sc_cert->add_option("--a", a_expr, "element a");
    sc_cert->add_option("--b", b_expr, "element b (two-sided)");
    sc_cert->add_option("--target", target_expr, "target element");
    sc_cert->add_option("--kind", kind_str, "derivation|ederivation (spectral)");
    std::string d_witness_expr;
    sc_cert->add_option("--d-preimage", d_witness_expr,
                        "known u with D(u) = target, for the ederiv route");
    sc_cert->add_option("-o,--out", out_file, "certificate file (default cert.json)");
    sc_cert->callback([&] {
        BackendSel b = load_backend(algebra_spec, polyext, cap);
        OpSel op = parse_opspec(opspec, b);
        Certificate cert;

        auto side_of = [&](const std::string& c) {
            return c == "one_sided_right" ? Side::Right : Side::Left;
        };

        if (b.poly) {
            if (construction == "ederiv") {
                std::optional<PolyExtElem> witness;
                if (!d_witness_expr.empty())
                    witness = parse_poly_elem(d_witness_expr, b.palg);
                cert = certify_ederiv(op.pop, b.palg, parse_poly_elem(target_expr, b.palg),
                                      witness);
            } else if (construction == "unit") {
                cert = certify_unit_surjectivity(op.pop, b.palg);
            } else if (construction == "one_sided_right" || construction == "one_sided_left" ||
                       construction == "two_sided") {
                if (e_expr.empty()) throw InputError("--e is required");
                PolyExtElem e = parse_poly_elem(e_expr, b.palg);
                PolyExtElem s = [&] {
                    if (!s_expr.empty()) return parse_poly_elem(s_expr, b.palg);
                    auto s0 = solve_slice(op.pop, e);
                    if (!s0) throw MathNegativeError("e is not in the image of the operator");
                    return normalize_s(op.pop, e, *s0);
                }();
                if (construction == "two_sided") {
                    if (a_expr.empty() || b_expr.empty())
                        throw InputError("--a and --b are required for two_sided");
                    cert = certify_two_sided(op.pop, b.palg, s, e,
                                             parse_poly_elem(a_expr, b.palg),
                                             parse_poly_elem(b_expr, b.palg));
                } else {
                    Side side = side_of(construction);
                    PolyExtElem a = [&] {
                        if (!a_expr.empty()) return parse_poly_elem(a_expr, b.palg);
                        if (target_expr.empty())
                            throw InputError("--a or --target is required");
                        PolyExtElem tgt = parse_poly_elem(target_expr, b.palg);
                        PolyExtElem fixed = side == Side::Right ? tgt * e : e * tgt;
                        if (!(fixed == tgt))
                            throw MathNegativeError("target is not of the one-sided form");
                        return tgt;
                    }();
                    cert = certify_one_sided(op.pop, b.palg, s, e, a, side);
                }
            } else {
                throw InputError("construction '" + construction +
                                 "' is not available on the polynomial backend");
            }
        } else {
            if (construction == "ederiv") {
                std::optional<AlgElem> witness;
                if (!d_witness_expr.empty()) witness = parse_fin_elem(d_witness_expr, b.fin);
                cert = certify_ederiv(op.fop, op.desc, parse_fin_elem(target_expr, b.fin),
                                      witness);
            } else if (construction == "unit") {
                cert = certify_unit_surjectivity(op.fop, op.desc);
            } else if (construction == "spectral") {
                DeltaKind kind = kind_str == "ederivation" ? DeltaKind::EDerivation
                                                           : DeltaKind::Derivation;
                cert = certify_spectral(op.fop, op.desc, kind,
                                        parse_fin_elem(target_expr, b.fin));
            } else if (construction == "one_sided_right" || construction == "one_sided_left" ||
                       construction == "two_sided") {
                if (e_expr.empty()) throw InputError("--e is required");
                AlgElem e = parse_fin_elem(e_expr, b.fin);
                AlgElem s = [&] {
                    if (!s_expr.empty()) return parse_fin_elem(s_expr, b.fin);
                    auto s0 = solve_linear(op.fop.mat, e.coeffs());
                    if (!s0) throw MathNegativeError("e is not in the image of the operator");
                    return e * AlgElem(b.fin, *s0) * e;
                }();
                if (construction == "two_sided") {
                    if (a_expr.empty() || b_expr.empty())
                        throw InputError("--a and --b are required for two_sided");
                    cert = certify_two_sided(op.fop, op.desc, s, e,
                                             parse_fin_elem(a_expr, b.fin),
                                             parse_fin_elem(b_expr, b.fin));
                } else {
                    Side side = side_of(construction);
                    AlgElem a = [&] {
                        if (!a_expr.empty()) return parse_fin_elem(a_expr, b.fin);
                        if (target_expr.empty())
                            throw InputError("--a or --target is required");
                        AlgElem tgt = parse_fin_elem(target_expr, b.fin);
                        AlgElem fixed = side == Side::Right ? tgt * e : e * tgt;
                        if (!(fixed == tgt))
                            throw MathNegativeError("target is not of the one-sided form");
                        return tgt;
                    }();
                    cert = certify_one_sided(op.fop, op.desc, s, e, a, side);
                }
            } else {
                throw InputError("unknown construction '" + construction + "'");
            }
        }

        std::filesystem::path path =
            out_file.empty() ? session.outdir / "cert.json" : std::filesystem::path(out_file);
        json j = certificate_to_json(cert);
        atomic_write_file(path, j.dump(2) + "\n");
        json msg{{"written", path.string()},
                 {"construction", to_string(cert.construction)},
                 {"target", cert.target},
                 {"preimage", cert.preimage}};
        emit(msg, as_json);
    });

    // surjectivity
    auto* sc_surj = app.add_subcommand("surjectivity", "does 1 lie in the image?");
    add_backend_opts(sc_surj, true);
    sc_surj->add_option("--kind", kind_str, "derivation|ederivation (finite-dim)");
    sc_surj->add_option("-o,--out", out_file, "write a unit certificate when surjective");
    sc_surj->callback([&] {
        BackendSel b = load_backend(algebra_spec, polyext, cap);
        OpSel op = parse_opspec(opspec, b);
        json j;
        bool surjective;
        if (op.poly) {
            PolySurjReport rep = surjectivity_analysis(op.pop, b.palg);
            surjective = rep.surjective;
            j["verdict"] = rep.surjective ? "surjective" : "not_in_image";
            j["route"] = "poly";
            if (rep.preimage_of_one) j["preimage_of_one"] = print_elem(*rep.preimage_of_one);
            if (surjective && !out_file.empty())
                atomic_write_file(out_file,
                                  certificate_to_json(certify_unit_surjectivity(op.pop, b.palg))
                                          .dump(2) +
                                      "\n");
        } else {
            DeltaKind kind = kind_str == "derivation" ? DeltaKind::Derivation
                                                      : DeltaKind::EDerivation;
            SurjReport rep = surjectivity_analysis(op.fop, kind);
            surjective = rep.verdict == SurjReport::Verdict::Surjective;
            j = surj_report_to_json(rep);
            if (surjective && !out_file.empty())
                atomic_write_file(out_file,
                                  certificate_to_json(certify_unit_surjectivity(op.fop, op.desc))
                                          .dump(2) +
                                      "\n");
        }
        emit(j, as_json);
        if (!surjective) g_exit = 1;
    });

    // hunt
    auto* sc_hunt = app.add_subcommand("hunt", "randomized corollary hunters");
    sc_hunt->add_option("--mode", mode_str,
                        "central_idem_kernel|no_idem_in_ker_and_im|roundtrip|transfer")
        ->required();
    sc_hunt->add_option("--seed", seed, "master seed (or DERTOOL_SEED)");
    sc_hunt->add_option("--trials", trials, "number of trials");
    sc_hunt->add_option("-o,--out", out_file, "report file");
    sc_hunt->add_flag("--json", as_json, "machine-readable output");
    sc_hunt->callback([&] {
        HunterReport rep = run_hunter(hunter_mode_from_string(mode_str), seed, trials);
        json j = hunter_report_to_json(rep);
        if (!out_file.empty()) atomic_write_file(out_file, j.dump(2) + "\n");
        emit(j, as_json);
        if (!rep.violations.empty()) g_exit = 1;
    });

    // verify
    auto* sc_verify = app.add_subcommand("verify", "independently re-check a certificate");
    sc_verify->add_option("--cert", cert_file, "certificate file")->required();
    sc_verify->add_flag("--json", as_json, "machine-readable output");
    sc_verify->callback([&] {
        VerifyResult r = verify_certificate(load_json_file(cert_file));
        emit(json{{"verified", r.ok}, {"detail", r.detail}}, as_json);
        if (!r.ok) g_exit = 1;
    });

    // series-claim
    auto* sc_series = app.add_subcommand("series-claim", "check the 1/i series identity");
    sc_series->add_option("--i", claim_i, "single index to check");
    sc_series->add_option("--max-i", claim_max, "check all i in 1..max");
    sc_series->add_option("--order", order, "truncation order");
    sc_series->add_flag("--json", as_json, "machine-readable output");
    sc_series->callback([&] {
        if (claim_i <= 0 && claim_max <= 0)
            throw InputError("give --i or --max-i");
        json results = json::array();
        bool all = true;
        int lo = claim_max > 0 ? 1 : claim_i;
        int hi = claim_max > 0 ? claim_max : claim_i;
        for (int i = lo; i <= hi; ++i) {
            bool ok = series_identity_check(i, std::max(order, i));
            all &= ok;
            results.push_back(json{{"i", i}, {"holds", ok}});
        }
        emit(json{{"order", order}, {"results", results}, {"all_hold", all}}, as_json);
        if (!all) g_exit = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.error_class());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return g_exit;
}
