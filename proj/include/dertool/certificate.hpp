#pragma once

#include <optional>
#include <string>

#include "dertool/derivcalc.hpp"
#include "dertool/json_io.hpp"

namespace dertool {

// How a preimage certificate was constructed. The wire tags are part of the
// certificate file format.
enum class Construction {
    OneSidedRight,    // target a*e
    OneSidedLeft,     // target e*a
    TwoSided,         // target a*e*b
    EDerivViaH,       // E-derivation preimage through the h(D) inversion
    SpectralBlock,    // blockwise inversion from the eigenvalue grading
    UnitSurjectivity, // delta(u) = 1
};

std::string to_string(Construction c);
Construction construction_from_string(const std::string& s);

// Self-contained, independently re-checkable preimage claim: the verifier
// rebuilds the algebra and operator from the embedded descriptions, applies
// the operator to the preimage and compares with the target. It shares no
// code with the construction routes beyond element arithmetic.
struct Certificate {
    std::string backend; // "findim" | "polyext"
    json algebra;        // algebra (findim) or {coeff_algebra, degree_cap}
    json op;             // operator description
    Construction construction = Construction::OneSidedRight;
    std::string target;   // canonical element expression
    std::string preimage; // canonical element expression
    json meta;
};

json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

// Operator descriptions shared by the CLI, the certificates and the verifier.
json opdesc_matrix(const QMat& m);
json opdesc_ad(const std::string& elem_expr);
json opdesc_i_endo(const QMat& phi);
json opdesc_poly(const PolyOp& op);

FinOp finop_from_desc(const json& desc, const AlgebraPtr& alg);
PolyOp polyop_from_desc(const json& desc);

// Certificate builders; each verifies apply(op, preimage) == target before
// returning and throws InternalError otherwise.
Certificate certify_one_sided(const FinOp& d, const json& opdesc, const AlgElem& s,
                              const AlgElem& e, const AlgElem& a, Side side);
Certificate certify_two_sided(const FinOp& d, const json& opdesc, const AlgElem& s,
                              const AlgElem& e, const AlgElem& a, const AlgElem& b);
// The E-derivation route goes through the associated derivation D =
// Lambda(delta): the preimage is the D-preimage of h(D)^{-1}(v). A caller
// who already holds u with D(u) = v may pass it as evidence; it is
// re-checked and rejected with PreconditionFailed if it does not attest
// v in im D.
Certificate certify_ederiv(const FinOp& delta, const json& opdesc, const AlgElem& v,
                           const std::optional<AlgElem>& d_witness = std::nullopt);
Certificate certify_spectral(const FinOp& delta, const json& opdesc, DeltaKind kind,
                             const AlgElem& target);
Certificate certify_unit_surjectivity(const FinOp& delta, const json& opdesc);

Certificate certify_one_sided(const PolyOp& d, const PolyAlgPtr& alg, const PolyExtElem& s,
                              const PolyExtElem& e, const PolyExtElem& a, Side side);
Certificate certify_two_sided(const PolyOp& d, const PolyAlgPtr& alg, const PolyExtElem& s,
                              const PolyExtElem& e, const PolyExtElem& a, const PolyExtElem& b);
Certificate certify_ederiv(const PolyOp& delta, const PolyAlgPtr& alg, const PolyExtElem& v,
                           const std::optional<PolyExtElem>& d_witness = std::nullopt);
Certificate certify_unit_surjectivity(const PolyOp& delta, const PolyAlgPtr& alg);

struct VerifyResult {
    bool ok = false;
    std::string detail; // mismatch diff or error description
};

// The independent re-check: one operator application plus exact comparison.
VerifyResult verify_certificate(const json& cert_json);

} // namespace dertool
