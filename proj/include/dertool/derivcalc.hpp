#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dertool/algebra.hpp"
#include "dertool/linalg.hpp"
#include "dertool/ln_calculus.hpp"
#include "dertool/polyext.hpp"

namespace dertool {

// Classification flags of a linear operator on an algebra.
struct OpClass {
    bool is_derivation = false;
    bool is_endomorphism = false;
    bool is_ederivation = false; // equivalently: I - T is an endomorphism

    enum class LN { Yes, No, Unknown };
    LN locally_nilpotent = LN::Unknown;
    std::string ln_witness; // Yes: why; No: an element with T^n(a) != 0 for all n

    // First basis/sample pair where the derivation law fails, printed.
    std::optional<std::pair<std::string, std::string>> failure_witness;

    // Poly-backend law checks are sampled, not exhaustive.
    bool sampled = false;
};

// K-linear operator on a finite-dimensional algebra, in matrix form against
// the algebra basis.
struct FinOp {
    AlgebraPtr alg;
    QMat mat;
};

FinOp make_op(AlgebraPtr alg, QMat mat);
FinOp identity_op(const AlgebraPtr& alg);
FinOp ad_operator(const AlgElem& x);       // a -> x a - a x
FinOp i_minus(const FinOp& op);            // I - op
AlgElem apply(const FinOp& op, const AlgElem& a);
ElemOp<AlgElem> as_elem_op(const FinOp& op);

// Exact law checks on all basis pairs; LN decided by matrix nilpotency
// (never Unknown on this backend).
OpClass classify(const FinOp& op);

// Sampled law checks: generator pairs plus random pairs up to degree 6.
// LN verdicts are exact (degree-decrease certificates for the built-ins).
OpClass classify(const PolyOp& op, const PolyAlgPtr& alg, std::uint64_t seed = 1,
                 int sample_pairs = 200);

// Xi(D) = I - e^D and Lambda(delta) = ln(I - delta) as matrices. Both
// require the input to be (locally) nilpotent.
FinOp xi_of(const FinOp& d);
FinOp lambda_of(const FinOp& delta);

enum class OpKind { Derivation, Endomorphism };
enum class DeltaKind { Derivation, EDerivation };

// Eigenvalue grading A = direct sum of A_lambda for an operator whose
// semisimple part splits over Q. Verifies the product rule
// A_lambda A_mu <= A_{lambda+mu} (derivations) or A_{lambda mu}
// (endomorphisms) on all basis pairs.
struct GradingDecomp {
    std::vector<Rat> eigenvalues; // ascending
    std::vector<std::vector<AlgElem>> blocks;
    QMat semisimple;
    QMat nilpotent;
    UniPoly witness; // semisimple = witness(operator matrix)
    // lambda with 1/lambda also an eigenvalue (endomorphism case); the
    // inclusion A_lambda e A_{1/lambda} <= im delta is recorded, not decided.
    std::vector<std::pair<Rat, Rat>> reciprocal_pairs;
};

GradingDecomp grade(const FinOp& op, OpKind kind);

// im T assembled from the grading structure and, independently, from the
// plain column space of the matrix; the two must agree exactly.
struct ImageDecomp {
    std::vector<AlgElem> image;          // canonical basis
    GradingDecomp grading;               // of T (derivation) or phi = I - T
    std::vector<AlgElem> nilpart_image;  // Dn(A_0) resp. Pn(A_1)
};

ImageDecomp image_decomposition(const FinOp& op, DeltaKind kind);

// Iterates e_i = phi^i(1) to its stabilization; verifies e_i e_j = e_j e_i
// = e_j for all computed i <= j.
struct UnitOrbit {
    int d = 0;
    AlgElem stable;
    bool nilpotent_branch = false; // stable == 0
    std::vector<AlgElem> elems;    // e_0 = 1, ..., e_d
};

UnitOrbit unit_orbit(const FinOp& phi);

// The surjectivity criterion: 1 in im delta forces im delta = A.
struct SurjReport {
    enum class Verdict { Surjective, NotInImage };
    Verdict verdict = Verdict::NotInImage;
    std::string route; // "ederivation" | "derivation" | "poly"
    int rank = -1;
    int dim = -1;
    std::optional<AlgElem> preimage_of_one;
    std::optional<UnitOrbit> orbit;              // E-derivation chain
    std::optional<AlgElem> ed_chain_preimage;    // x with (I - phi^d)(x) = e_d
    bool decomposition_checked = false;          // A = e_d A + (1 - e_d) A
};

SurjReport surjectivity_analysis(const FinOp& delta, DeltaKind kind);

struct PolySurjReport {
    bool surjective = false;
    std::optional<PolyExtElem> preimage_of_one;
};

PolySurjReport surjectivity_analysis(const PolyOp& delta, const PolyAlgPtr& alg);

// Nullspace / image of the operator matrix as canonical subspaces.
Subspace<Rat> kernel_subspace(const FinOp& op);
Subspace<Rat> image_subspace(const FinOp& op);

} // namespace dertool
