#pragma once

#include <optional>

#include "dertool/matrix.hpp"
#include "dertool/quadext.hpp"
#include "dertool/unipoly.hpp"

namespace dertool {

// Horner evaluation of p at a square matrix.
QMat eval_poly_at(const UniPoly& p, const QMat& a);

// Least k >= 0 with A^k = 0, or nullopt if A is not nilpotent. By
// Cayley-Hamilton a nilpotent n x n matrix satisfies A^n = 0, so only
// powers up to n are probed. Zero-dimensional and zero matrices report 0.
std::optional<int> nilpotency_index(const QMat& a);

// Monic least-degree p with p(A) = 0, as the lcm of the Krylov minimal
// polynomials of the standard basis vectors.
UniPoly minimal_polynomial(const QMat& a);

// Jordan-Chevalley decomposition A = semisimple + nilpotent with both parts
// polynomials in A.
struct JCDecomp {
    QMat semisimple;
    QMat nilpotent;
    UniPoly witness;      // semisimple = witness(A), exactly
    int nilpotency_index; // 0 means the nilpotent part is zero
};

// Newton iteration on the squarefree part of the minimal polynomial,
// carried out in Q[t]/(m); converges in at most ceil(log2(deg m)) + 1
// steps, and IterationBound past the cap signals a bug.
JCDecomp jordan_chevalley(const QMat& a);

// (F - G)^{-1} for commuting F (invertible) and G (nilpotent), as the exact
// finite sum of G^k F^{-k-1}.
QMat invert_shifted(const QMat& f, const QMat& g);

// Solves A x = y over Q and over Q[t]/(modulus) independently and reports
// whether the two solvability verdicts agree (they always should).
bool solvability_transfer_check(const QMat& a, const QVec& y,
                                const UniPoly& modulus = UniPoly({Rat(-2), Rat(0), Rat(1)}));

} // namespace dertool
