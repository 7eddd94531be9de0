#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dertool/matrix.hpp"
#include "dertool/unipoly.hpp"

namespace dertool {

enum class Side { Left, Right };

// Finite-dimensional associative algebra over Q presented by structure
// constants: basis_i * basis_j = sum_k table[i][j][k] * basis_k.
// Not necessarily unital or commutative. Immutable after validation.
class FinDimAlgebra {
public:
    int dim() const { return dim_; }
    const std::vector<std::string>& basis_names() const { return names_; }
    const std::optional<QVec>& unit() const { return unit_; }

    // Coefficient vector of basis_i * basis_j.
    const QVec& product(int i, int j) const { return table_[i * dim_ + j]; }

    friend std::shared_ptr<const FinDimAlgebra> algebra_from_table(
        int dim, std::vector<std::string> names, std::vector<QVec> table,
        std::optional<QVec> unit);

private:
    FinDimAlgebra() = default;
    int dim_ = 0;
    std::vector<std::string> names_;
    std::vector<QVec> table_; // dim^2 coefficient vectors, row-major in (i, j)
    std::optional<QVec> unit_;
};

using AlgebraPtr = std::shared_ptr<const FinDimAlgebra>;

// Validates associativity on all dim^3 basis triples and the unit laws,
// then freezes the algebra. Throws NotAssociative / BadUnit.
AlgebraPtr algebra_from_table(int dim, std::vector<std::string> names,
                              std::vector<QVec> table, std::optional<QVec> unit);

// Element of a finite-dimensional algebra: a coefficient vector against the
// algebra's basis.
class AlgElem {
public:
    AlgElem() = default;
    AlgElem(AlgebraPtr alg, QVec coeffs);

    const AlgebraPtr& algebra() const { return alg_; }
    const QVec& coeffs() const { return c_; }
    bool is_zero() const;

    AlgElem operator+(const AlgElem& o) const;
    AlgElem operator-(const AlgElem& o) const;
    AlgElem operator-() const;
    AlgElem operator*(const AlgElem& o) const; // bilinear extension of the table
    bool operator==(const AlgElem& o) const;

private:
    void check_same(const AlgElem& o) const;
    AlgebraPtr alg_;
    QVec c_;
};

AlgElem scale(const Rat& r, const AlgElem& a);
inline bool is_zero(const AlgElem& a) { return a.is_zero(); }

AlgElem zero_elem(const AlgebraPtr& alg);
AlgElem basis_elem(const AlgebraPtr& alg, int i);
AlgElem unit_elem(const AlgebraPtr& alg); // throws NotUnital

bool is_idempotent(const AlgElem& e);
bool is_central(const AlgElem& e);

// Matrix of x -> e * x (left) or x -> x * e (right) in the basis.
QMat mul_operator_matrix(const AlgElem& e, Side multiply_from);

// Exact basis of eA (Side::Right, elements e*a) or Ae (Side::Left).
std::vector<AlgElem> one_sided_span(const AlgElem& e, Side side);

// Smallest subspace containing e and closed under multiplication by every
// basis element on both sides; closure iteration, capped at dim rounds.
std::vector<AlgElem> principal_ideal_basis(const AlgElem& e);

// Monic minimal polynomial of a inside the unital subalgebra Q[a].
UniPoly element_minimal_polynomial(const AlgElem& a); // throws NotUnital

// Orthogonal idempotent decomposition of Q[a] via partial fractions over
// the rational-linear factors of the minimal polynomial; empty when the
// minimal polynomial does not split into distinct rational roots.
std::vector<AlgElem> spectral_idempotents(const AlgElem& a); // throws NotUnital

// Stock algebras.
AlgebraPtr rational_field();                     // Q itself, basis {"1"}
AlgebraPtr dual_numbers();                       // Q[x]/(x^2), basis {1, x}
AlgebraPtr upper_triangular2();                  // T_2(Q), basis {E11, E12, E22}
AlgebraPtr product_rationals(int k);             // Q^k componentwise
AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b);

} // namespace dertool
