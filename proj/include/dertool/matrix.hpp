#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "dertool/errors.hpp"
#include "dertool/rational.hpp"

namespace dertool {

// Dense exact matrix over a field scalar S (Rat or QuadExt). Row major.
template <class S>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), e_(rows * cols, S(0)) {
        if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = S(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    S& at(int i, int j) { return e_[i * cols_ + j]; }
    const S& at(int i, int j) const { return e_[i * cols_ + j]; }
    const std::vector<S>& entries() const { return e_; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }
    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const S& a = at(i, k);
                if (is_zero(a)) continue;
                for (int j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + a * o.at(k, j);
            }
        return r;
    }

    Matrix scaled(const S& s) const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    bool is_zero_matrix() const {
        return std::all_of(e_.begin(), e_.end(), [](const S& x) { return is_zero(x); });
    }

    Matrix pow(int k) const {
        if (!square()) throw NotSquare();
        Matrix acc = identity(rows_);
        Matrix base = *this;
        for (; k > 0; k >>= 1) {
            if (k & 1) acc = acc * base;
            if (k > 1) base = base * base;
        }
        return acc;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch("matrix shapes differ");
    }
    int rows_, cols_;
    std::vector<S> e_;
};

template <class S>
std::vector<S> mat_vec(const Matrix<S>& a, const std::vector<S>& x) {
    if (a.cols() != static_cast<int>(x.size()))
        throw DimensionMismatch("matrix-vector shape mismatch");
    std::vector<S> y(a.rows(), S(0));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!is_zero(a.at(i, j))) y[i] = y[i] + a.at(i, j) * x[j];
    return y;
}

// In-place reduced row echelon form; returns the pivot columns in order.
template <class S>
std::vector<int> rref_in_place(Matrix<S>& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int sel = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!is_zero(m.at(i, col))) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        S inv = S(1) / m.at(row, col);
        for (int j = col; j < m.cols(); ++j) m.at(row, j) = m.at(row, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || is_zero(m.at(i, col))) continue;
            S f = m.at(i, col);
            for (int j = col; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class S>
int rank(Matrix<S> m) {
    return static_cast<int>(rref_in_place(m).size());
}

// Some x with A x = y, or nullopt if inconsistent. Deterministic: free
// variables are set to zero after RREF.
template <class S>
std::optional<std::vector<S>> solve_linear(const Matrix<S>& a, const std::vector<S>& y) {
    if (a.rows() != static_cast<int>(y.size()))
        throw DimensionMismatch("right-hand side length mismatch");
    Matrix<S> aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = y[i];
    }
    std::vector<int> pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<S> x(a.cols(), S(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), a.cols());
    return x;
}

// Exact basis of {x : Ax = 0} from the RREF free-variable parametrization.
template <class S>
std::vector<std::vector<S>> nullspace(const Matrix<S>& a) {
    Matrix<S> m = a;
    std::vector<int> pivots = rref_in_place(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::vector<S>> basis;
    for (int col = 0; col < a.cols(); ++col) {
        if (is_pivot[col]) continue;
        std::vector<S> v(a.cols(), S(0));
        v[col] = S(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(static_cast<int>(r), col);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Canonical basis of the column space: RREF rows of the transpose.
template <class S>
std::vector<std::vector<S>> image_basis(const Matrix<S>& a) {
    Matrix<S> t = a.transpose();
    std::vector<int> pivots = rref_in_place(t);
    std::vector<std::vector<S>> basis;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        std::vector<S> v(a.rows());
        for (int j = 0; j < a.rows(); ++j) v[j] = t.at(static_cast<int>(r), j);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& a) {
    if (!a.square()) throw NotSquare();
    int n = a.rows();
    Matrix<S> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = S(1);
    }
    std::vector<int> pivots = rref_in_place(aug);
    if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1) return std::nullopt;
    Matrix<S> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

// Incremental row-space tracker in reduced echelon form. The basis it
// reports is canonical for the subspace, so two trackers agree iff the
// subspaces are equal.
template <class S>
class Subspace {
public:
    explicit Subspace(int ambient) : ambient_(ambient) {}

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(rows_.size()); }

    // Returns true if the vector enlarged the span.
    bool add(std::vector<S> v) {
        if (static_cast<int>(v.size()) != ambient_)
            throw DimensionMismatch("subspace vector length mismatch");
        reduce(v);
        int p = pivot_of(v);
        if (p < 0) return false;
        S inv = S(1) / v[p];
        for (auto& x : v) x = x * inv;
        // Eliminate the new pivot from existing rows, keep rows sorted by pivot.
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            S f = rows_[r][p];
            if (is_zero(f)) continue;
            for (int j = 0; j < ambient_; ++j) rows_[r][j] = rows_[r][j] - f * v[j];
        }
        auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
        auto idx = it - pivots_.begin();
        pivots_.insert(it, p);
        rows_.insert(rows_.begin() + idx, std::move(v));
        return true;
    }

    bool contains(std::vector<S> v) const {
        if (static_cast<int>(v.size()) != ambient_)
            throw DimensionMismatch("subspace vector length mismatch");
        reduce(v);
        return pivot_of(v) < 0;
    }

    bool contains_all(const std::vector<std::vector<S>>& vs) const {
        return std::all_of(vs.begin(), vs.end(), [&](const auto& v) { return contains(v); });
    }

    const std::vector<std::vector<S>>& basis() const { return rows_; }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && rows_ == o.rows_;
    }

private:
    void reduce(std::vector<S>& v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            S f = v[pivots_[r]];
            if (is_zero(f)) continue;
            for (int j = 0; j < ambient_; ++j) v[j] = v[j] - f * rows_[r][j];
        }
    }
    int pivot_of(const std::vector<S>& v) const {
        for (int j = 0; j < ambient_; ++j)
            if (!is_zero(v[j])) return j;
        return -1;
    }

    int ambient_;
    std::vector<int> pivots_;
    std::vector<std::vector<S>> rows_;
};

using QMat = Matrix<Rat>;
using QVec = std::vector<Rat>;

} // namespace dertool
