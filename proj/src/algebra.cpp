#include "dertool/algebra.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace dertool {

namespace {

QVec mul_coeffs(const FinDimAlgebra& alg, const QVec& a, const QVec& b) {
    int n = alg.dim();
    QVec out(n, Rat(0));
    for (int i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (b[j].is_zero()) continue;
            Rat f = a[i] * b[j];
            const QVec& prod = alg.product(i, j);
            for (int k = 0; k < n; ++k)
                if (!prod[k].is_zero()) out[k] += f * prod[k];
        }
    }
    return out;
}

} // namespace

AlgebraPtr algebra_from_table(int dim, std::vector<std::string> names,
                              std::vector<QVec> table, std::optional<QVec> unit) {
    if (dim < 1) throw InputError("algebra dimension must be >= 1");
    if (static_cast<int>(names.size()) != dim)
        throw DimensionMismatch("basis name count must equal dim");
    if (static_cast<int>(table.size()) != dim * dim)
        throw DimensionMismatch("structure table must have dim^2 products");
    for (const auto& row : table)
        if (static_cast<int>(row.size()) != dim)
            throw DimensionMismatch("each product must have dim coefficients");
    if (unit && static_cast<int>(unit->size()) != dim)
        throw DimensionMismatch("unit vector must have dim coefficients");

    auto alg = std::shared_ptr<FinDimAlgebra>(new FinDimAlgebra());
    alg->dim_ = dim;
    alg->names_ = std::move(names);
    alg->table_ = std::move(table);
    alg->unit_ = std::move(unit);

    // Associativity on all basis triples: (b_i b_j) b_k = b_i (b_j b_k).
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const QVec& ij = alg->product(i, j);
            for (int k = 0; k < dim; ++k) {
                QVec bk(dim, Rat(0));
                bk[k] = Rat(1);
                QVec lhs = mul_coeffs(*alg, ij, bk);
                QVec bi(dim, Rat(0));
                bi[i] = Rat(1);
                QVec rhs = mul_coeffs(*alg, bi, alg->product(j, k));
                if (lhs != rhs) throw NotAssociative(i, j, k);
            }
        }
    }
    if (alg->unit_) {
        for (int i = 0; i < dim; ++i) {
            QVec bi(dim, Rat(0));
            bi[i] = Rat(1);
            if (mul_coeffs(*alg, *alg->unit_, bi) != bi ||
                mul_coeffs(*alg, bi, *alg->unit_) != bi)
                throw BadUnit(i);
        }
    }
    return alg;
}

AlgElem::AlgElem(AlgebraPtr alg, QVec coeffs) : alg_(std::move(alg)), c_(std::move(coeffs)) {
    if (!alg_) throw InputError("element needs an algebra");
    if (static_cast<int>(c_.size()) != alg_->dim())
        throw DimensionMismatch("coefficient length must equal algebra dim");
}

void AlgElem::check_same(const AlgElem& o) const {
    if (alg_ != o.alg_) throw AlgebraMismatch();
}

bool AlgElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r.is_zero(); });
}

AlgElem AlgElem::operator+(const AlgElem& o) const {
    check_same(o);
    QVec r(c_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.c_[i];
    return AlgElem(alg_, std::move(r));
}

AlgElem AlgElem::operator-(const AlgElem& o) const {
    check_same(o);
    QVec r(c_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o.c_[i];
    return AlgElem(alg_, std::move(r));
}

AlgElem AlgElem::operator-() const {
    QVec r(c_);
    for (auto& x : r) x = -x;
    return AlgElem(alg_, std::move(r));
}

AlgElem AlgElem::operator*(const AlgElem& o) const {
    check_same(o);
    return AlgElem(alg_, mul_coeffs(*alg_, c_, o.c_));
}

bool AlgElem::operator==(const AlgElem& o) const {
    check_same(o);
    return c_ == o.c_;
}

AlgElem scale(const Rat& r, const AlgElem& a) {
    QVec out(a.coeffs());
    for (auto& x : out) x *= r;
    return AlgElem(a.algebra(), std::move(out));
}

AlgElem zero_elem(const AlgebraPtr& alg) { return AlgElem(alg, QVec(alg->dim(), Rat(0))); }

AlgElem basis_elem(const AlgebraPtr& alg, int i) {
    QVec c(alg->dim(), Rat(0));
    c.at(i) = Rat(1);
    return AlgElem(alg, std::move(c));
}

AlgElem unit_elem(const AlgebraPtr& alg) {
    if (!alg->unit()) throw NotUnital();
    return AlgElem(alg, *alg->unit());
}

bool is_idempotent(const AlgElem& e) { return e * e == e; }

bool is_central(const AlgElem& e) {
    const auto& alg = e.algebra();
    for (int i = 0; i < alg->dim(); ++i) {
        AlgElem b = basis_elem(alg, i);
        if (!(e * b == b * e)) return false;
    }
    return true;
}

QMat mul_operator_matrix(const AlgElem& e, Side multiply_from) {
    const auto& alg = e.algebra();
    int n = alg->dim();
    QMat m(n, n);
    for (int j = 0; j < n; ++j) {
        AlgElem b = basis_elem(alg, j);
        AlgElem col = multiply_from == Side::Left ? e * b : b * e;
        for (int i = 0; i < n; ++i) m.at(i, j) = col.coeffs()[i];
    }
    return m;
}

std::vector<AlgElem> one_sided_span(const AlgElem& e, Side side) {
    // eA is the image of left multiplication by e; Ae of right multiplication.
    QMat op = mul_operator_matrix(e, side == Side::Right ? Side::Left : Side::Right);
    std::vector<AlgElem> out;
    for (auto& v : image_basis(op)) out.emplace_back(e.algebra(), std::move(v));
    return out;
}

std::vector<AlgElem> principal_ideal_basis(const AlgElem& e) {
    const auto& alg = e.algebra();
    int n = alg->dim();
    Subspace<Rat> span(n);
    if (!span.add(e.coeffs())) return {};
    for (int round = 0; round < n; ++round) {
        std::vector<QVec> frontier;
        for (const auto& v : span.basis()) {
            AlgElem x(alg, v);
            for (int i = 0; i < n; ++i) {
                AlgElem b = basis_elem(alg, i);
                frontier.push_back((b * x).coeffs());
                frontier.push_back((x * b).coeffs());
            }
        }
        bool grew = false;
        for (auto& v : frontier) grew |= span.add(std::move(v));
        if (!grew) break;
    }
    std::vector<AlgElem> out;
    for (const auto& v : span.basis()) out.emplace_back(alg, v);
    return out;
}

UniPoly element_minimal_polynomial(const AlgElem& a) {
    const auto& alg = a.algebra();
    if (!alg->unit()) throw NotUnital();
    int n = alg->dim();
    std::vector<QVec> chain;
    AlgElem p = unit_elem(alg); // a^0
    Subspace<Rat> span(n);
    while (span.add(p.coeffs())) {
        chain.push_back(p.coeffs());
        p = p * a;
    }
    int k = static_cast<int>(chain.size());
    QMat cols(n, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) cols.at(i, j) = chain[j][i];
    auto x = solve_linear(cols, p.coeffs());
    if (!x) throw InternalError("power dependence must be expressible in Q[a]");
    std::vector<Rat> c(k + 1, Rat(0));
    c[k] = Rat(1);
    for (int j = 0; j < k; ++j) c[j] = -(*x)[j];
    return UniPoly(std::move(c));
}

std::vector<AlgElem> spectral_idempotents(const AlgElem& a) {
    UniPoly m = element_minimal_polynomial(a);
    std::vector<Rat> roots = rational_roots(m);
    // Needs a full splitting into distinct rational roots.
    UniPoly split = UniPoly::constant(Rat(1));
    for (const Rat& r : roots) split = split * UniPoly({-r, Rat(1)});
    if (!(split == m.monic())) return {};

    std::vector<AlgElem> out;
    const auto& alg = a.algebra();
    for (const Rat& r : roots) {
        // Lagrange idempotent: prod_{s != r} (a - s) / (r - s).
        AlgElem e = unit_elem(alg);
        for (const Rat& s : roots) {
            if (s == r) continue;
            e = scale(Rat(1) / (r - s), e * (a - scale(s, unit_elem(alg))));
        }
        out.push_back(std::move(e));
    }
    return out;
}

// The stock factories hand out shared singletons: elements compare by
// algebra identity, so two calls must agree on the instance.
AlgebraPtr rational_field() {
    static AlgebraPtr a = [] {
        std::vector<QVec> table{QVec{Rat(1)}};
        return algebra_from_table(1, {"1"}, std::move(table), QVec{Rat(1)});
    }();
    return a;
}

AlgebraPtr dual_numbers() {
    static AlgebraPtr a = [] {
        // basis {1, x}, x^2 = 0
        std::vector<QVec> table(4, QVec(2, Rat(0)));
        table[0 * 2 + 0] = {Rat(1), Rat(0)};
        table[0 * 2 + 1] = {Rat(0), Rat(1)};
        table[1 * 2 + 0] = {Rat(0), Rat(1)};
        return algebra_from_table(2, {"1", "x"}, std::move(table), QVec{Rat(1), Rat(0)});
    }();
    return a;
}

AlgebraPtr upper_triangular2() {
    static AlgebraPtr a = [] {
        // basis {E11, E12, E22}
        int n = 3;
        std::vector<QVec> table(n * n, QVec(n, Rat(0)));
        auto set = [&](int i, int j, int k) { table[i * n + j][k] = Rat(1); };
        set(0, 0, 0); // E11 E11 = E11
        set(0, 1, 1); // E11 E12 = E12
        set(1, 2, 1); // E12 E22 = E12
        set(2, 2, 2); // E22 E22 = E22
        return algebra_from_table(n, {"E11", "E12", "E22"}, std::move(table),
                                  QVec{Rat(1), Rat(0), Rat(1)});
    }();
    return a;
}

AlgebraPtr product_rationals(int k) {
    if (k < 1) throw InputError("product algebra needs at least one factor");
    static std::mutex mu;
    static std::map<int, AlgebraPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    std::vector<QVec> table(k * k, QVec(k, Rat(0)));
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) {
        table[i * k + i][i] = Rat(1);
        names.push_back("e" + std::to_string(i + 1));
    }
    return cache
        .emplace(k, algebra_from_table(k, std::move(names), std::move(table), QVec(k, Rat(1))))
        .first->second;
}

AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b) {
    int n = a->dim(), m = b->dim(), d = n + m;
    std::vector<QVec> table(d * d, QVec(d, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) table[i * d + j][k] = a->product(i, j)[k];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) table[(n + i) * d + (n + j)][n + k] = b->product(i, j)[k];
    std::vector<std::string> names;
    for (const auto& s : a->basis_names()) names.push_back("L" + s);
    for (const auto& s : b->basis_names()) names.push_back("R" + s);
    std::optional<QVec> unit;
    if (a->unit() && b->unit()) {
        QVec u(d, Rat(0));
        for (int i = 0; i < n; ++i) u[i] = (*a->unit())[i];
        for (int i = 0; i < m; ++i) u[n + i] = (*b->unit())[i];
        unit = std::move(u);
    }
    return algebra_from_table(d, std::move(names), std::move(table), std::move(unit));
}

} // namespace dertool
