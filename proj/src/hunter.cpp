#include "dertool/hunter.hpp"

#include <map>
#include <mutex>

#include "dertool/expr.hpp"

namespace dertool {

namespace {

enum class Component { Q, Q2, Dual, T2 };

struct ComponentInfo {
    AlgebraPtr alg;
    std::string name;
    std::vector<QVec> primitives; // local coordinates
};

const ComponentInfo& component_info(Component c) {
    static const ComponentInfo q{rational_field(), "Q", {{Rat(1)}}};
    static const ComponentInfo q2{product_rationals(2), "QxQ",
                                  {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}};
    static const ComponentInfo dual{dual_numbers(), "dual", {{Rat(1), Rat(0)}}};
    static const ComponentInfo t2{upper_triangular2(), "T2",
                                  {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1)}}};
    switch (c) {
    case Component::Q: return q;
    case Component::Q2: return q2;
    case Component::Dual: return dual;
    case Component::T2: return t2;
    }
    throw InternalError("unreachable component kind");
}

struct AssembledAlgebra {
    SampledAlgebra sampled;
    std::vector<Component> layout;
};

// The stock family is tiny, so assembled algebras are shared singletons;
// this keeps algebra pointers stable, making identity-keyed caches sound.
const AssembledAlgebra& assemble(const std::vector<Component>& comps) {
    static std::mutex mu;
    static std::map<std::vector<Component>, AssembledAlgebra> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(comps);
    if (it != cache.end()) return it->second;

    AssembledAlgebra out;
    out.layout = comps;
    const ComponentInfo& first = component_info(comps[0]);
    out.sampled.alg = first.alg;
    out.sampled.desc = first.name;
    for (std::size_t i = 1; i < comps.size(); ++i) {
        const ComponentInfo& ci = component_info(comps[i]);
        out.sampled.alg = direct_sum(out.sampled.alg, ci.alg);
        out.sampled.desc += "+" + ci.name;
    }
    int offset = 0;
    for (Component c : comps) {
        const ComponentInfo& ci = component_info(c);
        for (const auto& p : ci.primitives) {
            QVec v(out.sampled.alg->dim(), Rat(0));
            for (std::size_t k = 0; k < p.size(); ++k) v[offset + static_cast<int>(k)] = p[k];
            out.sampled.primitive_idempotents.emplace_back(out.sampled.alg, std::move(v));
        }
        offset += ci.alg->dim();
    }
    return cache.emplace(comps, std::move(out)).first->second;
}

std::vector<Component> sample_layout(Rng& rng, int max_components) {
    int n_comp = static_cast<int>(rng.int_in(1, max_components));
    std::vector<Component> comps;
    for (int i = 0; i < n_comp; ++i)
        comps.push_back(static_cast<Component>(rng.int_in(0, 3)));
    return comps;
}

} // namespace

SampledAlgebra sample_algebra(Rng& rng, int max_components) {
    return assemble(sample_layout(rng, max_components)).sampled;
}

std::vector<QMat> derivation_space(const AlgebraPtr& alg) {
    static std::mutex mu;
    // The stored AlgebraPtr pins the key pointer for the cache's lifetime.
    static std::map<const FinDimAlgebra*, std::pair<AlgebraPtr, std::vector<QMat>>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(alg.get());
        if (it != cache.end()) return it->second.second;
    }

    int n = alg->dim();
    // Unknown u(p, k) = entry (p, k) of the derivation matrix.
    QMat sys(n * n * n, n * n);
    int row = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const QVec& cij = alg->product(i, j);
            for (int p = 0; p < n; ++p, ++row) {
                for (int k = 0; k < n; ++k)
                    if (!cij[k].is_zero()) sys.at(row, p * n + k) += cij[k];
                for (int q = 0; q < n; ++q) {
                    const Rat& right = alg->product(q, j)[p]; // D(b_i) b_j
                    if (!right.is_zero()) sys.at(row, q * n + i) -= right;
                    const Rat& left = alg->product(i, q)[p]; // b_i D(b_j)
                    if (!left.is_zero()) sys.at(row, q * n + j) -= left;
                }
            }
        }
    }
    std::vector<QMat> basis;
    for (const auto& v : nullspace(sys)) {
        QMat m(n, n);
        for (int p = 0; p < n; ++p)
            for (int k = 0; k < n; ++k) m.at(p, k) = v[p * n + k];
        basis.push_back(std::move(m));
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(alg.get(), std::make_pair(alg, std::move(basis)))
        .first->second.second;
}

FinOp sample_derivation(Rng& rng, const AlgebraPtr& alg) {
    auto basis = derivation_space(alg);
    QMat m(alg->dim(), alg->dim());
    bool any = false;
    for (const auto& b : basis) {
        Rat c = rng.small_int(2);
        if (c.is_zero()) continue;
        any = true;
        m = m + b.scaled(c);
    }
    if (!any && !basis.empty())
        m = basis[rng.int_in(0, static_cast<long long>(basis.size()) - 1)];
    return FinOp{alg, std::move(m)};
}

FinOp sample_ln_derivation(Rng& rng, const AlgebraPtr& alg) {
    FinOp d = sample_derivation(rng, alg);
    JCDecomp jc = jordan_chevalley(d.mat);
    return FinOp{alg, jc.nilpotent};
}

namespace {

// Endomorphism matrix of one component in local coordinates.
QMat component_endo(Rng& rng, Component c) {
    int n = component_info(c).alg->dim();
    QMat m(n, n);
    switch (c) {
    case Component::Q:
        if (rng.coin()) m.at(0, 0) = Rat(1);
        return m;
    case Component::Q2: {
        // A partial injection on the two factor units.
        static const int plans[][2] = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}, {1, 2}, {2, 1}};
        const int* plan = plans[rng.int_in(0, 6)];
        for (int i = 0; i < 2; ++i)
            if (plan[i] > 0) m.at(plan[i] - 1, i) = Rat(1);
        return m;
    }
    case Component::Dual:
        if (rng.int_in(0, 3) == 0) return m; // zero map
        m.at(0, 0) = Rat(1);
        m.at(1, 1) = rng.small_int(3); // x -> lambda x
        return m;
    case Component::T2:
        switch (rng.int_in(0, 3)) {
        case 0: return m; // zero map
        case 1: m.at(0, 0) = Rat(1); return m; // onto the E11 corner
        case 2: m.at(2, 2) = Rat(1); return m; // onto the E22 corner
        default:
            m.at(0, 0) = Rat(1);
            m.at(2, 2) = Rat(1);
            m.at(1, 1) = rng.small_rat(3, 2); // E12 -> mu E12
            return m;
        }
    }
    throw InternalError("unreachable component kind");
}

std::vector<Component> layout_of(const SampledAlgebra& sa) {
    std::vector<Component> layout;
    std::size_t start = 0;
    while (start <= sa.desc.size()) {
        auto plus = sa.desc.find('+', start);
        std::string name = sa.desc.substr(start, plus == std::string::npos
                                                     ? std::string::npos
                                                     : plus - start);
        layout.push_back(name == "Q"      ? Component::Q
                         : name == "QxQ"  ? Component::Q2
                         : name == "dual" ? Component::Dual
                                          : Component::T2);
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return layout;
}

} // namespace

FinOp sample_endomorphism(Rng& rng, const SampledAlgebra& sa, bool mix_unipotent) {
    int n = sa.alg->dim();
    QMat m(n, n);
    int offset = 0;
    for (Component c : layout_of(sa)) {
        int cd = component_info(c).alg->dim();
        QMat local = component_endo(rng, c);
        for (int i = 0; i < cd; ++i)
            for (int j = 0; j < cd; ++j) m.at(offset + i, offset + j) = local.at(i, j);
        offset += cd;
    }

    FinOp phi{sa.alg, std::move(m)};
    if (mix_unipotent && rng.coin()) {
        FinOp nil = sample_ln_derivation(rng, sa.alg);
        FinOp expn = i_minus(xi_of(nil)); // exp(N), a unipotent automorphism
        phi.mat = rng.coin() ? phi.mat * expn.mat : expn.mat * phi.mat;
    }
    return phi;
}

std::vector<AlgElem> idempotent_candidates(const SampledAlgebra& sa) {
    std::vector<AlgElem> out;
    int k = static_cast<int>(sa.primitive_idempotents.size());
    for (int mask = 1; mask < (1 << k); ++mask) {
        AlgElem e = zero_elem(sa.alg);
        for (int i = 0; i < k; ++i)
            if (mask & (1 << i)) e = e + sa.primitive_idempotents[i];
        out.push_back(std::move(e));
    }
    return out;
}

HunterMode hunter_mode_from_string(const std::string& s) {
    if (s == "central_idem_kernel") return HunterMode::CentralIdemKernel;
    if (s == "no_idem_in_ker_and_im") return HunterMode::NoIdemInKerAndIm;
    if (s == "roundtrip") return HunterMode::Roundtrip;
    if (s == "transfer") return HunterMode::Transfer;
    throw InputError("unknown hunter mode '" + s + "'");
}

std::string to_string(HunterMode mode) {
    switch (mode) {
    case HunterMode::CentralIdemKernel: return "central_idem_kernel";
    case HunterMode::NoIdemInKerAndIm: return "no_idem_in_ker_and_im";
    case HunterMode::Roundtrip: return "roundtrip";
    case HunterMode::Transfer: return "transfer";
    }
    throw InternalError("unreachable hunter mode");
}

namespace {

void central_idem_trial(Rng& rng, std::vector<std::string>& bad) {
    SampledAlgebra sa = sample_algebra(rng);
    FinOp d = sample_derivation(rng, sa.alg);
    FinOp ln_ederiv = xi_of(sample_ln_derivation(rng, sa.alg));
    for (const auto& e : idempotent_candidates(sa)) {
        if (!is_central(e) || !is_idempotent(e)) continue;
        if (!apply(d, e).is_zero())
            bad.push_back("derivation moved central idempotent " + print_elem(e) + " on " + sa.desc);
        if (!apply(ln_ederiv, e).is_zero())
            bad.push_back("LN E-derivation moved central idempotent " + print_elem(e) + " on " + sa.desc);
    }
}

void no_idem_trial(Rng& rng, std::vector<std::string>& bad) {
    SampledAlgebra sa = sample_algebra(rng);
    FinOp dn = sample_ln_derivation(rng, sa.alg);
    FinOp ops[2] = {dn, xi_of(dn)};
    const char* kinds[2] = {"LN derivation", "LN E-derivation"};
    for (int which = 0; which < 2; ++which) {
        Subspace<Rat> ker = kernel_subspace(ops[which]);
        Subspace<Rat> im = image_subspace(ops[which]);
        auto in_both = [&](const AlgElem& e) {
            return ker.contains(e.coeffs()) && im.contains(e.coeffs());
        };
        for (const auto& e : idempotent_candidates(sa)) {
            if (!e.is_zero() && in_both(e))
                bad.push_back(std::string(kinds[which]) + " kept nonzero idempotent " +
                              print_elem(e) + " in ker and im on " + sa.desc);
        }
        // Spectral idempotents of random elements of the intersection.
        std::vector<QVec> ker_in_im;
        for (const auto& v : ker.basis())
            if (im.contains(v)) ker_in_im.push_back(v);
        for (int probe = 0; probe < 4 && !ker_in_im.empty(); ++probe) {
            AlgElem x = zero_elem(sa.alg);
            for (const auto& v : ker_in_im)
                x = x + scale(rng.small_int(2), AlgElem(sa.alg, v));
            for (const auto& e : spectral_idempotents(x)) {
                if (!e.is_zero() && in_both(e))
                    bad.push_back(std::string(kinds[which]) + " kept nonzero spectral idempotent " +
                                  print_elem(e) + " in ker and im on " + sa.desc);
            }
        }
    }
}

void roundtrip_trial(Rng& rng, std::vector<std::string>& bad) {
    SampledAlgebra sa = sample_algebra(rng);
    FinOp d = sample_ln_derivation(rng, sa.alg);
    FinOp delta = xi_of(d);
    if (!classify(delta).is_ederivation)
        bad.push_back("Xi(D) is not an E-derivation on " + sa.desc);
    if (!(lambda_of(delta).mat == d.mat))
        bad.push_back("Lambda(Xi(D)) != D on " + sa.desc);
    if (!(xi_of(lambda_of(delta)).mat == delta.mat))
        bad.push_back("Xi(Lambda(delta)) != delta on " + sa.desc);
    if (!(kernel_subspace(d) == kernel_subspace(delta)))
        bad.push_back("ker D != ker Xi(D) on " + sa.desc);
    if (!(image_subspace(d) == image_subspace(delta)))
        bad.push_back("im D != im Xi(D) on " + sa.desc);
}

void transfer_trial(Rng& rng, std::vector<std::string>& bad) {
    int n = static_cast<int>(rng.int_in(1, 4));
    int m = static_cast<int>(rng.int_in(1, 4));
    QMat a(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a.at(i, j) = rng.small_rat(3, 2);
    if (n >= 2 && rng.coin()) {
        // Force a dependent row so inconsistent systems occur.
        for (int j = 0; j < m; ++j) a.at(n - 1, j) = a.at(0, j) * Rat(2);
    }
    QVec y(n);
    if (rng.coin()) {
        for (auto& v : y) v = rng.small_int(3);
    } else {
        QVec x(m);
        for (auto& v : x) v = rng.small_int(3);
        y = mat_vec(a, x);
    }
    if (!solvability_transfer_check(a, y))
        bad.push_back("solvability differs between Q and the quadratic extension");
}

} // namespace

HunterReport run_hunter(HunterMode mode, std::uint64_t seed, int trials) {
    HunterReport rep;
    rep.mode = mode;
    rep.seed = seed;
    rep.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        std::uint64_t sub = Rng::mix(seed, static_cast<std::uint64_t>(trial));
        Rng rng(sub);
        std::vector<std::string> bad;
        switch (mode) {
        case HunterMode::CentralIdemKernel: central_idem_trial(rng, bad); break;
        case HunterMode::NoIdemInKerAndIm: no_idem_trial(rng, bad); break;
        case HunterMode::Roundtrip: roundtrip_trial(rng, bad); break;
        case HunterMode::Transfer: transfer_trial(rng, bad); break;
        }
        if (bad.empty()) {
            ++rep.passes;
        } else {
            for (auto& b : bad) rep.violations.push_back({trial, sub, std::move(b)});
        }
    }
    return rep;
}

} // namespace dertool
