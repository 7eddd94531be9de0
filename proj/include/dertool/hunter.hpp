#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dertool/derivcalc.hpp"
#include "dertool/rng.hpp"

namespace dertool {

// A randomly assembled finite-dimensional algebra from the stock family
// (Q, Q^2, dual numbers, T_2 and their direct sums), together with its
// primitive orthogonal idempotents, which generate the idempotent
// candidates the hunters probe.
struct SampledAlgebra {
    AlgebraPtr alg;
    std::string desc;
    std::vector<AlgElem> primitive_idempotents; // pairwise orthogonal, sum = 1
};

SampledAlgebra sample_algebra(Rng& rng, int max_components = 2);

// Basis of the space of derivations: the Leibniz rule on basis pairs is a
// homogeneous linear system in the matrix entries, solved exactly. Every
// sample drawn from the nullspace is a valid derivation, no rejection.
std::vector<QMat> derivation_space(const AlgebraPtr& alg);

FinOp sample_derivation(Rng& rng, const AlgebraPtr& alg);

// The nilpotent part of a sampled derivation; locally nilpotent and still a
// derivation.
FinOp sample_ln_derivation(Rng& rng, const AlgebraPtr& alg);

// Componentwise endomorphism built from valid block moves (identity, zero,
// corner projections, diagonal rescalings, factor permutations); optionally
// post-composed with a unipotent automorphism exp(N). All eigenvalues stay
// rational unless mixing is enabled.
FinOp sample_endomorphism(Rng& rng, const SampledAlgebra& sa, bool mix_unipotent);

// All nonzero subset sums of the primitive idempotents.
std::vector<AlgElem> idempotent_candidates(const SampledAlgebra& sa);

enum class HunterMode { CentralIdemKernel, NoIdemInKerAndIm, Roundtrip, Transfer };

HunterMode hunter_mode_from_string(const std::string& s);
std::string to_string(HunterMode mode);

struct HunterViolation {
    int trial = 0;
    std::uint64_t subseed = 0;
    std::string what;
};

struct HunterReport {
    HunterMode mode = HunterMode::Roundtrip;
    std::uint64_t seed = 0;
    int trials = 0;
    int passes = 0;
    std::vector<HunterViolation> violations;
};

// Deterministic given (mode, seed, trials); trial i uses the subseed
// hash(seed, i), so the aggregate is order-independent.
HunterReport run_hunter(HunterMode mode, std::uint64_t seed, int trials);

} // namespace dertool
