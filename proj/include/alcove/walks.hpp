#pragma once

#include <map>
#include <vector>

#include "alcove/bigint.hpp"
#include "alcove/rational.hpp"
#include "alcove/root_system.hpp"

namespace alcove {

enum class StepKind { Minuscule, QuasiMinuscule, Composite };

// Step distribution of the free lattice walk attached to gamma: the weight
// system of V_gamma, split into the moving orbit and the stay-put mass.
struct StepSet {
    Weight gamma;
    StepKind kind = StepKind::Composite;
    long long dimension = 0;             // total mass = dim(gamma)
    std::map<Weight, long long> weights; // weight -> multiplicity, incl. 0
    std::vector<Weight> orbit;           // nonzero weights in coordinate order
    long long zero_multiplicity = 0;
};

StepSet step_set(const RootSystem& rs, const Weight& gamma);

// One-step distribution of the free walk from `from`: K_gamma^{to-from}/dim.
std::map<Weight, Rational> free_kernel_step(const StepSet& steps, const Weight& from);

// Number of n-step lattice walks from lambda staying inside the closed
// level-k alcove, one step per orbit weight (minuscule gamma only: that is
// the regime where killing at the walls reproduces the fused product).
std::map<Weight, BigInt> count_walks(const RootSystem& rs, const Weight& lambda,
                                     const Weight& gamma, int n, long long k);

// Same walk on the free lattice, no alcove constraint; total mass dim^n.
std::map<Weight, BigInt> count_free_walks(const RootSystem& rs, const Weight& lambda,
                                          const Weight& gamma, int n,
                                          long long mass_bound = 100000000);

// Number of n-fold path concatenations for quasi-minuscule gamma whose
// trajectory stays in the continuous closed alcove: orbit segments plus
// wall dips (down half a simple root of gamma's length and back).
std::map<Weight, BigInt> count_littelmann_paths(const RootSystem& rs, const Weight& lambda,
                                                const Weight& gamma, int n, long long k);

} // namespace alcove
