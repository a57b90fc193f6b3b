#pragma once

#include <map>
#include <string>

#include "alcove/bigint.hpp"
#include "alcove/root_system.hpp"
#include "json.hpp"

namespace alcove {

struct AffineFoldResult {
    Weight folded;        // representative in the closed level-k alcove, rho-unshifted
    int sign;             // det of the folding element; 0 on affine walls
    int reflection_count; // reflections applied (finite and affine)
};

// Folds x+rho into the fundamental domain of the level-k affine Weyl group
// (simple-coordinate walls plus the theta wall at height k + h_dual).
AffineFoldResult fold_affine(const RootSystem& rs, const Weight& x, long long k);

// Level-k fused product multiplicities N_{lambda,gamma}^beta: the tensor rule
// with every shifted weight folded back into the alcove with its sign.
std::map<Weight, long long> fusion_coeffs(const RootSystem& rs, const Weight& lambda,
                                          const Weight& gamma, long long k);

// n-th fused power N_{lambda,gamma,n}^beta as exact integers (vector through
// the alcove-indexed one-step matrix).
std::map<Weight, BigInt> fusion_power(const RootSystem& rs, const Weight& lambda,
                                      const Weight& gamma, int n, long long k);

// -w0(gamma): highest weight of the dual module.
Weight dual_weight(const RootSystem& rs, const Weight& gamma);

// Max over lambda, sigma in the alcove of |chi_lambda chi_gamma - sum_beta
// N_{lambda,gamma}^beta chi_beta| at sigma's torus point.
double verify_fusion_identity(const RootSystem& rs, const Weight& gamma, long long k);

// Flat fused table for export: rows (lambda, n, beta) -> coefficient.
struct FusionTable {
    Family family;
    int rank;
    long long level;
    Weight gamma;
    std::map<std::tuple<Weight, int, Weight>, BigInt> entries;

    nlohmann::json to_json() const;
    static FusionTable from_json(const nlohmann::json& j);
    std::string to_csv() const;
};

FusionTable fusion_table(const RootSystem& rs, const Weight& gamma, long long k, int n_max);

} // namespace alcove
