#pragma once

#include <complex>
#include <map>

#include "alcove/root_system.hpp"
#include "json.hpp"

namespace alcove {

// Formal nonnegative-integer combination of weights, W-invariant by
// construction when produced by weight_multiplicities / tensor powers.
struct WeightMultiplicityMap {
    Weight highest_weight;
    std::map<Weight, long long> entries;

    long long dimension() const;
    nlohmann::json to_json() const;
    static WeightMultiplicityMap from_json(const nlohmann::json& j);
};

inline constexpr long long kDefaultDimBound = 2000000;

// Exact dimension by the Weyl product formula; lambda must be dominant.
long long dim(const RootSystem& rs, const Weight& lambda);

// Full weight system of the irreducible module with highest weight lambda,
// multiplicities by Freudenthal's recursion (every division is checked to be
// exact and positive).
WeightMultiplicityMap weight_multiplicities(const RootSystem& rs, const Weight& lambda,
                                            long long dim_bound = kDefaultDimBound);

// n-fold additive convolution of the weight system of gamma; total mass is
// dim(gamma)^n, which must stay below `mass_bound`.
WeightMultiplicityMap tensor_power_multiplicities(const RootSystem& rs, const Weight& gamma,
                                                  int n, long long mass_bound = 100000000);

// Multiplicities M_{lambda,gamma}^mu of the tensor product decomposition,
// by the signed folding rule applied to the weight system of gamma.
std::map<Weight, long long> tensor_decompose(const RootSystem& rs, const Weight& lambda,
                                             const Weight& gamma,
                                             long long dim_bound = kDefaultDimBound);

// Character of V_lambda evaluated at the interior torus point attached to
// sigma at level k.  Real for self-dual lambda, complex in general; exact
// zero when lambda+rho is fixed by an affine wall.
class DiscretizedCharacters {
public:
    DiscretizedCharacters(const RootSystem& rs, long long level);

    const RootSystem& root_system() const { return *rs_; }
    long long level() const { return level_; }
    long long shifted_level() const { return q_; } // k + h_dual

    std::complex<double> chi(const Weight& lambda, const Weight& sigma) const;
    // chi at sigma = 0: the positive sine-product ratio.
    double chi0(const Weight& lambda) const;
    // Product of sin(pi (lambda+rho|alpha) / q) over positive roots.
    double sine_product(const Weight& lambda) const;

private:
    std::complex<double> alternating_sum(const Weight& shifted, const Weight& sigma_shifted) const;

    const RootSystem* rs_;
    long long level_;
    long long q_;
    WeylGroup weyl_;
};

std::complex<double> discretized_character(const RootSystem& rs, const Weight& lambda,
                                           const Weight& sigma, long long k);

// chi_lambda(0): Weyl-dimension analogue with sines, evaluated with exact
// rational angles; switches to log-space accumulation for large root counts.
double asymptotic_dim(const RootSystem& rs, const Weight& lambda, long long k);

// Shared precondition helper: checks dominance and the level constraint
// <x, theta^vee> <= k, throwing std::invalid_argument naming the violation.
void require_in_alcove(const RootSystem& rs, const Weight& x, long long k, const char* role);

} // namespace alcove
