#pragma once

#include <map>
#include <string>
#include <vector>

#include "alcove/rational.hpp"
#include "alcove/root_system.hpp"
#include "json.hpp"

namespace alcove {

// Distribution of one fused step from xi, pushed to the rescaled closed
// alcove: mass q_gamma(xi, beta) at the point (beta+rho)/(k+h_dual).
struct ConvolutionMeasure {
    Family family;
    int rank;
    long long level;
    Weight xi;
    Weight gamma;
    std::map<Weight, double> atoms; // beta -> probability

    std::vector<Rational> point(const Weight& beta) const;
    nlohmann::json to_json() const;
    std::string to_csv() const; // beta, rescaled point, probability
};

ConvolutionMeasure convolution_measure(const RootSystem& rs, const Weight& xi,
                                       const Weight& gamma, long long k);

// Defect of the normalized-character moment identity at lambda:
// |chi_l(xi)/d * chi_l(gamma)/d - chi_l(0)/d * sum_beta mu(beta) chi_l(beta)/d|.
double moment_identity_residual(const RootSystem& rs, const ConvolutionMeasure& mu,
                                const Weight& lambda);

// Fused random walk started at 0 at level floor(sqrt(n)), run for
// floor(n * t_max) steps; fully determined by the seed.
struct Trajectory {
    Family family;
    int rank;
    long long n;
    long long level;
    Weight gamma;
    unsigned long long seed = 0;
    std::vector<Weight> samples; // samples[0] is the zero weight

    std::string to_jsonl() const;
};

Trajectory simulate_trajectory(const RootSystem& rs, const Weight& gamma, long long n,
                               double t_max, unsigned long long seed);

// |E[chi_L(sigma)/chi_L(0)] - (chi_gamma(sigma)/chi_gamma(0))^m| for the
// m-step walk from 0, the expectation taken by exact kernel powers.
double character_moment_check(const RootSystem& rs, const Weight& gamma, long long k,
                              const Weight& sigma, int m);

struct BrownianFit {
    double c = 0.0;        // fitted decay constant
    double residual = 0.0; // max relative deviation from linearity
    long long n = 0;
    long long level = 0;
    std::vector<Weight> sigmas;
    std::vector<double> exponents; // -log F_j per sigma
    std::vector<double> scales;    // (|sigma+rho|^2 - |rho|^2) * t per sigma

    nlohmann::json to_json() const;
};

// Exact normalized-character expectations F_j at time floor(n*t) of the
// level-floor(sqrt(n)) walk, regressed against the quadratic Casimir scale.
BrownianFit brownian_exponent_fit(const RootSystem& rs, const Weight& gamma, long long n,
                                  double t, const std::vector<Weight>& sigmas);

} // namespace alcove
