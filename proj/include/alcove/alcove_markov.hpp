#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "alcove/bigint.hpp"
#include "alcove/charlib.hpp"
#include "alcove/root_system.hpp"
#include "json.hpp"

namespace alcove {

// Dominant weights of level <= k in lexicographic coordinate order, with
// constant-time position lookup.  This ordering fixes every exported matrix
// and table layout.
class AlcoveIndex {
public:
    static AlcoveIndex enumerate(const RootSystem& rs, long long k);

    long long level() const { return level_; }
    std::size_t size() const { return weights_.size(); }
    const Weight& operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<Weight>& weights() const { return weights_; }
    // -1 when w is not a dominant weight of level <= k.
    long long position(const Weight& w) const;

private:
    long long level_ = 0;
    std::vector<Weight> weights_;
    std::map<Weight, std::size_t> position_;
};

// |P / (k + h_dual) nu(Q_dual)|: order of the discrete torus the level-k
// characters live on, via elementary divisors of the scaled coroot basis.
long long lattice_index(const RootSystem& rs, long long k);

struct EigenPair {
    Weight sigma;
    std::complex<double> value;
    std::vector<std::complex<double>> vector; // indexed by alcove position
};

struct PeriodClasses {
    int period = 0; // gcd of cycle lengths over the support graph; 0 if acyclic
    bool irreducible = false;
    std::vector<std::vector<int>> classes; // communicating classes as position lists
    std::vector<int> class_of;             // position -> class id
    std::vector<int> depth;                // BFS depth inside its own class
};

// Level-k fused one-step kernel q_gamma together with its exact integer
// support, analytic spectrum, invariant vector and cycle structure.
struct AlcoveKernel {
    Family family;
    int rank;
    long long level;
    Weight gamma;
    AlcoveIndex alcove;
    std::vector<std::vector<long long>> fused;  // N_{lambda,gamma}^beta
    std::vector<std::vector<double>> matrix;    // q_gamma rows (each sums to 1)
    std::vector<double> invariant;              // pi, independent of gamma
    std::vector<EigenPair> spectrum;            // one pair per sigma in the alcove
    PeriodClasses cycles;

    std::string matrix_csv() const;
    nlohmann::json spectrum_json() const;
};

AlcoveKernel build_kernel(const RootSystem& rs, const Weight& gamma, long long k);

struct InvariantMeasure {
    long long level;
    long long index; // lattice_index at this level
    std::map<Weight, double> values;
    nlohmann::json to_json() const;
};

InvariantMeasure invariant_measure(const RootSystem& rs, long long k);

// Spectrum of the killed free walk on the alcove for minuscule gamma:
// eigenvalue 1 - chi_gamma(sigma)/dim(gamma) with eigenfunction chi_.(sigma).
struct DirichletPair {
    Weight sigma;
    std::complex<double> eigenvalue;
    std::vector<std::complex<double>> eigenfunction;
};

std::vector<DirichletPair> dirichlet_spectrum(const RootSystem& rs, const Weight& gamma,
                                              long long k);

PeriodClasses period_and_classes(const std::vector<std::vector<long long>>& support);

struct AsymptoticEstimate {
    double value = 0.0;        // predicted N_{lambda,gamma,n}^beta for large n
    bool wrong_residue = false; // n not congruent to the reachability residue
    int period = 1;
    int residue = 0;           // class of (lambda -> beta) transitions mod period
};

// Large-n prediction d * pi(beta) * chi0(lambda) / chi0(beta) * chi0(gamma)^n
// for the fused power, with exact zero on mismatched residues.
AsymptoticEstimate asymptotic_estimate(const RootSystem& rs, const Weight& lambda,
                                       const Weight& beta, const Weight& gamma, long long k,
                                       long long n);

} // namespace alcove
