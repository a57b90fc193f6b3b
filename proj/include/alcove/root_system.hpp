#pragma once

#include <utility>
#include <vector>

#include "alcove/rational.hpp"
#include "alcove/weight.hpp"
#include "json.hpp"

namespace alcove {

enum class Family { A, B, C, D };

Family family_from_char(char c);
char family_to_char(Family f);

// Result of folding a rho-shifted weight to the dominant chamber.
// sign is det(w) for the folding element, or 0 if the shifted weight sits on
// a reflection wall (in which case `folded` is the boundary representative).
struct FiniteFoldResult {
    Weight folded;
    int sign;
};

// Classical root system in the basis of fundamental weights, normalized so
// the highest root theta has squared length 2.  All structural data is exact:
// integer coordinates plus a rational Gram matrix of fundamental weights.
class RootSystem {
public:
    static RootSystem build(Family family, int rank);

    Family family;
    int rank;

    // simple_roots[i] = alpha_i, coordinates = i-th row of the Cartan matrix.
    std::vector<Weight> simple_roots;
    // nu(alpha_i^vee) as an element of the weight lattice (integer coords).
    std::vector<Weight> simple_coroots;
    // (alpha_i|alpha_i)/2; equals 1 for long simple roots, 1/2 for short ones.
    std::vector<Rational> simple_root_half_norm;
    std::vector<Weight> positive_roots;       // sorted by (height, coords)
    std::vector<Rational> positive_root_norm; // (alpha|alpha) per positive root

    std::vector<std::vector<Rational>> gram;  // (omega_i|omega_j)
    Weight rho;                                // all-ones coordinates
    Weight theta;                              // highest root
    std::vector<long long> theta_pairing;      // <omega_i, theta^vee> (comarks)
    long long dual_coxeter;                    // 1 + <rho, theta^vee>
    unsigned long long weyl_order;

    // <x, alpha_i^vee>; in this basis just the i-th coordinate.
    long long pairing(const Weight& x, int i) const { return x[static_cast<std::size_t>(i)]; }
    // <x, theta^vee> = sum of comark-weighted coordinates.
    long long theta_dual_pairing(const Weight& x) const;

    Rational inner_product(const Weight& x, const Weight& y) const;
    // (x | positive_roots[a]) without forming the Gram product each time.
    Rational inner_with_positive_root(const Weight& x, std::size_t a) const;
    Rational rho_inner_positive_root(std::size_t a) const { return rho_root_inner_[a]; }

    // Folds x+rho to the dominant chamber, reflecting the most negative
    // coordinate first (lowest index on ties); returns the unshifted weight.
    FiniteFoldResult fold_finite(const Weight& x) const;
    // Plain fold of x itself to the dominant chamber (no shift, no sign).
    Weight fold_dominant(const Weight& x) const;

    std::vector<Weight> weyl_orbit(const Weight& dominant) const;

    nlohmann::json to_json() const;

private:
    // (omega_i | positive_roots[a]) table used by the inner-product helpers.
    std::vector<std::vector<Rational>> root_inner_;
    std::vector<Rational> rho_root_inner_;
};

// Weyl group as explicit integer matrices acting on fundamental coordinates,
// paired with determinants.  Enumerated on demand; size is guarded.
struct WeylGroup {
    int rank;
    std::vector<std::vector<long long>> matrices; // row-major rank x rank
    std::vector<int> dets;

    std::size_t size() const { return matrices.size(); }
    Weight apply(std::size_t w, const Weight& x) const;

    static WeylGroup enumerate(const RootSystem& rs, std::size_t max_size = 1000000);
};

} // namespace alcove
