#include "alcove/walks.hpp"

#include <cstddef>
#include <stdexcept>

#include "alcove/alcove_markov.hpp"
#include "alcove/charlib.hpp"
#include "alcove/errors.hpp"

namespace alcove {

namespace {

bool single_orbit_of(const RootSystem& rs, const Weight& gamma,
                     const std::map<Weight, long long>& weights) {
    for (const auto& [mu, mult] : weights) {
        if (mu.is_zero()) continue;
        if (mult != 1 || rs.fold_dominant(mu) != gamma) return false;
    }
    return true;
}

// Dip and midpoint checks run on doubled coordinates so everything stays
// integral: w is in the closed level-k alcove iff 2w is at level 2k.
bool doubled_in_alcove(const RootSystem& rs, const Weight& doubled, long long k) {
    if (!doubled.is_dominant()) return false;
    return rs.theta_dual_pairing(doubled) <= 2 * k;
}

} // namespace

StepSet step_set(const RootSystem& rs, const Weight& gamma) {
    StepSet ss;
    ss.gamma = gamma;
    auto wm = weight_multiplicities(rs, gamma);
    ss.dimension = wm.dimension();
    ss.weights = wm.entries;

    auto it = ss.weights.find(Weight(static_cast<std::size_t>(rs.rank)));
    ss.zero_multiplicity = it == ss.weights.end() ? 0 : it->second;
    for (const auto& [mu, mult] : ss.weights) {
        (void)mult;
        if (!mu.is_zero()) ss.orbit.push_back(mu);
    }

    if (!ss.orbit.empty() && single_orbit_of(rs, gamma, ss.weights)) {
        if (ss.zero_multiplicity == 0)
            ss.kind = StepKind::Minuscule;
        else
            ss.kind = StepKind::QuasiMinuscule;
    }
    return ss;
}

std::map<Weight, Rational> free_kernel_step(const StepSet& steps, const Weight& from) {
    std::map<Weight, Rational> out;
    for (const auto& [mu, mult] : steps.weights)
        out[from + mu] += Rational(mult, steps.dimension);
    return out;
}

std::map<Weight, BigInt> count_walks(const RootSystem& rs, const Weight& lambda,
                                     const Weight& gamma, int n, long long k) {
    if (n < 0) throw std::invalid_argument("count_walks: negative step count");
    StepSet ss = step_set(rs, gamma);
    if (ss.kind != StepKind::Minuscule)
        throw std::invalid_argument("count_walks: gamma is not minuscule");
    require_in_alcove(rs, lambda, k, "lambda");

    AlcoveIndex idx = AlcoveIndex::enumerate(rs, k);
    std::size_t size = idx.size();

    // Per-state transitions, computed once; steps landing outside the closed
    // alcove kill the walk.
    std::vector<std::vector<int>> moves(size);
    for (std::size_t p = 0; p < size; ++p) {
        for (const Weight& mu : ss.orbit) {
            int tp = idx.position(idx[p] + mu);
            if (tp >= 0) moves[p].push_back(tp);
        }
    }

    std::vector<BigInt> cur(size), next(size);
    cur[static_cast<std::size_t>(idx.position(lambda))] = 1;
    for (int step = 0; step < n; ++step) {
        for (auto& v : next) v = 0;
        for (std::size_t p = 0; p < size; ++p) {
            if (cur[p] == 0) continue;
            for (int tp : moves[p]) next[static_cast<std::size_t>(tp)] += cur[p];
        }
        cur.swap(next);
    }

    std::map<Weight, BigInt> out;
    for (std::size_t p = 0; p < size; ++p)
        if (cur[p] != 0) out[idx[p]] = cur[p];
    return out;
}

std::map<Weight, BigInt> count_free_walks(const RootSystem& rs, const Weight& lambda,
                                          const Weight& gamma, int n, long long mass_bound) {
    if (n < 0) throw std::invalid_argument("count_free_walks: negative step count");
    StepSet ss = step_set(rs, gamma);
    BigInt mass = 1;
    for (int i = 0; i < n; ++i) {
        mass *= ss.dimension;
        if (mass > mass_bound) throw bound_exceeded("count_free_walks: dim^n exceeds mass bound");
    }

    std::map<Weight, BigInt> cur;
    cur[lambda] = 1;
    for (int step = 0; step < n; ++step) {
        std::map<Weight, BigInt> next;
        for (const auto& [w, c] : cur)
            for (const auto& [mu, mult] : ss.weights) next[w + mu] += c * mult;
        cur.swap(next);
    }
    return cur;
}

std::map<Weight, BigInt> count_littelmann_paths(const RootSystem& rs, const Weight& lambda,
                                                const Weight& gamma, int n, long long k) {
    if (n < 0) throw std::invalid_argument("count_littelmann_paths: negative step count");
    StepSet ss = step_set(rs, gamma);
    if (ss.kind != StepKind::QuasiMinuscule)
        throw std::invalid_argument("count_littelmann_paths: gamma is not quasi-minuscule");
    for (const Weight& mu : ss.orbit) {
        long long h = rs.theta_dual_pairing(mu);
        if (h < -1 || h > 1)
            throw std::invalid_argument(
                "count_littelmann_paths: a step weight pairs with theta^vee outside {-1,0,1}");
    }
    require_in_alcove(rs, lambda, k, "lambda");

    // Zero-weight paths dip half a root down and back, one per simple root of
    // gamma's length; their number must match the stay-put multiplicity.
    Rational gamma_norm = rs.inner_product(gamma, gamma);
    std::vector<Weight> dips;
    for (int i = 0; i < rs.rank; ++i)
        if (rs.simple_root_half_norm[static_cast<std::size_t>(i)] * Rational(2) == gamma_norm)
            dips.push_back(rs.simple_roots[static_cast<std::size_t>(i)]);
    if (static_cast<long long>(dips.size()) != ss.zero_multiplicity)
        throw internal_error("count_littelmann_paths: dip count disagrees with zero multiplicity");

    AlcoveIndex idx = AlcoveIndex::enumerate(rs, k);
    std::size_t size = idx.size();

    // A path survives iff its whole trajectory stays in the closed alcove:
    // endpoint and midpoint for segments, the bottom of the dip for dips.
    std::vector<std::vector<int>> moves(size);
    std::vector<long long> stay(size, 0);
    for (std::size_t p = 0; p < size; ++p) {
        const Weight doubled = 2 * idx[p];
        for (const Weight& mu : ss.orbit) {
            int tp = idx.position(idx[p] + mu);
            if (tp < 0) continue;
            if (!doubled_in_alcove(rs, doubled + mu, k)) continue;
            moves[p].push_back(tp);
        }
        for (const Weight& alpha : dips)
            if (doubled_in_alcove(rs, doubled - alpha, k)) ++stay[p];
    }

    std::vector<BigInt> cur(size), next(size);
    cur[static_cast<std::size_t>(idx.position(lambda))] = 1;
    for (int step = 0; step < n; ++step) {
        for (auto& v : next) v = 0;
        for (std::size_t p = 0; p < size; ++p) {
            if (cur[p] == 0) continue;
            if (stay[p] > 0) next[p] += cur[p] * stay[p];
            for (int tp : moves[p]) next[static_cast<std::size_t>(tp)] += cur[p];
        }
        cur.swap(next);
    }

    std::map<Weight, BigInt> out;
    for (std::size_t p = 0; p < size; ++p)
        if (cur[p] != 0) out[idx[p]] = cur[p];
    return out;
}

} // namespace alcove
