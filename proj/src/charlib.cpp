#include "alcove/charlib.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "alcove/errors.hpp"
#include "alcove/fusion.hpp"

namespace alcove {

namespace {

// sin(pi * x) for exact rational x, reduced mod 2 before evaluation so large
// weights lose no precision to argument growth.
double sin_pi(const Rational& x) {
    long long d = x.den();
    long long r = x.num() % (2 * d);
    if (r < 0) r += 2 * d;
    return std::sin(M_PI * static_cast<double>(r) / static_cast<double>(d));
}

// exp(-2 pi i x), same exact reduction.
std::complex<double> cis_minus(const Rational& x) {
    long long d = x.den();
    long long r = x.num() % d;
    if (r < 0) r += d;
    double ang = -2.0 * M_PI * static_cast<double>(r) / static_cast<double>(d);
    return {std::cos(ang), std::sin(ang)};
}

Rational norm2_shifted(const RootSystem& rs, const Weight& x) {
    Weight s = x + rs.rho;
    return rs.inner_product(s, s);
}

} // namespace

void require_in_alcove(const RootSystem& rs, const Weight& x, long long k, const char* role) {
    if (x.rank() != static_cast<std::size_t>(rs.rank))
        throw std::invalid_argument(std::string(role) + " has rank " + std::to_string(x.rank()) +
                                    ", root system has rank " + std::to_string(rs.rank));
    for (int i = 0; i < rs.rank; ++i)
        if (x[static_cast<std::size_t>(i)] < 0)
            throw std::invalid_argument(std::string(role) + " " + to_string(x) +
                                        " is not dominant: coordinate " + std::to_string(i + 1) +
                                        " is negative");
    long long lv = rs.theta_dual_pairing(x);
    if (lv > k)
        throw std::invalid_argument(std::string(role) + " " + to_string(x) + " has level " +
                                    std::to_string(lv) + " > k = " + std::to_string(k));
}

long long WeightMultiplicityMap::dimension() const {
    long long s = 0;
    for (const auto& [w, m] : entries) s += m;
    return s;
}

nlohmann::json WeightMultiplicityMap::to_json() const {
    nlohmann::json j;
    j["highest_weight"] = highest_weight.coords;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [w, m] : entries) {
        arr.push_back({{"weight", w.coords}, {"mult", m}});
    }
    j["entries"] = arr;
    return j;
}

WeightMultiplicityMap WeightMultiplicityMap::from_json(const nlohmann::json& j) {
    WeightMultiplicityMap m;
    m.highest_weight = Weight(j.at("highest_weight").get<std::vector<long long>>());
    for (const auto& e : j.at("entries"))
        m.entries[Weight(e.at("weight").get<std::vector<long long>>())] = e.at("mult").get<long long>();
    return m;
}

long long dim(const RootSystem& rs, const Weight& lambda) {
    if (!lambda.is_dominant())
        throw std::invalid_argument("dim: " + to_string(lambda) + " is not dominant");
    Weight shifted = lambda + rs.rho;
    Rational prod(1);
    for (std::size_t a = 0; a < rs.positive_roots.size(); ++a) {
        prod *= rs.inner_with_positive_root(shifted, a) / rs.rho_inner_positive_root(a);
    }
    return prod.as_integer();
}

WeightMultiplicityMap weight_multiplicities(const RootSystem& rs, const Weight& lambda,
                                            long long dim_bound) {
    long long d = dim(rs, lambda);
    if (d > dim_bound)
        throw bound_exceeded("weight_multiplicities: dim " + std::to_string(d) + " exceeds bound " +
                             std::to_string(dim_bound));
    std::size_t n = static_cast<std::size_t>(rs.rank);

    // Weight system as the saturated closure of {lambda}: from each member,
    // walk every alpha_i-string downward as far as the pairing allows.
    std::set<Weight> weights{lambda};
    std::vector<Weight> queue{lambda};
    while (!queue.empty()) {
        Weight mu = queue.back();
        queue.pop_back();
        for (std::size_t i = 0; i < n; ++i) {
            long long c = mu[i];
            Weight nu = mu;
            for (long long j = 1; j <= c; ++j) {
                nu = nu - rs.simple_roots[i];
                if (weights.insert(nu).second) queue.push_back(nu);
            }
        }
    }

    std::vector<Weight> dominant;
    for (const auto& w : weights)
        if (w.is_dominant()) dominant.push_back(w);
    std::sort(dominant.begin(), dominant.end(), [&](const Weight& a, const Weight& b) {
        Rational na = norm2_shifted(rs, a), nb = norm2_shifted(rs, b);
        if (na != nb) return nb < na; // descending |mu+rho|^2: lambda first
        return a < b;
    });

    Rational top = norm2_shifted(rs, lambda);
    std::map<Weight, long long> dom_mult;
    for (const auto& mu : dominant) {
        if (mu == lambda) {
            dom_mult[mu] = 1;
            continue;
        }
        Rational rhs(0);
        for (std::size_t a = 0; a < rs.positive_roots.size(); ++a) {
            Weight nu = mu;
            for (;;) {
                nu = nu + rs.positive_roots[a];
                if (!weights.count(nu)) break;
                long long m = dom_mult.at(rs.fold_dominant(nu));
                rhs += Rational(2) * rs.inner_with_positive_root(nu, a) * Rational(m);
            }
        }
        Rational denom = top - norm2_shifted(rs, mu);
        Rational val = rhs / denom;
        long long m = val.as_integer(); // throws if the recursion is not exact
        if (m <= 0) throw internal_error("Freudenthal produced non-positive multiplicity");
        dom_mult[mu] = m;
    }

    WeightMultiplicityMap out;
    out.highest_weight = lambda;
    for (const auto& [mu, m] : dom_mult)
        for (const auto& w : rs.weyl_orbit(mu)) out.entries[w] = m;
    if (out.dimension() != d)
        throw internal_error("weight multiplicities sum to " + std::to_string(out.dimension()) +
                             ", Weyl dimension is " + std::to_string(d));
    return out;
}

WeightMultiplicityMap tensor_power_multiplicities(const RootSystem& rs, const Weight& gamma,
                                                  int n, long long mass_bound) {
    if (n < 0) throw std::invalid_argument("tensor power: n must be >= 0");
    long long d = dim(rs, gamma);
    __int128 mass = 1;
    for (int i = 0; i < n; ++i) {
        mass *= d;
        if (mass > mass_bound)
            throw bound_exceeded("tensor power: dim^" + std::to_string(n) + " exceeds bound " +
                                 std::to_string(mass_bound));
    }
    WeightMultiplicityMap base = weight_multiplicities(rs, gamma);
    WeightMultiplicityMap acc;
    acc.highest_weight = static_cast<long long>(n) * gamma;
    acc.entries[Weight(static_cast<std::size_t>(rs.rank))] = 1;
    for (int step = 0; step < n; ++step) {
        std::map<Weight, long long> next;
        for (const auto& [w1, m1] : acc.entries)
            for (const auto& [w2, m2] : base.entries) next[w1 + w2] += m1 * m2;
        acc.entries = std::move(next);
    }
    return acc;
}

std::map<Weight, long long> tensor_decompose(const RootSystem& rs, const Weight& lambda,
                                             const Weight& gamma, long long dim_bound) {
    if (!lambda.is_dominant())
        throw std::invalid_argument("tensor_decompose: " + to_string(lambda) + " is not dominant");
    WeightMultiplicityMap wm = weight_multiplicities(rs, gamma, dim_bound);
    std::map<Weight, long long> acc;
    for (const auto& [mu, m] : wm.entries) {
        auto fold = rs.fold_finite(lambda + mu);
        if (fold.sign == 0) continue;
        acc[fold.folded] += fold.sign * m;
    }
    for (auto it = acc.begin(); it != acc.end();) {
        if (it->second < 0) throw internal_error("tensor_decompose: negative multiplicity");
        it = it->second == 0 ? acc.erase(it) : std::next(it);
    }
    return acc;
}

DiscretizedCharacters::DiscretizedCharacters(const RootSystem& rs, long long level)
    : rs_(&rs), level_(level), q_(level + rs.dual_coxeter), weyl_(WeylGroup::enumerate(rs)) {
    if (level < 0) throw std::invalid_argument("level must be >= 0");
}

std::complex<double> DiscretizedCharacters::alternating_sum(const Weight& shifted,
                                                            const Weight& sigma_shifted) const {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t w = 0; w < weyl_.size(); ++w) {
        Rational t = rs_->inner_product(weyl_.apply(w, shifted), sigma_shifted) / Rational(q_);
        acc += static_cast<double>(weyl_.dets[w]) * cis_minus(t);
    }
    return acc;
}

std::complex<double> DiscretizedCharacters::chi(const Weight& lambda, const Weight& sigma) const {
    require_in_alcove(*rs_, sigma, level_, "sigma");
    AffineFoldResult f = fold_affine(*rs_, lambda, level_);
    if (f.sign == 0) return {0.0, 0.0};
    Weight sshift = sigma + rs_->rho;
    std::complex<double> num = alternating_sum(f.folded + rs_->rho, sshift);
    std::complex<double> den = alternating_sum(rs_->rho, sshift);
    return static_cast<double>(f.sign) * num / den;
}

double DiscretizedCharacters::sine_product(const Weight& lambda) const {
    Weight shifted = lambda + rs_->rho;
    double prod = 1.0;
    for (std::size_t a = 0; a < rs_->positive_roots.size(); ++a)
        prod *= sin_pi(rs_->inner_with_positive_root(shifted, a) / Rational(q_));
    return prod;
}

double DiscretizedCharacters::chi0(const Weight& lambda) const {
    AffineFoldResult f = fold_affine(*rs_, lambda, level_);
    if (f.sign == 0) return 0.0;
    return f.sign * asymptotic_dim(*rs_, f.folded, level_);
}

std::complex<double> discretized_character(const RootSystem& rs, const Weight& lambda,
                                           const Weight& sigma, long long k) {
    return DiscretizedCharacters(rs, k).chi(lambda, sigma);
}

double asymptotic_dim(const RootSystem& rs, const Weight& lambda, long long k) {
    require_in_alcove(rs, lambda, k, "lambda");
    long long q = k + rs.dual_coxeter;
    Weight shifted = lambda + rs.rho;
    if (rs.positive_roots.size() <= 20) {
        double prod = 1.0;
        for (std::size_t a = 0; a < rs.positive_roots.size(); ++a)
            prod *= sin_pi(rs.inner_with_positive_root(shifted, a) / Rational(q)) /
                    sin_pi(rs.rho_inner_positive_root(a) / Rational(q));
        return prod;
    }
    // Large root systems: all factors are positive, accumulate in log space.
    double lg = 0.0;
    for (std::size_t a = 0; a < rs.positive_roots.size(); ++a)
        lg += std::log(sin_pi(rs.inner_with_positive_root(shifted, a) / Rational(q))) -
              std::log(sin_pi(rs.rho_inner_positive_root(a) / Rational(q)));
    return std::exp(lg);
}

} // namespace alcove
