#include "alcove/fusion.hpp"

#include <algorithm>
#include <sstream>

#include "alcove/alcove_markov.hpp"
#include "alcove/charlib.hpp"
#include "alcove/errors.hpp"

namespace alcove {

AffineFoldResult fold_affine(const RootSystem& rs, const Weight& x, long long k) {
    if (k < 0) throw std::invalid_argument("fold_affine: level must be >= 0");
    std::size_t n = static_cast<std::size_t>(rs.rank);
    long long q = k + rs.dual_coxeter;
    Weight y = x + rs.rho;
    int sign = 1;
    int count = 0;
    bool wall = false;
    // Every reflection used is across a wall separating y from the interior
    // point rho, so the distance to rho strictly decreases and the loop
    // terminates; the cap is a safety net.
    for (long long iter = 0;; ++iter) {
        if (iter > 1000000) throw internal_error("fold_affine: did not converge");
        std::size_t worst = n;
        long long worst_val = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (y[i] < worst_val) { worst_val = y[i]; worst = i; }
        if (worst != n) {
            long long c = y[worst];
            for (std::size_t j = 0; j < n; ++j) y[j] -= c * rs.simple_roots[worst][j];
            sign = -sign;
            ++count;
            continue;
        }
        // dominant now; a zero coordinate marks a finite wall
        for (std::size_t i = 0; i < n; ++i)
            if (y[i] == 0) wall = true;
        long long t = rs.theta_dual_pairing(y);
        if (t > q) {
            long long c = t - q;
            for (std::size_t j = 0; j < n; ++j) y[j] -= c * rs.theta[j];
            sign = -sign;
            ++count;
            continue;
        }
        if (t == q) wall = true;
        break;
    }
    return {y - rs.rho, wall ? 0 : sign, count};
}

std::map<Weight, long long> fusion_coeffs(const RootSystem& rs, const Weight& lambda,
                                          const Weight& gamma, long long k) {
    require_in_alcove(rs, lambda, k, "lambda");
    require_in_alcove(rs, gamma, k, "gamma");
    WeightMultiplicityMap wm = weight_multiplicities(rs, gamma);
    std::map<Weight, long long> acc;
    for (const auto& [mu, m] : wm.entries) {
        AffineFoldResult f = fold_affine(rs, lambda + mu, k);
        if (f.sign == 0) continue;
        acc[f.folded] += f.sign * m;
    }
    for (auto it = acc.begin(); it != acc.end();) {
        if (it->second < 0) throw internal_error("fusion_coeffs: negative multiplicity at " +
                                                 to_string(it->first));
        it = it->second == 0 ? acc.erase(it) : std::next(it);
    }
    return acc;
}

std::map<Weight, BigInt> fusion_power(const RootSystem& rs, const Weight& lambda,
                                      const Weight& gamma, int n, long long k) {
    require_in_alcove(rs, lambda, k, "lambda");
    require_in_alcove(rs, gamma, k, "gamma");
    if (n < 0) throw std::invalid_argument("fusion_power: n must be >= 0");
    std::map<Weight, std::map<Weight, long long>> rows; // one-step rows, built lazily
    std::map<Weight, BigInt> v{{lambda, BigInt(1)}};
    for (int step = 0; step < n; ++step) {
        std::map<Weight, BigInt> next;
        for (const auto& [w, c] : v) {
            auto it = rows.find(w);
            if (it == rows.end()) it = rows.emplace(w, fusion_coeffs(rs, w, gamma, k)).first;
            for (const auto& [b, m] : it->second) next[b] += c * m;
        }
        v = std::move(next);
    }
    return v;
}

Weight dual_weight(const RootSystem& rs, const Weight& gamma) {
    return rs.fold_dominant(-gamma);
}

double verify_fusion_identity(const RootSystem& rs, const Weight& gamma, long long k) {
    require_in_alcove(rs, gamma, k, "gamma");
    DiscretizedCharacters ev(rs, k);
    AlcoveIndex alcove = AlcoveIndex::enumerate(rs, k);
    std::size_t m = alcove.size();
    // chi table indexed [weight][sigma]
    std::vector<std::vector<std::complex<double>>> chi(m, std::vector<std::complex<double>>(m));
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t s = 0; s < m; ++s) chi[b][s] = ev.chi(alcove[b], alcove[s]);
    std::size_t gpos = static_cast<std::size_t>(alcove.position(gamma));
    double worst = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
        auto N = fusion_coeffs(rs, alcove[l], gamma, k);
        for (std::size_t s = 0; s < m; ++s) {
            std::complex<double> rhs{0.0, 0.0};
            for (const auto& [b, c] : N)
                rhs += static_cast<double>(c) * chi[static_cast<std::size_t>(alcove.position(b))][s];
            worst = std::max(worst, std::abs(chi[l][s] * chi[gpos][s] - rhs));
        }
    }
    return worst;
}

namespace {

nlohmann::json bigint_json(const BigInt& v) {
    if (v <= BigInt(INT64_MAX) && v >= BigInt(INT64_MIN))
        return nlohmann::json(v.convert_to<long long>());
    return nlohmann::json(v.str());
}

BigInt bigint_from_json(const nlohmann::json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    return BigInt(j.get<long long>());
}

std::string weight_field(const Weight& w) {
    std::string s;
    for (std::size_t i = 0; i < w.rank(); ++i) {
        if (i) s += ' ';
        s += std::to_string(w[i]);
    }
    return s;
}

} // namespace

nlohmann::json FusionTable::to_json() const {
    nlohmann::json j;
    j["family"] = std::string(1, family_to_char(family));
    j["rank"] = rank;
    j["level"] = level;
    j["gamma"] = gamma.coords;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [key, coeff] : entries) {
        const auto& [lam, n, beta] = key;
        arr.push_back({{"lambda", lam.coords}, {"n", n}, {"beta", beta.coords},
                       {"coeff", bigint_json(coeff)}});
    }
    j["entries"] = arr;
    return j;
}

FusionTable FusionTable::from_json(const nlohmann::json& j) {
    FusionTable t;
    t.family = family_from_char(j.at("family").get<std::string>().at(0));
    t.rank = j.at("rank").get<int>();
    t.level = j.at("level").get<long long>();
    t.gamma = Weight(j.at("gamma").get<std::vector<long long>>());
    for (const auto& e : j.at("entries")) {
        Weight lam(e.at("lambda").get<std::vector<long long>>());
        Weight beta(e.at("beta").get<std::vector<long long>>());
        t.entries[{lam, e.at("n").get<int>(), beta}] = bigint_from_json(e.at("coeff"));
    }
    return t;
}

std::string FusionTable::to_csv() const {
    std::ostringstream os;
    os << "family,rank,level,gamma,lambda,n,beta,coeff\n";
    for (const auto& [key, coeff] : entries) {
        const auto& [lam, n, beta] = key;
        os << family_to_char(family) << ',' << rank << ',' << level << ',' << weight_field(gamma)
           << ',' << weight_field(lam) << ',' << n << ',' << weight_field(beta) << ',' << coeff
           << '\n';
    }
    return os.str();
}

FusionTable fusion_table(const RootSystem& rs, const Weight& gamma, long long k, int n_max) {
    require_in_alcove(rs, gamma, k, "gamma");
    if (n_max < 1) throw std::invalid_argument("fusion_table: n_max must be >= 1");
    FusionTable t;
    t.family = rs.family;
    t.rank = rs.rank;
    t.level = k;
    t.gamma = gamma;
    AlcoveIndex alcove = AlcoveIndex::enumerate(rs, k);
    std::map<Weight, std::map<Weight, long long>> rows;
    for (std::size_t l = 0; l < alcove.size(); ++l)
        rows.emplace(alcove[l], fusion_coeffs(rs, alcove[l], gamma, k));
    for (std::size_t l = 0; l < alcove.size(); ++l) {
        std::map<Weight, BigInt> v{{alcove[l], BigInt(1)}};
        for (int n = 1; n <= n_max; ++n) {
            std::map<Weight, BigInt> next;
            for (const auto& [w, c] : v)
                for (const auto& [b, m] : rows.at(w)) next[b] += c * m;
            v = std::move(next);
            for (const auto& [b, c] : v)
                if (c != 0) t.entries[{alcove[l], n, b}] = c;
        }
    }
    return t;
}

} // namespace alcove
