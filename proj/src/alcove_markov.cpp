#include "alcove/alcove_markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "alcove/errors.hpp"
#include "alcove/fusion.hpp"
#include "alcove/smith.hpp"

namespace alcove {

namespace {

void enumerate_rec(const RootSystem& rs, long long budget, std::size_t i, Weight& cur,
                   std::vector<Weight>& out) {
    if (i == static_cast<std::size_t>(rs.rank)) {
        out.push_back(cur);
        return;
    }
    long long c = rs.theta_pairing[i];
    for (long long v = 0; v * c <= budget; ++v) {
        cur[i] = v;
        enumerate_rec(rs, budget - v * c, i + 1, cur, out);
    }
    cur[i] = 0;
}

// ln pi(lambda) = sum_{alpha > 0} ln(4 sin^2(pi (lambda+rho|alpha)/q)) - ln index.
// Every angle lies strictly inside (0, pi) for lambda in the closed alcove.
double log_invariant(const RootSystem& rs, const Weight& lambda, long long q,
                     double log_index) {
    const double pi = std::acos(-1.0);
    Weight shifted = lambda + rs.rho;
    double s = -log_index;
    for (std::size_t a = 0; a < rs.positive_roots.size(); ++a) {
        double t = (rs.inner_with_positive_root(shifted, a) / Rational(q)).to_double();
        s += 2.0 * std::log(2.0 * std::sin(pi * t));
    }
    return s;
}

std::vector<std::vector<long long>> fused_rows(const RootSystem& rs, const Weight& gamma,
                                               long long k, const AlcoveIndex& alcove) {
    std::vector<std::vector<long long>> rows(alcove.size(),
                                             std::vector<long long>(alcove.size(), 0));
    for (std::size_t l = 0; l < alcove.size(); ++l) {
        for (const auto& [beta, n] : fusion_coeffs(rs, alcove[l], gamma, k)) {
            long long b = alcove.position(beta);
            if (b < 0) throw internal_error("fused product left the alcove");
            rows[l][static_cast<std::size_t>(b)] = n;
        }
    }
    return rows;
}

} // namespace

AlcoveIndex AlcoveIndex::enumerate(const RootSystem& rs, long long k) {
    if (k < 0) throw std::invalid_argument("level must be nonnegative");
    AlcoveIndex idx;
    idx.level_ = k;
    Weight cur(static_cast<std::size_t>(rs.rank));
    enumerate_rec(rs, k, 0, cur, idx.weights_);
    std::size_t p = 0;
    for (const Weight& w : idx.weights_) idx.position_[w] = p++;
    return idx;
}

long long AlcoveIndex::position(const Weight& w) const {
    auto it = position_.find(w);
    return it == position_.end() ? -1 : static_cast<long long>(it->second);
}

long long lattice_index(const RootSystem& rs, long long k) {
    if (k < 0) throw std::invalid_argument("level must be nonnegative");
    long long q = k + rs.dual_coxeter;
    std::vector<std::vector<long long>> m(static_cast<std::size_t>(rs.rank));
    for (int i = 0; i < rs.rank; ++i) {
        m[static_cast<std::size_t>(i)] = rs.simple_coroots[static_cast<std::size_t>(i)].coords;
        for (auto& c : m[static_cast<std::size_t>(i)]) c *= q;
    }
    auto divisors = smith_normal_form(m);
    if (divisors.size() != static_cast<std::size_t>(rs.rank))
        throw internal_error("scaled coroot basis is singular");
    __int128 prod = 1;
    for (long long d : divisors) {
        prod *= d;
        if (prod > static_cast<__int128>(9'000'000'000'000'000'000LL))
            throw bound_exceeded("lattice index exceeds 64 bits");
    }
    return static_cast<long long>(prod);
}

InvariantMeasure invariant_measure(const RootSystem& rs, long long k) {
    AlcoveIndex alcove = AlcoveIndex::enumerate(rs, k);
    long long q = k + rs.dual_coxeter;
    InvariantMeasure m;
    m.level = k;
    m.index = lattice_index(rs, k);
    double log_index = std::log(static_cast<double>(m.index));
    double total = 0.0;
    for (const Weight& w : alcove.weights()) {
        double v = std::exp(log_invariant(rs, w, q, log_index));
        m.values[w] = v;
        total += v;
    }
    if (std::fabs(total - 1.0) > 1e-8)
        throw internal_error("invariant measure does not sum to 1");
    return m;
}

nlohmann::json InvariantMeasure::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [w, v] : values)
        entries.push_back({{"weight", w.coords}, {"pi", v}});
    return {{"level", level}, {"index", index}, {"entries", entries}};
}

PeriodClasses period_and_classes(const std::vector<std::vector<long long>>& support) {
    const std::size_t n = support.size();
    std::vector<std::vector<int>> adj(n), radj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (support[i][j] > 0) {
                adj[i].push_back(static_cast<int>(j));
                radj[j].push_back(static_cast<int>(i));
            }

    // Kosaraju, iterative: finishing order on the graph, then sweep the
    // transpose in reverse finish order.
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(s), 0}};
        seen[s] = 1;
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            if (next < adj[static_cast<std::size_t>(u)].size()) {
                int v = adj[static_cast<std::size_t>(u)][next++];
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back({v, 0});
                }
            } else {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[static_cast<std::size_t>(*it)] != -1) continue;
        std::vector<int> stack{*it};
        comp[static_cast<std::size_t>(*it)] = ncomp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : radj[static_cast<std::size_t>(u)])
                if (comp[static_cast<std::size_t>(v)] == -1) {
                    comp[static_cast<std::size_t>(v)] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }

    // Relabel classes by smallest member so output order is deterministic.
    std::vector<int> first(static_cast<std::size_t>(ncomp), -1);
    for (std::size_t i = 0; i < n; ++i)
        if (first[static_cast<std::size_t>(comp[i])] == -1)
            first[static_cast<std::size_t>(comp[i])] = static_cast<int>(i);
    std::vector<int> by_first(static_cast<std::size_t>(ncomp));
    std::iota(by_first.begin(), by_first.end(), 0);
    std::sort(by_first.begin(), by_first.end(),
              [&](int a, int b) { return first[static_cast<std::size_t>(a)] < first[static_cast<std::size_t>(b)]; });
    std::vector<int> relabel(static_cast<std::size_t>(ncomp));
    for (int newid = 0; newid < ncomp; ++newid)
        relabel[static_cast<std::size_t>(by_first[static_cast<std::size_t>(newid)])] = newid;

    PeriodClasses pc;
    pc.class_of.resize(n);
    pc.classes.assign(static_cast<std::size_t>(ncomp), {});
    for (std::size_t i = 0; i < n; ++i) {
        pc.class_of[i] = relabel[static_cast<std::size_t>(comp[i])];
        pc.classes[static_cast<std::size_t>(pc.class_of[i])].push_back(static_cast<int>(i));
    }
    pc.irreducible = (ncomp == 1) && n > 0;

    // Period of each class: gcd of depth[u]+1-depth[v] over internal edges.
    pc.depth.assign(n, 0);
    long long overall = 0;
    for (const auto& members : pc.classes) {
        std::vector<int> depth(n, -1);
        std::vector<int> queue{members[0]};
        depth[static_cast<std::size_t>(members[0])] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            int u = queue[h];
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (pc.class_of[static_cast<std::size_t>(v)] != pc.class_of[static_cast<std::size_t>(u)])
                    continue;
                if (depth[static_cast<std::size_t>(v)] == -1) {
                    depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(v);
                }
            }
        }
        long long g = 0;
        for (int u : members)
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (pc.class_of[static_cast<std::size_t>(v)] != pc.class_of[static_cast<std::size_t>(u)])
                    continue;
                g = std::gcd(g, static_cast<long long>(
                                    std::llabs(depth[static_cast<std::size_t>(u)] + 1 -
                                               depth[static_cast<std::size_t>(v)])));
            }
        for (int u : members) pc.depth[static_cast<std::size_t>(u)] = depth[static_cast<std::size_t>(u)];
        overall = std::gcd(overall, g);
    }
    pc.period = static_cast<int>(overall);
    return pc;
}

AlcoveKernel build_kernel(const RootSystem& rs, const Weight& gamma, long long k) {
    require_in_alcove(rs, gamma, k, "gamma");
    AlcoveKernel ker;
    ker.family = rs.family;
    ker.rank = rs.rank;
    ker.level = k;
    ker.gamma = gamma;
    ker.alcove = AlcoveIndex::enumerate(rs, k);
    const std::size_t n = ker.alcove.size();
    ker.fused = fused_rows(rs, gamma, k, ker.alcove);

    DiscretizedCharacters chars(rs, k);
    std::vector<double> c0(n);
    for (std::size_t i = 0; i < n; ++i) c0[i] = chars.chi0(ker.alcove[i]);
    double c0g = chars.chi0(gamma);

    ker.matrix.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t l = 0; l < n; ++l) {
        double sum = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            if (ker.fused[l][b] == 0) continue;
            ker.matrix[l][b] = static_cast<double>(ker.fused[l][b]) * c0[b] / (c0[l] * c0g);
            sum += ker.matrix[l][b];
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw internal_error("kernel row does not sum to 1");
    }

    InvariantMeasure inv = invariant_measure(rs, k);
    ker.invariant.resize(n);
    for (std::size_t i = 0; i < n; ++i) ker.invariant[i] = inv.values.at(ker.alcove[i]);
    for (std::size_t b = 0; b < n; ++b) {
        double s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += ker.invariant[l] * ker.matrix[l][b];
        if (std::fabs(s - ker.invariant[b]) > 1e-10)
            throw internal_error("invariant vector is not stationary");
    }

    ker.spectrum.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        EigenPair& ep = ker.spectrum[s];
        ep.sigma = ker.alcove[s];
        ep.value = chars.chi(gamma, ep.sigma) / c0g;
        ep.vector.resize(n);
        double vmax = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            ep.vector[l] = chars.chi(ker.alcove[l], ep.sigma) / c0[l];
            vmax = std::max(vmax, std::abs(ep.vector[l]));
        }
        for (std::size_t l = 0; l < n; ++l) {
            std::complex<double> acc = 0.0;
            for (std::size_t b = 0; b < n; ++b)
                if (ker.fused[l][b] != 0) acc += ker.matrix[l][b] * ep.vector[b];
            if (std::abs(acc - ep.value * ep.vector[l]) > 1e-8 * std::max(1.0, vmax))
                throw internal_error("analytic eigenpair fails the kernel equation");
        }
    }

    ker.cycles = period_and_classes(ker.fused);
    return ker;
}

std::string AlcoveKernel::matrix_csv() const {
    auto cell = [](const Weight& w) {
        std::string s;
        for (std::size_t i = 0; i < w.rank(); ++i) {
            if (i) s += ' ';
            s += std::to_string(w[i]);
        }
        return s;
    };
    std::string out = "lambda";
    for (const Weight& w : alcove.weights()) out += "," + cell(w);
    out += "\n";
    char buf[64];
    for (std::size_t l = 0; l < alcove.size(); ++l) {
        out += cell(alcove[l]);
        for (std::size_t b = 0; b < alcove.size(); ++b) {
            std::snprintf(buf, sizeof buf, "%.17g", matrix[l][b]);
            out += ",";
            out += buf;
        }
        out += "\n";
    }
    return out;
}

nlohmann::json AlcoveKernel::spectrum_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const EigenPair& ep : spectrum) {
        nlohmann::json vec = nlohmann::json::array();
        for (const auto& z : ep.vector) vec.push_back({z.real(), z.imag()});
        arr.push_back({{"sigma", ep.sigma.coords},
                       {"value", {ep.value.real(), ep.value.imag()}},
                       {"vector", vec}});
    }
    return arr;
}

std::vector<DirichletPair> dirichlet_spectrum(const RootSystem& rs, const Weight& gamma,
                                              long long k) {
    require_in_alcove(rs, gamma, k, "gamma");
    WeightMultiplicityMap wm = weight_multiplicities(rs, gamma);
    for (const auto& [mu, mult] : wm.entries)
        if (mult != 1 || rs.fold_dominant(mu) != gamma)
            throw std::invalid_argument("gamma is not minuscule");

    AlcoveIndex alcove = AlcoveIndex::enumerate(rs, k);
    const std::size_t n = alcove.size();
    DiscretizedCharacters chars(rs, k);
    double d = static_cast<double>(dim(rs, gamma));
    auto fused = fused_rows(rs, gamma, k, alcove);

    std::vector<DirichletPair> out(n);
    for (std::size_t s = 0; s < n; ++s) {
        DirichletPair& dp = out[s];
        dp.sigma = alcove[s];
        std::complex<double> step = chars.chi(gamma, dp.sigma) / d;
        dp.eigenvalue = 1.0 - step;
        dp.eigenfunction.resize(n);
        for (std::size_t l = 0; l < n; ++l) dp.eigenfunction[l] = chars.chi(alcove[l], dp.sigma);
        // For minuscule steps every exit lands exactly on a wall where the
        // character vanishes, so the killed free walk agrees with the fused
        // support and the eigen equation can be checked on integer rows.
        for (std::size_t l = 0; l < n; ++l) {
            std::complex<double> acc = 0.0;
            for (std::size_t b = 0; b < n; ++b)
                if (fused[l][b] != 0)
                    acc += static_cast<double>(fused[l][b]) * dp.eigenfunction[b];
            if (std::abs(acc / d - step * dp.eigenfunction[l]) > 1e-8)
                throw internal_error("killed-walk eigenpair fails the kernel equation");
        }
    }
    return out;
}

AsymptoticEstimate asymptotic_estimate(const RootSystem& rs, const Weight& lambda,
                                       const Weight& beta, const Weight& gamma, long long k,
                                       long long n) {
    require_in_alcove(rs, lambda, k, "lambda");
    require_in_alcove(rs, beta, k, "beta");
    require_in_alcove(rs, gamma, k, "gamma");
    if (n < 0) throw std::invalid_argument("step count must be nonnegative");

    AlcoveIndex alcove = AlcoveIndex::enumerate(rs, k);
    PeriodClasses pc = period_and_classes(fused_rows(rs, gamma, k, alcove));
    if (!pc.irreducible) throw std::invalid_argument("fused kernel is not irreducible");

    AsymptoticEstimate est;
    est.period = pc.period > 0 ? pc.period : 1;
    long long lp = alcove.position(lambda);
    long long bp = alcove.position(beta);
    long long r = (pc.depth[static_cast<std::size_t>(bp)] -
                   pc.depth[static_cast<std::size_t>(lp)]) % est.period;
    if (r < 0) r += est.period;
    est.residue = static_cast<int>(r);
    if (n % est.period != r) {
        est.wrong_residue = true;
        est.value = 0.0;
        return est;
    }

    DiscretizedCharacters chars(rs, k);
    long long q = k + rs.dual_coxeter;
    double log_index = std::log(static_cast<double>(lattice_index(rs, k)));
    double log_value = std::log(static_cast<double>(est.period)) +
                       log_invariant(rs, beta, q, log_index) +
                       std::log(chars.chi0(lambda)) - std::log(chars.chi0(beta)) +
                       static_cast<double>(n) * std::log(chars.chi0(gamma));
    if (log_value > 700.0) throw bound_exceeded("asymptotic estimate overflows double");
    est.value = std::exp(log_value);
    return est;
}

} // namespace alcove
