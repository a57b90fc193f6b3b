#include "alcove/scaling.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "alcove/alcove_markov.hpp"
#include "alcove/charlib.hpp"
#include "alcove/errors.hpp"
#include "alcove/fusion.hpp"

namespace alcove {

namespace {

long long dual_coxeter_of(Family family, int rank) {
    switch (family) {
    case Family::A: return rank + 1;
    case Family::B: return 2 * rank - 1;
    case Family::C: return rank + 1;
    case Family::D: return 2 * rank - 2;
    }
    throw internal_error("dual_coxeter_of: unhandled family");
}

long long isqrt(long long n) {
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while ((r + 1) * (r + 1) <= n) ++r;
    while (r * r > n) --r;
    return r;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::complex<double> complex_power(std::complex<double> base, int m) {
    std::complex<double> acc(1.0, 0.0);
    for (int i = 0; i < m; ++i) acc *= base;
    return acc;
}

} // namespace

std::vector<Rational> ConvolutionMeasure::point(const Weight& beta) const {
    long long q = level + dual_coxeter_of(family, rank);
    std::vector<Rational> p;
    for (std::size_t i = 0; i < beta.rank(); ++i) p.emplace_back(beta[i] + 1, q);
    return p;
}

nlohmann::json ConvolutionMeasure::to_json() const {
    nlohmann::json j;
    j["family"] = std::string(1, family_to_char(family));
    j["rank"] = rank;
    j["level"] = level;
    j["xi"] = xi.coords;
    j["gamma"] = gamma.coords;
    auto arr = nlohmann::json::array();
    for (const auto& [beta, p] : atoms) {
        nlohmann::json atom;
        atom["beta"] = beta.coords;
        auto pt = nlohmann::json::array();
        for (const auto& c : point(beta)) pt.push_back(c.str());
        atom["point"] = pt;
        atom["probability"] = p;
        arr.push_back(atom);
    }
    j["atoms"] = arr;
    return j;
}

std::string ConvolutionMeasure::to_csv() const {
    std::string out = "beta,point,probability\n";
    for (const auto& [beta, p] : atoms) {
        std::string b, pt;
        for (std::size_t i = 0; i < beta.rank(); ++i) {
            if (i) {
                b += ' ';
                pt += ' ';
            }
            b += std::to_string(beta[i]);
        }
        auto coords = point(beta);
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i) pt += ' ';
            pt += format_double(coords[i].to_double());
        }
        out += b + "," + pt + "," + format_double(p) + "\n";
    }
    return out;
}

ConvolutionMeasure convolution_measure(const RootSystem& rs, const Weight& xi,
                                       const Weight& gamma, long long k) {
    require_in_alcove(rs, xi, k, "xi");
    require_in_alcove(rs, gamma, k, "gamma");

    DiscretizedCharacters chars(rs, k);
    double c0x = chars.chi0(xi);
    double c0g = chars.chi0(gamma);

    ConvolutionMeasure mu;
    mu.family = rs.family;
    mu.rank = rs.rank;
    mu.level = k;
    mu.xi = xi;
    mu.gamma = gamma;

    double total = 0.0;
    for (const auto& [beta, n] : fusion_coeffs(rs, xi, gamma, k)) {
        double p = static_cast<double>(n) * chars.chi0(beta) / (c0x * c0g);
        mu.atoms[beta] = p;
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw internal_error("convolution_measure: atom masses sum to " + format_double(total));
    return mu;
}

double moment_identity_residual(const RootSystem& rs, const ConvolutionMeasure& mu,
                                const Weight& lambda) {
    require_in_alcove(rs, lambda, mu.level, "lambda");
    DiscretizedCharacters chars(rs, mu.level);
    double d = static_cast<double>(dim(rs, lambda));
    std::complex<double> lhs = chars.chi(lambda, mu.xi) / d * chars.chi(lambda, mu.gamma) / d;
    std::complex<double> rhs(0.0, 0.0);
    for (const auto& [beta, p] : mu.atoms) rhs += p * chars.chi(lambda, beta) / d;
    rhs *= chars.chi0(lambda) / d;
    return std::abs(lhs - rhs);
}

std::string Trajectory::to_jsonl() const {
    std::string out;
    for (std::size_t m = 0; m < samples.size(); ++m) {
        nlohmann::json j;
        j["m"] = m;
        j["weight"] = samples[m].coords;
        out += j.dump();
        out += '\n';
    }
    return out;
}

Trajectory simulate_trajectory(const RootSystem& rs, const Weight& gamma, long long n,
                               double t_max, unsigned long long seed) {
    if (n < 1) throw std::invalid_argument("simulate_trajectory: n must be positive");
    if (!(t_max > 0.0)) throw std::invalid_argument("simulate_trajectory: t_max must be positive");
    long long level = isqrt(n);
    require_in_alcove(rs, gamma, level, "gamma");
    long long steps = static_cast<long long>(std::floor(static_cast<double>(n) * t_max));
    if (steps > 100000000) throw bound_exceeded("simulate_trajectory: more than 1e8 steps");

    AlcoveKernel kern = build_kernel(rs, gamma, level);

    Trajectory traj;
    traj.family = rs.family;
    traj.rank = rs.rank;
    traj.n = n;
    traj.level = level;
    traj.gamma = gamma;
    traj.seed = seed;
    traj.samples.reserve(static_cast<std::size_t>(steps) + 1);

    std::mt19937_64 gen(seed);
    std::size_t cur = static_cast<std::size_t>(
        kern.alcove.position(Weight(static_cast<std::size_t>(rs.rank))));
    traj.samples.push_back(kern.alcove[cur]);
    for (long long m = 0; m < steps; ++m) {
        // Top 53 bits give a uniform double in [0,1) identically on every
        // platform; std::uniform_real_distribution is not pinned down.
        double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const auto& row = kern.matrix[cur];
        double acc = 0.0;
        std::size_t next = cur;
        bool chosen = false;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] <= 0.0) continue;
            acc += row[j];
            next = j;
            if (u < acc) {
                chosen = true;
                break;
            }
        }
        (void)chosen; // float deficit at the tail falls back on the last entry
        cur = next;
        traj.samples.push_back(kern.alcove[cur]);
    }
    return traj;
}

double character_moment_check(const RootSystem& rs, const Weight& gamma, long long k,
                              const Weight& sigma, int m) {
    if (m < 0) throw std::invalid_argument("character_moment_check: negative power");
    require_in_alcove(rs, sigma, k, "sigma");
    AlcoveKernel kern = build_kernel(rs, gamma, k);
    std::size_t size = kern.alcove.size();

    std::vector<double> v(size, 0.0), w(size);
    v[static_cast<std::size_t>(kern.alcove.position(Weight(static_cast<std::size_t>(rs.rank))))] =
        1.0;
    for (int step = 0; step < m; ++step) {
        std::fill(w.begin(), w.end(), 0.0);
        for (std::size_t p = 0; p < size; ++p) {
            if (v[p] == 0.0) continue;
            const auto& row = kern.matrix[p];
            for (std::size_t j = 0; j < size; ++j)
                if (row[j] > 0.0) w[j] += v[p] * row[j];
        }
        v.swap(w);
    }

    DiscretizedCharacters chars(rs, k);
    std::complex<double> lhs(0.0, 0.0);
    for (std::size_t p = 0; p < size; ++p) {
        if (v[p] == 0.0) continue;
        const Weight& beta = kern.alcove[p];
        lhs += v[p] * chars.chi(beta, sigma) / chars.chi0(beta);
    }
    std::complex<double> rhs =
        complex_power(chars.chi(gamma, sigma) / chars.chi0(gamma), m);
    return std::abs(lhs - rhs);
}

nlohmann::json BrownianFit::to_json() const {
    nlohmann::json j;
    j["c"] = c;
    j["residual"] = residual;
    j["n"] = n;
    j["level"] = level;
    auto arr = nlohmann::json::array();
    for (const auto& s : sigmas) arr.push_back(s.coords);
    j["sigmas"] = arr;
    j["exponents"] = exponents;
    j["scales"] = scales;
    return j;
}

BrownianFit brownian_exponent_fit(const RootSystem& rs, const Weight& gamma, long long n,
                                  double t, const std::vector<Weight>& sigmas) {
    if (n < 1) throw std::invalid_argument("brownian_exponent_fit: n must be positive");
    if (!(t > 0.0)) throw std::invalid_argument("brownian_exponent_fit: t must be positive");
    if (sigmas.empty()) throw std::invalid_argument("brownian_exponent_fit: no test weights");
    if (gamma.is_zero())
        throw std::invalid_argument(
            "brownian_exponent_fit: gamma = 0 never moves, the fit is rank-deficient");
    long long level = isqrt(n);
    require_in_alcove(rs, gamma, level, "gamma");
    long long m = static_cast<long long>(std::floor(static_cast<double>(n) * t));
    if (m < 1) throw std::invalid_argument("brownian_exponent_fit: horizon shorter than one step");

    DiscretizedCharacters chars(rs, level);
    double c0g = chars.chi0(gamma);
    Rational rho_norm = rs.inner_product(rs.rho, rs.rho);

    BrownianFit fit;
    fit.n = n;
    fit.level = level;
    fit.sigmas = sigmas;
    for (const Weight& sigma : sigmas) {
        require_in_alcove(rs, sigma, level, "sigma");
        if (sigma.is_zero())
            throw std::invalid_argument("brownian_exponent_fit: sigma = 0 carries no scale");
        double eig = std::abs(chars.chi(gamma, sigma)) / c0g;
        if (eig <= 0.0)
            throw std::invalid_argument(
                "brownian_exponent_fit: step character vanishes at a test weight");
        // E[psi_sigma(Lambda_m)] = chi0(sigma)/dim(sigma) * eig^m, evaluated
        // in log space so deep decays keep full precision.
        double log_f = std::log(chars.chi0(sigma) / static_cast<double>(dim(rs, sigma))) +
                       static_cast<double>(m) * std::log(eig);
        Weight shifted = sigma + rs.rho;
        double scale =
            (rs.inner_product(shifted, shifted) - rho_norm).to_double() * t;
        fit.exponents.push_back(-log_f);
        fit.scales.push_back(scale);
    }

    double sxy = 0.0, sxx = 0.0;
    for (std::size_t j = 0; j < fit.scales.size(); ++j) {
        sxy += fit.scales[j] * fit.exponents[j];
        sxx += fit.scales[j] * fit.scales[j];
    }
    if (sxx == 0.0) throw std::invalid_argument("brownian_exponent_fit: degenerate scales");
    fit.c = sxy / sxx;
    for (std::size_t j = 0; j < fit.scales.size(); ++j) {
        double predicted = fit.c * fit.scales[j];
        double dev = std::abs(fit.exponents[j] - predicted) / std::abs(predicted);
        fit.residual = std::max(fit.residual, dev);
    }
    return fit;
}

} // namespace alcove
