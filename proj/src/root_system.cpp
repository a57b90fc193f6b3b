#include "alcove/root_system.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "alcove/errors.hpp"

namespace alcove {

namespace {

// Cartan matrix A[i][j] = <alpha_i, alpha_j^vee> for the classical families,
// Bourbaki numbering (branch/short node last).
std::vector<std::vector<long long>> cartan_matrix(Family f, int n) {
    std::vector<std::vector<long long>> A(static_cast<std::size_t>(n),
                                          std::vector<long long>(static_cast<std::size_t>(n), 0));
    auto at = [&](int i, int j) -> long long& {
        return A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };
    for (int i = 0; i < n; ++i) at(i, i) = 2;
    switch (f) {
    case Family::A:
        for (int i = 0; i + 1 < n; ++i) { at(i, i + 1) = -1; at(i + 1, i) = -1; }
        break;
    case Family::B:
        for (int i = 0; i + 1 < n; ++i) { at(i, i + 1) = -1; at(i + 1, i) = -1; }
        at(n - 2, n - 1) = -2; // alpha_{n-1} long against short coroot alpha_n^vee
        break;
    case Family::C:
        for (int i = 0; i + 1 < n; ++i) { at(i, i + 1) = -1; at(i + 1, i) = -1; }
        at(n - 1, n - 2) = -2; // alpha_n long against short coroot alpha_{n-1}^vee
        break;
    case Family::D:
        for (int i = 0; i + 2 < n; ++i) { at(i, i + 1) = -1; at(i + 1, i) = -1; }
        at(n - 3, n - 1) = -1;
        at(n - 1, n - 3) = -1;
        break;
    }
    return A;
}

// Half squared lengths (alpha_i|alpha_i)/2 under the normalization where the
// highest root (always long) has squared length 2.
std::vector<Rational> half_norms(Family f, int n) {
    std::vector<Rational> d(static_cast<std::size_t>(n), Rational(1));
    if (f == Family::B) d[static_cast<std::size_t>(n - 1)] = Rational(1, 2);
    if (f == Family::C)
        for (int i = 0; i + 1 < n; ++i) d[static_cast<std::size_t>(i)] = Rational(1, 2);
    return d;
}

// Inverse of an integer matrix over the rationals by Gauss-Jordan.
std::vector<std::vector<Rational>> invert(const std::vector<std::vector<long long>>& M) {
    std::size_t n = M.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(M[i][j]);
        a[i][n + i] = Rational(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == Rational(0)) ++piv;
        if (piv == n) throw internal_error("invert: singular Cartan matrix");
        std::swap(a[piv], a[col]);
        Rational inv = Rational(1) / a[col][col];
        for (auto& v : a[col]) v *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == Rational(0)) continue;
            Rational factor = a[row][col];
            for (std::size_t j = 0; j < 2 * n; ++j) a[row][j] -= factor * a[col][j];
        }
    }
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

std::size_t expected_positive_count(Family f, int n) {
    switch (f) {
    case Family::A: return static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) + 1) / 2;
    case Family::B:
    case Family::C: return static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    case Family::D: return static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) - 1);
    }
    return 0;
}

unsigned long long weyl_group_order(Family f, int n) {
    unsigned long long fact = 1;
    for (int i = 2; i <= (f == Family::A ? n + 1 : n); ++i) fact *= static_cast<unsigned long long>(i);
    switch (f) {
    case Family::A: return fact;
    case Family::B:
    case Family::C: return fact << n;
    case Family::D: return fact << (n - 1);
    }
    return 0;
}

} // namespace

Family family_from_char(char c) {
    switch (c) {
    case 'A': case 'a': return Family::A;
    case 'B': case 'b': return Family::B;
    case 'C': case 'c': return Family::C;
    case 'D': case 'd': return Family::D;
    }
    throw std::invalid_argument(std::string("unknown family '") + c + "'; expected A, B, C or D");
}

char family_to_char(Family f) {
    switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
    }
    return '?';
}

RootSystem RootSystem::build(Family family, int rank) {
    int min_rank = family == Family::A ? 1 : (family == Family::D ? 3 : 2);
    if (rank < min_rank)
        throw std::invalid_argument("family " + std::string(1, family_to_char(family)) +
                                    " requires rank >= " + std::to_string(min_rank));
    if (rank > 16) throw std::invalid_argument("rank > 16 not supported");

    RootSystem rs;
    rs.family = family;
    rs.rank = rank;
    std::size_t n = static_cast<std::size_t>(rank);

    auto A = cartan_matrix(family, rank);
    rs.simple_root_half_norm = half_norms(family, rank);

    rs.simple_roots.reserve(n);
    for (std::size_t i = 0; i < n; ++i) rs.simple_roots.emplace_back(A[i]);

    // nu(alpha_i^vee) = alpha_i / d_i stays integral because d_i is 1 or 1/2.
    rs.simple_coroots.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Weight cov(n);
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = Rational(A[i][j]) / rs.simple_root_half_norm[i];
            cov[j] = v.as_integer();
        }
        rs.simple_coroots.push_back(cov);
    }

    // Gram matrix of fundamental weights: solves A * G = diag(d).
    auto Ainv = invert(A);
    rs.gram.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rs.gram[i][j] = Ainv[i][j] * rs.simple_root_half_norm[j];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (rs.gram[i][j] != rs.gram[j][i]) throw internal_error("Gram matrix not symmetric");

    rs.rho = Weight(n);
    for (std::size_t i = 0; i < n; ++i) rs.rho[i] = 1;

    // Close the simple roots under simple reflections; positivity is tested
    // against rho since (beta|rho) > 0 exactly on positive roots.
    std::set<Weight> all;
    std::vector<Weight> queue(rs.simple_roots.begin(), rs.simple_roots.end());
    for (auto& q : queue) all.insert(q);
    while (!queue.empty()) {
        Weight b = queue.back();
        queue.pop_back();
        for (std::size_t i = 0; i < n; ++i) {
            Weight s = b;
            long long ci = b[i];
            for (std::size_t j = 0; j < n; ++j) s[j] -= ci * A[i][j];
            if (all.insert(s).second) queue.push_back(s);
        }
    }

    auto inner_ww = [&](const Weight& x, const Weight& y) {
        Rational acc(0);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            Rational row(0);
            for (std::size_t j = 0; j < n; ++j)
                if (y[j] != 0) row += rs.gram[i][j] * Rational(y[j]);
            acc += Rational(x[i]) * row;
        }
        return acc;
    };

    std::vector<std::pair<Rational, Weight>> pos;
    for (const auto& b : all) {
        Rational h = inner_ww(b, rs.rho);
        if (h > Rational(0)) pos.emplace_back(h, b);
    }
    if (pos.size() != expected_positive_count(family, rank))
        throw internal_error("positive root count mismatch");
    std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    rs.positive_roots.reserve(pos.size());
    for (auto& p : pos) rs.positive_roots.push_back(p.second);
    rs.theta = rs.positive_roots.back(); // unique maximizer of (.|rho)

    rs.positive_root_norm.reserve(pos.size());
    rs.root_inner_.assign(pos.size(), std::vector<Rational>(n));
    rs.rho_root_inner_.assign(pos.size(), Rational(0));
    for (std::size_t a = 0; a < rs.positive_roots.size(); ++a) {
        const Weight& al = rs.positive_roots[a];
        for (std::size_t i = 0; i < n; ++i) {
            Rational v(0);
            for (std::size_t j = 0; j < n; ++j)
                if (al[j] != 0) v += rs.gram[i][j] * Rational(al[j]);
            rs.root_inner_[a][i] = v;
            rs.rho_root_inner_[a] += v;
        }
        rs.positive_root_norm.push_back(inner_ww(al, al));
    }

    if (inner_ww(rs.theta, rs.theta) != Rational(2))
        throw internal_error("normalization broken: (theta|theta) != 2");

    rs.theta_pairing.assign(n, 0);
    long long comark_sum = 0;
    std::size_t theta_idx = rs.positive_roots.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        rs.theta_pairing[i] = rs.root_inner_[theta_idx][i].as_integer();
        comark_sum += rs.theta_pairing[i];
    }
    rs.dual_coxeter = 1 + comark_sum;
    rs.weyl_order = weyl_group_order(family, rank);
    return rs;
}

long long RootSystem::theta_dual_pairing(const Weight& x) const {
    long long s = 0;
    for (std::size_t i = 0; i < x.rank(); ++i) s += theta_pairing[i] * x[i];
    return s;
}

Rational RootSystem::inner_product(const Weight& x, const Weight& y) const {
    std::size_t n = static_cast<std::size_t>(rank);
    Rational acc(0);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        Rational row(0);
        for (std::size_t j = 0; j < n; ++j)
            if (y[j] != 0) row += gram[i][j] * Rational(y[j]);
        acc += Rational(x[i]) * row;
    }
    return acc;
}

Rational RootSystem::inner_with_positive_root(const Weight& x, std::size_t a) const {
    Rational acc(0);
    for (std::size_t i = 0; i < x.rank(); ++i)
        if (x[i] != 0) acc += Rational(x[i]) * root_inner_[a][i];
    return acc;
}

FiniteFoldResult RootSystem::fold_finite(const Weight& x) const {
    std::size_t n = static_cast<std::size_t>(rank);
    Weight y = x + rho;
    int sign = 1;
    // Each reflection strictly increases (y|rho), so this terminates; the cap
    // is a safety net only.
    for (long long iter = 0;; ++iter) {
        if (iter > 1000000) throw internal_error("fold_finite: did not converge");
        std::size_t worst = n;
        long long worst_val = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (y[i] < worst_val) { worst_val = y[i]; worst = i; }
        }
        if (worst == n) break;
        long long c = y[worst];
        for (std::size_t j = 0; j < n; ++j) y[j] -= c * simple_roots[worst][j];
        sign = -sign;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (y[i] == 0) return {y - rho, 0};
    return {y - rho, sign};
}

Weight RootSystem::fold_dominant(const Weight& x) const {
    std::size_t n = static_cast<std::size_t>(rank);
    Weight y = x;
    for (long long iter = 0;; ++iter) {
        if (iter > 1000000) throw internal_error("fold_dominant: did not converge");
        std::size_t worst = n;
        long long worst_val = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (y[i] < worst_val) { worst_val = y[i]; worst = i; }
        }
        if (worst == n) return y;
        long long c = y[worst];
        for (std::size_t j = 0; j < n; ++j) y[j] -= c * simple_roots[worst][j];
    }
}

std::vector<Weight> RootSystem::weyl_orbit(const Weight& dominant) const {
    if (!dominant.is_dominant())
        throw std::invalid_argument("weyl_orbit: weight " + to_string(dominant) + " is not dominant");
    std::size_t n = static_cast<std::size_t>(rank);
    std::set<Weight> seen{dominant};
    std::vector<Weight> queue{dominant};
    while (!queue.empty()) {
        Weight w = queue.back();
        queue.pop_back();
        for (std::size_t i = 0; i < n; ++i) {
            if (w[i] == 0) continue;
            Weight s = w;
            long long c = w[i];
            for (std::size_t j = 0; j < n; ++j) s[j] -= c * simple_roots[i][j];
            if (seen.insert(s).second) queue.push_back(s);
        }
    }
    return std::vector<Weight>(seen.begin(), seen.end());
}

nlohmann::json RootSystem::to_json() const {
    nlohmann::json j;
    j["family"] = std::string(1, family_to_char(family));
    j["rank"] = rank;
    j["h_dual"] = dual_coxeter;
    nlohmann::json g = nlohmann::json::array();
    for (const auto& row : gram) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& v : row) r.push_back(v.str());
        g.push_back(r);
    }
    j["gram"] = g;
    j["rho"] = rho.coords;
    j["theta"] = theta.coords;
    return j;
}

Weight WeylGroup::apply(std::size_t w, const Weight& x) const {
    std::size_t n = static_cast<std::size_t>(rank);
    Weight r(n);
    const auto& M = matrices[w];
    for (std::size_t i = 0; i < n; ++i) {
        long long acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += M[i * n + j] * x[j];
        r[i] = acc;
    }
    return r;
}

WeylGroup WeylGroup::enumerate(const RootSystem& rs, std::size_t max_size) {
    std::size_t n = static_cast<std::size_t>(rs.rank);
    if (rs.weyl_order > max_size)
        throw bound_exceeded("Weyl group order " + std::to_string(rs.weyl_order) +
                             " exceeds enumeration bound " + std::to_string(max_size));

    // Generator matrices: (s_i x)_j = x_j - A_ij * x_i.
    std::vector<std::vector<long long>> gens(n, std::vector<long long>(n * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) gens[i][j * n + j] = 1;
        for (std::size_t j = 0; j < n; ++j) gens[i][j * n + i] -= rs.simple_roots[i][j];
    }

    WeylGroup W;
    W.rank = rs.rank;
    std::vector<long long> id(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1;

    std::map<std::vector<long long>, int> seen;
    seen.emplace(id, 1);
    W.matrices.push_back(id);
    W.dets.push_back(1);
    for (std::size_t head = 0; head < W.matrices.size(); ++head) {
        auto cur = W.matrices[head]; // copy: vector may reallocate below
        int det = W.dets[head];
        for (std::size_t g = 0; g < n; ++g) {
            std::vector<long long> prod(n * n, 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) {
                    long long v = gens[g][i * n + k];
                    if (v == 0) continue;
                    for (std::size_t j = 0; j < n; ++j) prod[i * n + j] += v * cur[k * n + j];
                }
            if (seen.emplace(prod, -det).second) {
                W.matrices.push_back(prod);
                W.dets.push_back(-det);
            }
        }
    }
    if (W.size() != rs.weyl_order) throw internal_error("Weyl enumeration size mismatch");
    return W;
}

} // namespace alcove
