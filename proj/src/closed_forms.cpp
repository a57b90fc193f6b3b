#include "alcove/closed_forms.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "alcove/charlib.hpp"
#include "alcove/errors.hpp"
#include "alcove/rational.hpp"

namespace alcove {

namespace {

double sinpi(const Rational& r) { return std::sin(M_PI * r.to_double()); }
double sinpi(double r) { return std::sin(M_PI * r); }

Weight fundamental(int rank, int a) {
    Weight w(static_cast<std::size_t>(rank));
    w[static_cast<std::size_t>(a - 1)] = 1;
    return w;
}

// Euclidean coordinates the published formulas are written in: partial
// coordinate sums, centered for type A, half-integer spin part for B and D.
// Type C returns the sqrt2-scaled integer coordinates of the weight lattice.
std::vector<Rational> euclidean(const RootSystem& rs, const Weight& w) {
    int r = rs.rank;
    std::vector<Rational> x;
    switch (rs.family) {
    case Family::A: {
        int n = r + 1;
        x.assign(static_cast<std::size_t>(n), Rational(0));
        long long acc = 0;
        for (int i = r - 1; i >= 0; --i) {
            acc += w[static_cast<std::size_t>(i)];
            x[static_cast<std::size_t>(i)] = Rational(acc);
        }
        Rational mean(0);
        for (const auto& v : x) mean += v;
        mean /= Rational(n);
        for (auto& v : x) v -= mean;
        break;
    }
    case Family::B: {
        x.assign(static_cast<std::size_t>(r), Rational(w[static_cast<std::size_t>(r - 1)], 2));
        long long acc = 0;
        for (int i = r - 2; i >= 0; --i) {
            acc += w[static_cast<std::size_t>(i)];
            x[static_cast<std::size_t>(i)] += Rational(acc);
        }
        break;
    }
    case Family::C: {
        x.assign(static_cast<std::size_t>(r), Rational(0));
        long long acc = 0;
        for (int i = r - 1; i >= 0; --i) {
            acc += w[static_cast<std::size_t>(i)];
            x[static_cast<std::size_t>(i)] = Rational(acc);
        }
        break;
    }
    case Family::D: {
        x.assign(static_cast<std::size_t>(r), Rational(0));
        long long cm = w[static_cast<std::size_t>(r - 2)];
        long long cp = w[static_cast<std::size_t>(r - 1)];
        x[static_cast<std::size_t>(r - 1)] = Rational(cp - cm, 2);
        Rational half(cp + cm, 2);
        long long acc = 0;
        for (int i = r - 2; i >= 0; --i) {
            x[static_cast<std::size_t>(i)] = Rational(acc) + half;
            if (i >= 1) acc += w[static_cast<std::size_t>(i - 1)];
        }
        break;
    }
    }
    return x;
}

int euclidean_dim(const RootSystem& rs) {
    return rs.family == Family::A ? rs.rank + 1 : rs.rank;
}

void check_family(const RootSystem& rs, WalkModel model) {
    Family want;
    switch (model) {
    case WalkModel::AStandard:
    case WalkModel::ADiagonal: want = Family::A; break;
    case WalkModel::CStandard: want = Family::C; break;
    case WalkModel::DStandard:
    case WalkModel::DDiagonal: want = Family::D; break;
    default: want = Family::B; break;
    }
    if (rs.family != want)
        throw std::invalid_argument("walk model does not match the root system family");
}

// Period and residue class of the model's step lattice; shared by the
// published and the recomputed constants.  Throws when x and y sit in
// components the walk never connects.
void model_residue(const RootSystem& rs, WalkModel model, const Weight& x, const Weight& y,
                   int& period, int& residue) {
    auto ex = euclidean(rs, x);
    auto ey = euclidean(rs, y);
    int n = euclidean_dim(rs);
    switch (model) {
    case WalkModel::AStandard: {
        period = n;
        long long boxes = 0;
        for (int a = 1; a <= rs.rank; ++a)
            boxes += a * (y[static_cast<std::size_t>(a - 1)] - x[static_cast<std::size_t>(a - 1)]);
        residue = static_cast<int>(((boxes % n) + n) % n);
        return;
    }
    case WalkModel::ADiagonal:
        period = 1;
        residue = 0;
        return;
    case WalkModel::CStandard: {
        period = 2;
        long long m = 0;
        for (int i = 0; i < n; ++i)
            m += (ey[static_cast<std::size_t>(i)] - ex[static_cast<std::size_t>(i)]).as_integer();
        residue = static_cast<int>(((m % 2) + 2) % 2);
        return;
    }
    case WalkModel::DStandard: {
        period = 2;
        long long m = 0;
        for (int i = 0; i < n; ++i) {
            Rational d = ey[static_cast<std::size_t>(i)] - ex[static_cast<std::size_t>(i)];
            if (!d.is_integer())
                throw std::invalid_argument("standard walk does not connect x and y");
            m += d.as_integer();
        }
        residue = static_cast<int>(((m % 2) + 2) % 2);
        return;
    }
    case WalkModel::DDiagonal:
    case WalkModel::BDiagonal: {
        period = 2;
        Rational d = ey[0] - ex[0];
        residue = d.is_integer() ? 0 : 1;
        return;
    }
    case WalkModel::BStandardPath: {
        period = 1;
        residue = 0;
        for (int i = 0; i < n; ++i)
            if (!(ey[static_cast<std::size_t>(i)] - ex[static_cast<std::size_t>(i)]).is_integer())
                throw std::invalid_argument("standard path model does not connect x and y");
        return;
    }
    }
    throw internal_error("model_residue: unhandled model");
}

} // namespace

WalkModel walk_model(Family family, const std::string& steps) {
    if (steps != "standard" && steps != "diagonal")
        throw std::invalid_argument("unknown step set '" + steps + "' (standard or diagonal)");
    bool diag = steps == "diagonal";
    switch (family) {
    case Family::A: return diag ? WalkModel::ADiagonal : WalkModel::AStandard;
    case Family::B: return diag ? WalkModel::BDiagonal : WalkModel::BStandardPath;
    case Family::C:
        if (diag) throw std::invalid_argument("no closed form for diagonal steps in type C");
        return WalkModel::CStandard;
    case Family::D: return diag ? WalkModel::DDiagonal : WalkModel::DStandard;
    }
    throw std::invalid_argument("unknown family");
}

std::string walk_model_name(WalkModel model) {
    switch (model) {
    case WalkModel::AStandard: return "A-standard";
    case WalkModel::ADiagonal: return "A-diagonal";
    case WalkModel::CStandard: return "C-standard";
    case WalkModel::DStandard: return "D-standard";
    case WalkModel::DDiagonal: return "D-diagonal";
    case WalkModel::BStandardPath: return "B-standard-path";
    case WalkModel::BDiagonal: return "B-diagonal";
    }
    throw internal_error("walk_model_name: unhandled model");
}

std::vector<Weight> walk_model_gammas(const RootSystem& rs, WalkModel model) {
    check_family(rs, model);
    int r = rs.rank;
    switch (model) {
    case WalkModel::AStandard:
    case WalkModel::CStandard:
    case WalkModel::DStandard:
    case WalkModel::BStandardPath:
        if (model == WalkModel::DStandard && r < 3)
            throw std::invalid_argument("type D needs rank >= 3");
        return {fundamental(r, 1)};
    case WalkModel::ADiagonal: {
        std::vector<Weight> gs;
        gs.push_back(Weight(static_cast<std::size_t>(r)));
        for (int a = 1; a <= r; ++a) gs.push_back(fundamental(r, a));
        gs.push_back(Weight(static_cast<std::size_t>(r)));
        return gs;
    }
    case WalkModel::DDiagonal:
        if (r < 3) throw std::invalid_argument("type D needs rank >= 3");
        return {fundamental(r, r - 1), fundamental(r, r)};
    case WalkModel::BDiagonal: return {fundamental(r, r)};
    }
    throw internal_error("walk_model_gammas: unhandled model");
}

WalkConstants closed_form_constants(const RootSystem& rs, WalkModel model, long long k,
                                    const Weight& x, const Weight& y) {
    check_family(rs, model);
    walk_model_gammas(rs, model); // rank validation
    require_in_alcove(rs, x, k, "x");
    require_in_alcove(rs, y, k, "y");

    int n = euclidean_dim(rs);
    long long q = k + rs.dual_coxeter;
    auto ex = euclidean(rs, x);
    auto ey = euclidean(rs, y);

    WalkConstants out;
    model_residue(rs, model, x, y, out.period, out.residue);

    switch (model) {
    case WalkModel::AStandard:
    case WalkModel::ADiagonal: {
        if (model == WalkModel::AStandard) {
            double g = 1.0;
            for (int i = 2; i <= n; ++i) g *= sinpi(Rational(i, q)) / sinpi(Rational(i - 1, q));
            out.growth = g;
        } else {
            double g = 0.0;
            for (int m = 0; m <= n; ++m) {
                double term = 1.0;
                for (int i = 1; i <= m; ++i)
                    for (int j = m + 1; j <= n; ++j)
                        term *= sinpi(Rational(1 + j - i, q)) / sinpi(Rational(j - i, q));
                g += term;
            }
            out.growth = g;
        }
        auto boundary = [&](const std::vector<Rational>& e) {
            double b = 1.0;
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    b *= sinpi((e[static_cast<std::size_t>(i - 1)] -
                                e[static_cast<std::size_t>(j - 1)] + Rational(j - i)) /
                               Rational(q));
            return b;
        };
        out.boundary_x = boundary(ex);
        out.boundary_y = boundary(ey);
        return out;
    }

    case WalkModel::CStandard: {
        // Printed as displayed, stray sqrt(2) offsets and all: the growth
        // factor is chi at the non-weight point e_1 instead of the true
        // highest weight e_1/sqrt(2).
        double s2 = std::sqrt(2.0);
        double g = sinpi((s2 + n) / static_cast<double>(q)) / sinpi(Rational(n, q));
        for (int i = 2; i <= n; ++i) {
            g *= sinpi((i - s2 + 1) / static_cast<double>(2 * q)) / sinpi(Rational(i - 1, 2 * q));
            g *= sinpi((s2 + 2 * n + 1 - i) / static_cast<double>(2 * q)) /
                 sinpi(Rational(2 * n + 1 - i, 2 * q));
        }
        out.growth = g;

        auto ints = [&](const std::vector<Rational>& e) {
            std::vector<long long> s;
            for (const auto& v : e) s.push_back(v.as_integer());
            return s;
        };
        auto sx = ints(ex), sy = ints(ey);
        double diff_x = 1.0, sum_x = 1.0, long_x = 1.0;
        double diff_y = 1.0, sum_y = 1.0, long_y = 1.0;
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                auto a = [&](const std::vector<long long>& s) {
                    return Rational(s[static_cast<std::size_t>(i - 1)] -
                                        s[static_cast<std::size_t>(j - 1)] + j - i,
                                    2 * q);
                };
                auto b = [&](const std::vector<long long>& s) {
                    return Rational(s[static_cast<std::size_t>(i - 1)] +
                                        s[static_cast<std::size_t>(j - 1)] + 2 * n + 2 - i - j,
                                    2 * q);
                };
                diff_x *= sinpi(a(sx));
                sum_x *= sinpi(b(sx));
                diff_y *= sinpi(a(sy));
                sum_y *= sinpi(b(sy));
            }
            long_x *= sinpi(Rational(sx[static_cast<std::size_t>(i - 1)] + n - i + 1, q));
            long_y *= sinpi(Rational(sy[static_cast<std::size_t>(i - 1)] + n - i + 1, q));
        }
        // The display stacks fraction bars across four lines; read line by
        // line it divides each sum factor into x's side and multiplies it on
        // y's, against the plain product the sine-product analysis gives.
        out.boundary_x = diff_x / sum_x * long_x;
        out.boundary_y = sum_y / (diff_y * long_y);
        return out;
    }

    case WalkModel::DStandard:
    case WalkModel::DDiagonal: {
        if (model == WalkModel::DStandard) {
            double g = 1.0;
            for (int i = 2; i <= n; ++i) {
                g *= sinpi(Rational(i, q)) / sinpi(Rational(i - 1, q));
                g *= sinpi(Rational(2 * n - i, q)) / sinpi(Rational(2 * n - i - 1, q));
            }
            out.growth = g;
        } else {
            double plus = 1.0, minus = 1.0;
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) {
                    double f = sinpi(Rational(1 + 2 * n - i - j, q)) /
                               sinpi(Rational(2 * n - i - j, q));
                    plus *= f;
                    if (j <= n - 1) minus *= f;
                }
            for (int i = 1; i <= n - 1; ++i)
                minus *= sinpi(Rational(1 + n - i, q)) / sinpi(Rational(n - i, q));
            out.growth = plus + minus;
        }
        auto factors = [&](const std::vector<Rational>& e, double& diff, double& sum) {
            diff = 1.0;
            sum = 1.0;
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) {
                    diff *= sinpi((e[static_cast<std::size_t>(i - 1)] -
                                   e[static_cast<std::size_t>(j - 1)] + Rational(j - i)) /
                                  Rational(q));
                    sum *= sinpi((e[static_cast<std::size_t>(i - 1)] +
                                  e[static_cast<std::size_t>(j - 1)] + Rational(2 * n - i - j)) /
                                 Rational(q));
                }
        };
        double dx, sx, dy, sy;
        factors(ex, dx, sx);
        factors(ey, dy, sy);
        if (model == WalkModel::DStandard) {
            // Printed with the sum factor under a fraction bar.
            out.boundary_x = dx / sx;
            out.boundary_y = dy / sy;
        } else {
            out.boundary_x = dx * sx;
            out.boundary_y = dy * sy;
        }
        return out;
    }

    case WalkModel::BStandardPath:
    case WalkModel::BDiagonal: {
        if (model == WalkModel::BStandardPath) {
            double g = sinpi(Rational(2 * n + 1, 2 * q)) / sinpi(Rational(2 * n - 1, 2 * q));
            for (int i = 2; i <= n; ++i) {
                g *= sinpi(Rational(i, q)) / sinpi(Rational(i - 1, q));
                g *= sinpi(Rational(2 * n + 1 - i, q)) / sinpi(Rational(2 * n - i, q));
            }
            out.growth = g;
        } else {
            double g = 1.0;
            for (int i = 1; i <= n; ++i)
                g *= sinpi(Rational(n + 1 - i, q)) / sinpi(Rational(2 * (n - i) + 1, 2 * q));
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    g *= sinpi(Rational(2 * n + 2 - i - j, q)) /
                         sinpi(Rational(2 * n + 1 - i - j, q));
            out.growth = g;
        }
        auto boundary = [&](const std::vector<Rational>& e) {
            double b = 1.0;
            for (int i = 1; i <= n; ++i) {
                for (int j = i + 1; j <= n; ++j) {
                    b *= sinpi((e[static_cast<std::size_t>(i - 1)] -
                                e[static_cast<std::size_t>(j - 1)] + Rational(j - i)) /
                               Rational(q));
                    b *= sinpi((e[static_cast<std::size_t>(i - 1)] +
                                e[static_cast<std::size_t>(j - 1)] +
                                Rational(2 * n + 1 - i - j)) /
                               Rational(q));
                }
                b *= sinpi((e[static_cast<std::size_t>(i - 1)] + Rational(2 * (n - i) + 1, 2)) /
                           Rational(q));
            }
            return b;
        };
        out.boundary_x = boundary(ex);
        out.boundary_y = boundary(ey);
        return out;
    }
    }
    throw internal_error("closed_form_constants: unhandled model");
}

WalkConstants reference_constants(const RootSystem& rs, WalkModel model, long long k,
                                  const Weight& x, const Weight& y) {
    check_family(rs, model);
    require_in_alcove(rs, x, k, "x");
    require_in_alcove(rs, y, k, "y");

    DiscretizedCharacters chars(rs, k);
    WalkConstants out;
    out.growth = 0.0;
    for (const Weight& g : walk_model_gammas(rs, model)) out.growth += chars.chi0(g);
    out.boundary_x = chars.sine_product(x);
    out.boundary_y = chars.sine_product(y);
    model_residue(rs, model, x, y, out.period, out.residue);
    return out;
}

} // namespace alcove
