#include "alcove/smith.hpp"

#include <algorithm>
#include <cstdlib>

namespace alcove {

namespace {

// Smallest nonzero entry (by absolute value) of m[t..][t..]; false if none.
bool find_pivot(const std::vector<std::vector<long long>>& m, std::size_t t, std::size_t& pr,
                std::size_t& pc) {
    bool found = false;
    long long best = 0;
    for (std::size_t i = t; i < m.size(); ++i) {
        for (std::size_t j = t; j < m[i].size(); ++j) {
            long long a = std::llabs(m[i][j]);
            if (a != 0 && (!found || a < best)) {
                found = true;
                best = a;
                pr = i;
                pc = j;
            }
        }
    }
    return found;
}

} // namespace

std::vector<long long> smith_normal_form(std::vector<std::vector<long long>> m) {
    std::vector<long long> divisors;
    if (m.empty() || m[0].empty()) return divisors;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    const std::size_t steps = std::min(rows, cols);

    for (std::size_t t = 0; t < steps; ++t) {
        bool done = false;
        while (!done) {
            std::size_t pr = t, pc = t;
            if (!find_pivot(m, t, pr, pc)) return divisors;
            std::swap(m[t], m[pr]);
            for (std::size_t i = t; i < rows; ++i) std::swap(m[i][t], m[i][pc]);

            for (;;) {
                bool clean = true;
                for (std::size_t i = t + 1; i < rows; ++i) {
                    long long f = m[i][t] / m[t][t];
                    if (f != 0)
                        for (std::size_t j = t; j < cols; ++j) m[i][j] -= f * m[t][j];
                    if (m[i][t] != 0) clean = false;
                }
                for (std::size_t j = t + 1; j < cols; ++j) {
                    long long f = m[t][j] / m[t][t];
                    if (f != 0)
                        for (std::size_t i = t; i < rows; ++i) m[i][j] -= f * m[i][t];
                    if (m[t][j] != 0) clean = false;
                }
                if (clean) break;
                // A leftover entry is now smaller than the pivot; promote it.
                find_pivot(m, t, pr, pc);
                std::swap(m[t], m[pr]);
                for (std::size_t i = t; i < rows; ++i) std::swap(m[i][t], m[i][pc]);
            }

            // Divisibility chain: fold one non-multiple into row t and redo.
            done = true;
            for (std::size_t i = t + 1; i < rows && done; ++i)
                for (std::size_t j = t + 1; j < cols && done; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (std::size_t c = t; c < cols; ++c) m[t][c] += m[i][c];
                        done = false;
                    }
        }
        divisors.push_back(std::llabs(m[t][t]));
    }
    return divisors;
}

} // namespace alcove
