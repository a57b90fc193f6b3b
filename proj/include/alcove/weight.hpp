#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace alcove {

// Integral weight in the basis of fundamental weights: coords[i] is the
// pairing with the i-th simple coroot.  Comparison is lexicographic so that
// std::map iteration (and therefore every exported table) has a fixed order.
struct Weight {
    std::vector<long long> coords;

    Weight() = default;
    explicit Weight(std::size_t rank) : coords(rank, 0) {}
    Weight(std::initializer_list<long long> c) : coords(c) {}
    explicit Weight(std::vector<long long> c) : coords(std::move(c)) {}

    std::size_t rank() const { return coords.size(); }
    long long operator[](std::size_t i) const { return coords[i]; }
    long long& operator[](std::size_t i) { return coords[i]; }

    bool is_zero() const {
        for (long long c : coords)
            if (c != 0) return false;
        return true;
    }

    bool is_dominant() const {
        for (long long c : coords)
            if (c < 0) return false;
        return true;
    }

    friend Weight operator+(const Weight& a, const Weight& b) {
        Weight r(a.coords);
        for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
        return r;
    }
    friend Weight operator-(const Weight& a, const Weight& b) {
        Weight r(a.coords);
        for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
        return r;
    }
    friend Weight operator*(long long s, const Weight& a) {
        Weight r(a.coords);
        for (auto& c : r.coords) c *= s;
        return r;
    }
    Weight operator-() const { return -1 * *this; }

    friend bool operator==(const Weight& a, const Weight& b) { return a.coords == b.coords; }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
    friend bool operator<(const Weight& a, const Weight& b) { return a.coords < b.coords; }
};

inline std::string to_string(const Weight& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.coords.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w.coords[i]);
    }
    return s + ")";
}

} // namespace alcove
