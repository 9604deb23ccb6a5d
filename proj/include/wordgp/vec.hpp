#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "wordgp/rng.hpp"

namespace wordgp {

using Vec = std::vector<double>;

inline double dot(std::span<const double> u, std::span<const double> v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

// Euclidean norm with max-abs scaling so tiny and huge components neither
// underflow nor overflow the intermediate sum of squares.
inline double norm(std::span<const double> v) {
    double maxabs = 0.0;
    for (double x : v) maxabs = std::max(maxabs, std::abs(x));
    if (maxabs == 0.0) return 0.0;
    double s = 0.0;
    for (double x : v) {
        const double t = x / maxabs;
        s += t * t;
    }
    return maxabs * std::sqrt(s);
}

inline bool is_zero(std::span<const double> v) {
    for (double x : v) {
        if (x != 0.0) return false;
    }
    return true;
}

// Scales v to unit norm in place. A zero-norm input is materialized as the
// exact zero vector (the undefined-direction case is handled by callers).
inline void normalize_in_place(std::span<double> v) {
    const double n = norm(v);
    if (n == 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        return;
    }
    for (double& x : v) x /= n;
}

// Cosine of the angle between u and v, clamped to [-1, 1] to absorb rounding.
// Zero-norm inputs yield 0 (callers guard the degenerate cases themselves).
inline double cosine_similarity(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size())
        throw std::runtime_error("cosine_similarity: dimension mismatch (" +
                                 std::to_string(u.size()) + " vs " + std::to_string(v.size()) + ")");
    const double nu = norm(u);
    const double nv = norm(v);
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

// Isotropic point on the unit sphere in R^dim.
inline Vec random_unit_vector(std::size_t dim, Rng& rng) {
    Vec v(dim);
    double n;
    do {
        for (double& x : v) x = rng.normal();
        n = norm(v);
    } while (n == 0.0);
    for (double& x : v) x /= n;
    return v;
}

}  // namespace wordgp
