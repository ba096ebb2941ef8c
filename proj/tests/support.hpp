#pragma once

// Seeded generators shared by the property tests. Unit Bloch directions are
// normalized Gaussian triples; pure states are normalized Gaussian 4-vectors.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "ctx/algebra.hpp"

namespace testing_support {

inline ctx::BlochVector random_direction(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    for (;;) {
        ctx::BlochVector v{g(rng), g(rng), g(rng)};
        const double r = v.norm();
        if (r > 1e-3) return v * (1.0 / r);
    }
}

inline ctx::QubitObservable random_observable(std::mt19937_64& rng) {
    return ctx::QubitObservable::from_bloch(random_direction(rng));
}

inline ctx::Vec4 random_pure(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ctx::Vec4 v;
    double n2 = 0.0;
    for (auto& c : v) {
        c = {g(rng), g(rng)};
        n2 += std::norm(c);
    }
    for (auto& c : v) c /= std::sqrt(n2);
    return v;
}

inline ctx::Mat4 random_hermitian(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    ctx::Mat4 h;
    for (std::size_t i = 0; i < 4; ++i) {
        h(i, i) = g(rng);
        for (std::size_t j = i + 1; j < 4; ++j) {
            h(i, j) = {g(rng), g(rng)};
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

// Characteristic polynomial by Faddeev-LeVerrier; coefficients c[0..4] of
// lambda^k, c[4] = 1.
inline std::array<double, 5> char_poly(const ctx::Mat4& h) {
    std::array<ctx::Complex, 5> c{};
    c[4] = 1.0;
    ctx::Mat4 m;  // M_0 = 0
    for (int k = 1; k <= 4; ++k) {
        m = h * m + ctx::Mat4::identity() * c[5 - k];
        c[4 - k] = -(h * m).trace() / static_cast<double>(k);
    }
    return {c[0].real(), c[1].real(), c[2].real(), c[3].real(), c[4].real()};
}

inline double horner(const std::vector<double>& p, double x) {
    double v = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

inline double newton_from_above(const std::vector<double>& p, double x) {
    for (int it = 0; it < 500; ++it) {
        std::vector<double> dp;
        for (std::size_t k = 1; k < p.size(); ++k) dp.push_back(static_cast<double>(k) * p[k]);
        const double d = horner(dp, x);
        if (d == 0.0) break;
        const double step = horner(p, x) / d;
        x -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

// All-real roots, descending: Newton from an upper bound converges to the
// largest root; deflate and repeat, then polish on the original polynomial.
inline std::vector<double> real_roots(const std::array<double, 5>& coeffs, double upper) {
    std::vector<double> p(coeffs.begin(), coeffs.end());
    const std::vector<double> original = p;
    std::vector<double> roots;
    while (p.size() > 1) {
        const double r = newton_from_above(original, newton_from_above(p, upper));
        roots.push_back(r);
        std::vector<double> q(p.size() - 1);
        double carry = 0.0;
        for (std::size_t k = p.size() - 1; k >= 1; --k) {
            carry = p[k] + carry * r;
            q[k - 1] = carry;
        }
        p = q;
        upper = r + 1e-9;
    }
    return roots;
}

}  // namespace testing_support
