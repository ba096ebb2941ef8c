#include <cmath>
#include <random>

#include "ctx/bounds.hpp"
#include "ctx/errors.hpp"

namespace ctx {

namespace {

QubitObservable random_axis(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        BlochVector v{g(rng), g(rng), g(rng)};
        const double r = v.norm();
        if (r > 1e-6) return QubitObservable::from_bloch(v * (1.0 / r));
    }
}

/// Unit observable along the Bloch part of o; keeps `fallback` when o has none.
QubitObservable aligned(const Mat2& o, const QubitObservable& fallback) {
    const BlochVector v = o.pauli_components();
    const double r = v.norm();
    if (r < 1e-15) return fallback;
    return QubitObservable::from_bloch(v * (1.0 / r));
}

struct Run {
    double value = 0.0;
    std::vector<QubitObservable> alice, bob;
    Vec4 state{};
    std::vector<double> trace;
    bool monotone = true;
};

Run ascend(const BellExpression& expr, std::vector<QubitObservable> alice, std::vector<QubitObservable> bob) {
    Run run;
    double previous = 0.0;
    for (int it = 0; it < 500; ++it) {
        const auto top = max_eigenvalue_hermitian(bell_operator(expr, alice, bob).matrix);
        if (it > 0 && top.value < previous - 1e-12) run.monotone = false;
        run.trace.push_back(top.value);
        run.value = top.value;
        run.state = top.vector;
        run.alice = alice;
        run.bob = bob;
        if (it > 0 && std::abs(top.value - previous) < 1e-12) break;
        previous = top.value;

        const Mat4 rho = Mat4::outer(top.vector);
        for (std::size_t x = 0; x < expr.rows(); ++x) {
            Mat2 c;
            for (std::size_t y = 0; y < expr.cols(); ++y)
                if (expr.at(x, y) != 0) c += bob[y].matrix() * Complex(expr.at(x, y));
            alice[x] = aligned(partial_trace_b(rho * kron(Mat2::identity(), c)), alice[x]);
        }
        for (std::size_t y = 0; y < expr.cols(); ++y) {
            Mat2 d;
            for (std::size_t x = 0; x < expr.rows(); ++x)
                if (expr.at(x, y) != 0) d += alice[x].matrix() * Complex(expr.at(x, y));
            bob[y] = aligned(partial_trace_a(rho * kron(d, Mat2::identity())), bob[y]);
        }
    }
    return run;
}

}  // namespace

SeesawResult quantum_seesaw(const BellExpression& expr, std::size_t restarts, std::uint64_t seed) {
    if (restarts == 0) throw OutOfRange("seesaw needs at least one restart");
    std::mt19937_64 rng(seed);
    SeesawResult best;
    best.restarts = restarts;
    bool have = false;
    bool monotone = true;
    for (std::size_t r = 0; r < restarts; ++r) {
        std::vector<QubitObservable> alice, bob;
        for (std::size_t x = 0; x < expr.rows(); ++x) alice.push_back(random_axis(rng));
        for (std::size_t y = 0; y < expr.cols(); ++y) bob.push_back(random_axis(rng));
        Run run = ascend(expr, std::move(alice), std::move(bob));
        monotone = monotone && run.monotone;
        if (!have || run.value > best.value) {
            have = true;
            best.value = run.value;
            best.alice = std::move(run.alice);
            best.bob = std::move(run.bob);
            best.state = run.state;
            best.trace = std::move(run.trace);
        }
    }
    best.monotone = monotone;
    return best;
}

}  // namespace ctx
