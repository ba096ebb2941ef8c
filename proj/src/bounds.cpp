#include "ctx/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "ctx/errors.hpp"
#include "ctx/ontology.hpp"

namespace ctx {

LocalBound local_bound(const BellExpression& expr) {
    const std::size_t na = expr.rows(), nb = expr.cols();
    if (na + nb > 24) throw TooLarge("local bound scan limited to 24 observables in total");

    LocalBound best;
    bool have = false;
    long long best_value = 0;
    std::vector<int> a(na), b(nb);
    for (std::size_t code = 0; code < (std::size_t{1} << na); ++code) {
        for (std::size_t x = 0; x < na; ++x) a[x] = (code >> (na - 1 - x)) & 1 ? -1 : 1;
        long long value = 0;
        for (std::size_t y = 0; y < nb; ++y) {
            long long col = 0;
            for (std::size_t x = 0; x < na; ++x) col += static_cast<long long>(a[x]) * expr.at(x, y);
            b[y] = col < 0 ? -1 : 1;
            value += col < 0 ? -col : col;
        }
        if (!have || value > best_value) {
            have = true;
            best_value = value;
            best.a = a;
            best.b = b;
        }
    }
    best.value = Rational(best_value);
    return best;
}

namespace {

RationalVector side_objective(const BellExpression& expr, const RationalVector& fixed, bool fixed_is_alice) {
    const std::size_t n = fixed_is_alice ? expr.cols() : expr.rows();
    RationalVector c(n, Rational(0));
    for (std::size_t x = 0; x < expr.rows(); ++x)
        for (std::size_t y = 0; y < expr.cols(); ++y) {
            const int m = expr.at(x, y);
            if (m == 0) continue;
            if (fixed_is_alice) c[y] += m * fixed[x];
            else c[x] += m * fixed[y];
        }
    return c;
}

LinearMax maximize_over(const StrategyPolytope& p, const RationalVector& c) {
    if (p.relations.empty()) {
        // plain box: each coordinate goes to the bound favored by its sign
        LinearMax out;
        out.value = 0;
        for (const auto& cj : c) {
            out.argmax.emplace_back(cj < 0 ? -1 : 1);
            out.value += cj < 0 ? -cj : cj;
        }
        return out;
    }
    return maximize_linear(p.box(), c);
}

std::optional<ConstrainedBound> sweep(const BellExpression& expr, const StrategyPolytope& outer,
                                      const StrategyPolytope& inner, bool outer_is_alice) {
    const auto verts = outer.vertices();
    if (verts.empty()) throw EmptyPolytope(std::string(outer_is_alice ? "Alice" : "Bob") + "'s strategy polytope is empty");
    std::optional<ConstrainedBound> best;
    for (const auto& v : verts) {
        const auto res = maximize_over(inner, side_objective(expr, v, outer_is_alice));
        if (!best || res.value > best->value) {
            ConstrainedBound cb;
            cb.value = res.value;
            cb.a = outer_is_alice ? v : res.argmax;
            cb.b = outer_is_alice ? res.argmax : v;
            best = std::move(cb);
        }
    }
    return best;
}

}  // namespace

ConstrainedBound constrained_bound(const BellExpression& expr, const StrategyPolytope& polyA,
                                   const StrategyPolytope& polyB) {
    if (polyA.dimension != expr.rows() || polyB.dimension != expr.cols())
        throw DimensionMismatch("polytope dimensions do not match the expression");
    auto forward = sweep(expr, polyA, polyB, true);
    auto backward = sweep(expr, polyB, polyA, false);
    if (forward->value != backward->value)
        throw std::logic_error("constrained bound: vertex sweeps disagree (" + to_string(forward->value) + " vs " +
                               to_string(backward->value) + ")");
    return *forward;
}

StrategyPolytope alice_polytope(const OperationalScenario& s) { return {s.alice.size(), s.relations_for(Party::alice)}; }
StrategyPolytope bob_polytope(const OperationalScenario& s) { return {s.bob.size(), s.relations_for(Party::bob)}; }

double quantum_value_at(const BellExpression& expr, std::span<const QubitObservable> alice,
                        std::span<const QubitObservable> bob, const TwoQubitState& state) {
    return expectation(state, bell_operator(expr, alice, bob));
}

namespace {

Party delta_party(const OperationalScenario& s) {
    try {
        return measurement_party(s);
    } catch (const NoEquivalences&) {
        return Party::alice;
    }
}

}  // namespace

double delta_quantum(const OperationalScenario& s, std::span<const std::size_t> pairing) {
    const auto& fam = s.family(delta_party(s));
    const std::size_t n = fam.size();
    if (!pairing.empty() && pairing.size() != n) throw DimensionMismatch("pairing length differs from family size");
    double total = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t u = pairing.empty() ? t : pairing[t];
        if (u >= n) throw OutOfRange("pairing index out of range");
        for (int alpha : {1, -1})
            total += expectation(projector_of(fam.observables[t], alpha), projector_of(fam.observables[u], alpha));
    }
    return total / static_cast<double>(2 * n);
}

DeltaUncBound delta_unc_bound(const OperationalScenario& s) {
    const auto problem = compile_measurement(s, ResponseMode::indeterministic);
    const std::size_t n = problem.measurements;

    BoxPolytope box;
    box.dimension = n;
    box.lower = 0;
    box.upper = 1;
    for (const auto& row : problem.system.rows()) {
        if (row.relation != Relation::equal) continue;
        RationalVector dense(n, Rational(0));
        for (const auto& [j, c] : row.terms) dense[j] += c;
        box.equality_rows.push_back(std::move(dense));
        box.equality_rhs.push_back(row.rhs);
    }
    const auto verts = box.vertices();
    if (verts.empty()) throw EmptyPolytope("measurement equivalences admit no response profile");

    DeltaUncBound best;
    bool have = false;
    for (const auto& xi : verts) {
        Rational total = 0;
        std::vector<Rational> eta;
        for (const auto& v : xi) {
            eta.push_back(std::max(v, Rational(1) - v));
            total += eta.back();
        }
        total /= static_cast<long>(n);
        if (!have || total > best.value) {
            have = true;
            best.value = total;
            best.certificate = {xi, std::move(eta)};
        }
    }
    return best;
}

}  // namespace ctx
