#pragma once

// Three tiers of bounds on Bell expressions and on the average correlation
// Delta: local (deterministic +-1 strategies), constrained (strategies cut by
// the relations a noncontextual model must respect) and quantum.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctx/algebra.hpp"
#include "ctx/bell.hpp"
#include "ctx/polytope.hpp"
#include "ctx/rational.hpp"
#include "ctx/scenario.hpp"

namespace ctx {

struct LocalBound {
    Rational value;
    std::vector<int> a;  // maximizing +-1 assignment for Alice
    std::vector<int> b;
};

/// Exhaustive scan over {+-1}^(n_A+n_B); for each a the best b is sign(M^T a).
/// Throws TooLarge when n_A + n_B > 24.
LocalBound local_bound(const BellExpression& expr);

struct ConstrainedBound {
    Rational value;
    RationalVector a;
    RationalVector b;
};

/// max a^T M b over a in polyA, b in polyB. The bilinear objective is linear
/// in either argument, so the maximum sits at a vertex of each polytope: we
/// enumerate vertices of one side and solve an exact LP over the other, in
/// both directions, and insist that the two agree. Throws EmptyPolytope.
ConstrainedBound constrained_bound(const BellExpression& expr, const StrategyPolytope& polyA,
                                   const StrategyPolytope& polyB);

/// Strategy polytopes carved out by a scenario's relations.
StrategyPolytope alice_polytope(const OperationalScenario& s);
StrategyPolytope bob_polytope(const OperationalScenario& s);

/// Tr[rho * bell_operator(expr, alice, bob)]. Throws DimensionMismatch.
double quantum_value_at(const BellExpression& expr, std::span<const QubitObservable> alice,
                        std::span<const QubitObservable> bob, const TwoQubitState& state);

/// (1/2n) sum_t sum_a Tr[rho_{t}^a P_{pairing[t]}^a] over the measurement
/// party's observables. An empty pairing means the identity.
double delta_quantum(const OperationalScenario& s, std::span<const std::size_t> pairing = {});

struct UncBoundCertificate {
    std::vector<Rational> xi;   // attaining response profile xi_t(+|lambda) in one cell
    std::vector<Rational> eta;  // max(xi_t, 1 - xi_t)
};

struct DeltaUncBound {
    Rational value;
    UncBoundCertificate certificate;
};

/// max (1/n) sum_t max(xi_t, 1 - xi_t) over xi in [0,1]^n subject to the
/// measurement equivalences. Convex objective, so a vertex attains it.
/// Throws NoEquivalences when the scenario has none.
DeltaUncBound delta_unc_bound(const OperationalScenario& s);

// ------------------------------------------------------------- seesaw

struct SeesawResult {
    double value = 0.0;
    std::vector<QubitObservable> alice;
    std::vector<QubitObservable> bob;
    Vec4 state{};
    std::vector<double> trace;  // value per iteration of the best run
    bool monotone = true;       // every run never decreased by more than 1e-12
    std::size_t restarts = 0;
};

/// Alternating ascent from random settings: state <- top eigenvector of the
/// Bell operator, then each A_x along the Bloch part of Tr_B[rho (I (x) C_x)],
/// C_x = sum_y M_xy B_y, then each B_y symmetrically. Stops when the value
/// moves by less than 1e-12 or after 500 iterations. Best over restarts;
/// deterministic for a given seed.
SeesawResult quantum_seesaw(const BellExpression& expr, std::size_t restarts, std::uint64_t seed);

}  // namespace ctx
