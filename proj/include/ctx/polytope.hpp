#pragma once

#include <vector>

#include "ctx/lp.hpp"
#include "ctx/rational.hpp"

namespace ctx {

using RationalVector = std::vector<Rational>;

/// {x in [lo, hi]^n : E x = f} with exact rational data.
struct BoxPolytope {
    std::size_t dimension = 0;
    Rational lower = -1;
    Rational upper = 1;
    std::vector<RationalVector> equality_rows;  // E
    RationalVector equality_rhs;                // f

    bool contains(const RationalVector& x) const;
    /// All vertices, deduplicated and sorted. Empty when the polytope is empty.
    std::vector<RationalVector> vertices() const;
    /// The polytope as a LinearSystem over shifted variables y = x - lower >= 0.
    LinearSystem shifted_system() const;
};

/// [-1,1]^n strategy box cut by homogeneous integer relations r.x = 0.
struct StrategyPolytope {
    std::size_t dimension = 0;
    std::vector<std::vector<int>> relations;

    BoxPolytope box() const;
    bool contains(const RationalVector& x) const { return box().contains(x); }
    std::vector<RationalVector> vertices() const { return box().vertices(); }
};

/// max c.x over the polytope. Throws EmptyPolytope.
struct LinearMax {
    Rational value;
    RationalVector argmax;
};
LinearMax maximize_linear(const BoxPolytope& p, const RationalVector& c);

}  // namespace ctx
