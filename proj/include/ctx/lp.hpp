#pragma once

// Exact rational linear feasibility and optimization over x >= 0.
//
// Infeasible systems come with a Farkas certificate: one multiplier per row,
// >= 0 on "<=" rows, <= 0 on ">=" rows and free on "=" rows, such that the
// combined row has every variable coefficient >= 0 while its right-hand side
// is negative. Since x >= 0, that combined row reads "nonnegative <= negative".

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctx/rational.hpp"

namespace ctx {

enum class Relation { less_equal, equal, greater_equal };

struct LinearConstraint {
    std::vector<std::pair<std::size_t, Rational>> terms;  // sparse (variable, coefficient)
    Relation relation = Relation::equal;
    Rational rhs;
    std::string label;
};

class LinearSystem {
public:
    explicit LinearSystem(std::size_t num_vars = 0);

    std::size_t add_variable(std::string name);
    void add(LinearConstraint row);
    void add(std::vector<std::pair<std::size_t, Rational>> terms, Relation rel, Rational rhs, std::string label = {});

    std::size_t num_vars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<LinearConstraint>& rows() const { return rows_; }

    /// Left-hand side of row i at x.
    Rational evaluate(std::size_t row, std::span<const Rational> x) const;
    /// Exact check of every row and x >= 0.
    bool satisfied_by(std::span<const Rational> x) const;

private:
    std::vector<std::string> names_;
    std::vector<LinearConstraint> rows_;
};

struct FarkasCertificate {
    std::vector<Rational> multipliers;  // one per row of the system
};

/// Exact check of the certificate conditions described above.
bool verify_certificate(const LinearSystem& sys, const FarkasCertificate& cert);

enum class LpStatus { feasible, infeasible, unbounded };
enum class LpMethod { automatic, fourier_motzkin, simplex };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    LpMethod method = LpMethod::simplex;
    std::vector<Rational> x;          // feasible / optimal point
    Rational objective;               // for maximize()
    FarkasCertificate certificate;    // when infeasible
};

/// Automatic: Fourier-Motzkin up to 40 variables (falls back when the
/// eliminated system grows past 4000 rows), simplex with Bland's rule otherwise.
LpResult solve_feasibility(const LinearSystem& sys, LpMethod method = LpMethod::automatic);

/// max c.x over the system (two-phase simplex, Bland's rule).
LpResult maximize(const LinearSystem& sys, std::span<const Rational> objective);

}  // namespace ctx
