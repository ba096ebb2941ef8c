#include "ctx/lp.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "ctx/errors.hpp"

namespace ctx {

LinearSystem::LinearSystem(std::size_t num_vars) {
    for (std::size_t i = 0; i < num_vars; ++i) names_.push_back("x" + std::to_string(i));
}

std::size_t LinearSystem::add_variable(std::string name) {
    names_.push_back(std::move(name));
    return names_.size() - 1;
}

void LinearSystem::add(LinearConstraint row) {
    for (const auto& [v, c] : row.terms)
        if (v >= names_.size()) throw DimensionMismatch("constraint references an unknown variable");
    rows_.push_back(std::move(row));
}

void LinearSystem::add(std::vector<std::pair<std::size_t, Rational>> terms, Relation rel, Rational rhs,
                       std::string label) {
    add(LinearConstraint{std::move(terms), rel, std::move(rhs), std::move(label)});
}

Rational LinearSystem::evaluate(std::size_t row, std::span<const Rational> x) const {
    Rational s = 0;
    for (const auto& [v, c] : rows_[row].terms) s += c * x[v];
    return s;
}

bool LinearSystem::satisfied_by(std::span<const Rational> x) const {
    if (x.size() != num_vars()) return false;
    for (const auto& v : x)
        if (v < 0) return false;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational lhs = evaluate(i, x);
        switch (rows_[i].relation) {
            case Relation::less_equal: if (lhs > rows_[i].rhs) return false; break;
            case Relation::equal: if (lhs != rows_[i].rhs) return false; break;
            case Relation::greater_equal: if (lhs < rows_[i].rhs) return false; break;
        }
    }
    return true;
}

bool verify_certificate(const LinearSystem& sys, const FarkasCertificate& cert) {
    if (cert.multipliers.size() != sys.rows().size()) return false;
    std::vector<Rational> combined(sys.num_vars(), 0);
    Rational rhs = 0;
    for (std::size_t i = 0; i < sys.rows().size(); ++i) {
        const Rational& m = cert.multipliers[i];
        const auto rel = sys.rows()[i].relation;
        if (rel == Relation::less_equal && m < 0) return false;
        if (rel == Relation::greater_equal && m > 0) return false;
        if (m == 0) continue;
        for (const auto& [v, c] : sys.rows()[i].terms) combined[v] += m * c;
        rhs += m * sys.rows()[i].rhs;
    }
    return rhs < 0 && std::all_of(combined.begin(), combined.end(), [](const Rational& c) { return c >= 0; });
}

// =============================================================== simplex

namespace {

/// Dense tableau over standard form A'w = b', w >= 0, b' >= 0, with one
/// artificial column per row. Columns: structural, slacks, artificials.
class Tableau {
public:
    Tableau(const LinearSystem& sys) : n_(sys.num_vars()), m_(sys.rows().size()) {
        for (const auto& row : sys.rows())
            if (row.relation != Relation::equal) ++slacks_;
        cols_ = n_ + slacks_ + m_;
        t_.assign(m_, std::vector<Rational>(cols_ + 1, Rational(0)));
        sign_.assign(m_, 1);
        basis_.resize(m_);
        std::size_t slack = n_;
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& row = sys.rows()[i];
            auto& r = t_[i];
            for (const auto& [v, c] : row.terms) r[v] += c;
            if (row.relation == Relation::less_equal) r[slack++] = 1;
            else if (row.relation == Relation::greater_equal) r[slack++] = -1;
            r[cols_] = row.rhs;
            if (r[cols_] < 0) {
                sign_[i] = -1;
                for (auto& e : r) e = -e;
            }
            r[artificial(i)] = 1;
            basis_[i] = artificial(i);
        }
        active_.assign(m_, true);
    }

    std::size_t artificial(std::size_t row) const { return n_ + slacks_ + row; }
    bool is_artificial(std::size_t col) const { return col >= n_ + slacks_ && col < cols_; }

    /// Minimizes cost.w with Bland's rule; returns false when unbounded.
    bool minimize(const std::vector<Rational>& cost, bool allow_artificial) {
        // reduced costs z_j = c_j - sum_i c_{B_i} t_ij ; value = sum_i c_{B_i} b_i
        z_.assign(cols_ + 1, Rational(0));
        for (std::size_t j = 0; j < cols_; ++j) z_[j] = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
            if (!active_[i]) continue;
            const Rational& cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= cols_; ++j)
                if (t_[i][j] != 0) z_[j] -= cb * t_[i][j];
        }
        for (;;) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!allow_artificial && is_artificial(j)) continue;
                if (z_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (!enter) return true;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (!active_[i] || t_[i][*enter] <= 0) continue;
                Rational ratio = t_[i][cols_] / t_[i][*enter];
                if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, *enter);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        auto& pr = t_[r];
        const Rational inv = 1 / pr[c];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j <= cols_; ++j) {
            if (pr[j] != 0) {
                pr[j] *= inv;
                nz.push_back(j);
            }
        }
        auto eliminate = [&](std::vector<Rational>& row) {
            if (row[c] == 0) return;
            const Rational f = row[c];
            for (std::size_t j : nz) row[j] -= f * pr[j];
        };
        for (std::size_t i = 0; i < m_; ++i)
            if (i != r && active_[i]) eliminate(t_[i]);
        eliminate(z_);
        basis_[r] = c;
    }

    /// Pivots zero-level artificials out of the basis; deactivates redundant rows.
    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!active_[i] || !is_artificial(basis_[i])) continue;
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < n_ + slacks_; ++j)
                if (t_[i][j] != 0) {
                    col = j;
                    break;
                }
            if (col) pivot(i, *col);
            else active_[i] = false;
        }
    }

    Rational value() const { return -z_[cols_]; }
    const Rational& reduced_cost(std::size_t col) const { return z_[col]; }

    std::vector<Rational> structural_solution() const {
        std::vector<Rational> x(n_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (active_[i] && basis_[i] < n_) x[basis_[i]] = t_[i][cols_];
        return x;
    }

    std::size_t cols() const { return cols_; }
    std::size_t rows() const { return m_; }
    int row_sign(std::size_t i) const { return sign_[i]; }

private:
    std::size_t n_, m_, slacks_ = 0, cols_ = 0;
    std::vector<std::vector<Rational>> t_;
    std::vector<Rational> z_;
    std::vector<std::size_t> basis_;
    std::vector<int> sign_;
    std::vector<bool> active_;
};

struct PhaseOne {
    bool feasible;
    FarkasCertificate certificate;
};

PhaseOne run_phase_one(Tableau& tab) {
    std::vector<Rational> cost(tab.cols(), Rational(0));
    for (std::size_t i = 0; i < tab.rows(); ++i) cost[tab.artificial(i)] = 1;
    tab.minimize(cost, true);
    if (tab.value() == 0) return {true, {}};
    // Dual y_i = 1 - z[art_i]; Farkas multipliers on original rows are -y_i * sign_i.
    FarkasCertificate cert;
    cert.multipliers.resize(tab.rows());
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        const Rational y = 1 - tab.reduced_cost(tab.artificial(i));
        cert.multipliers[i] = -y * tab.row_sign(i);
    }
    return {false, std::move(cert)};
}

LpResult simplex_feasibility(const LinearSystem& sys) {
    Tableau tab(sys);
    auto p1 = run_phase_one(tab);
    LpResult res;
    res.method = LpMethod::simplex;
    if (!p1.feasible) {
        res.status = LpStatus::infeasible;
        res.certificate = std::move(p1.certificate);
        return res;
    }
    res.status = LpStatus::feasible;
    res.x = tab.structural_solution();
    return res;
}

// =============================================================== Fourier-Motzkin

struct FmRow {
    std::vector<Rational> a;     // coefficients
    Rational b;                  // a.x <= b
    std::vector<Rational> mult;  // multipliers over the original rows
};

constexpr std::size_t kFmMaxVars = 40;
constexpr std::size_t kFmMaxRows = 4000;

/// nullopt when the row budget is exceeded.
std::optional<LpResult> fourier_motzkin(const LinearSystem& sys) {
    const std::size_t n = sys.num_vars();
    const std::size_t m = sys.rows().size();
    std::vector<FmRow> rows;
    auto push = [&](std::size_t orig, int sgn) {
        FmRow r{std::vector<Rational>(n, Rational(0)), sgn * sys.rows()[orig].rhs, std::vector<Rational>(m, Rational(0))};
        for (const auto& [v, c] : sys.rows()[orig].terms) r.a[v] += sgn * c;
        r.mult[orig] = sgn;
        rows.push_back(std::move(r));
    };
    for (std::size_t i = 0; i < m; ++i) {
        switch (sys.rows()[i].relation) {
            case Relation::less_equal: push(i, 1); break;
            case Relation::greater_equal: push(i, -1); break;
            case Relation::equal: push(i, 1); push(i, -1); break;
        }
    }
    for (std::size_t v = 0; v < n; ++v) {  // -x_v <= 0, not tied to any original row
        FmRow r{std::vector<Rational>(n, Rational(0)), Rational(0), std::vector<Rational>(m, Rational(0))};
        r.a[v] = -1;
        rows.push_back(std::move(r));
    }

    std::vector<std::vector<FmRow>> stages;
    for (std::size_t v = 0; v < n; ++v) {
        stages.push_back(rows);
        std::vector<FmRow> pos, neg, next;
        for (auto& r : rows) {
            if (r.a[v] > 0) pos.push_back(std::move(r));
            else if (r.a[v] < 0) neg.push_back(std::move(r));
            else next.push_back(std::move(r));
        }
        if (next.size() + pos.size() * neg.size() > kFmMaxRows) return std::nullopt;
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                const Rational fp = -q.a[v];
                const Rational fq = p.a[v];
                FmRow r{std::vector<Rational>(n), fp * p.b + fq * q.b, std::vector<Rational>(m)};
                for (std::size_t k = 0; k < n; ++k) r.a[k] = fp * p.a[k] + fq * q.a[k];
                for (std::size_t k = 0; k < m; ++k) r.mult[k] = fp * p.mult[k] + fq * q.mult[k];
                r.a[v] = 0;
                next.push_back(std::move(r));
            }
        }
        // drop exact duplicates of (a, b); keep the first (its multipliers are as valid)
        std::map<std::pair<std::vector<Rational>, Rational>, bool> seen;
        rows.clear();
        for (auto& r : next) {
            auto key = std::make_pair(r.a, r.b);
            if (seen.emplace(std::move(key), true).second) rows.push_back(std::move(r));
        }
    }

    LpResult res;
    res.method = LpMethod::fourier_motzkin;
    for (const auto& r : rows) {
        if (r.b < 0) {
            res.status = LpStatus::infeasible;
            res.certificate.multipliers = r.mult;
            return res;
        }
    }

    // Back substitution: stage v holds rows over variables v..n-1.
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t v = n; v-- > 0;) {
        std::optional<Rational> lo, hi;
        for (const auto& r : stages[v]) {
            if (r.a[v] == 0) continue;
            Rational rest = r.b;
            for (std::size_t k = v + 1; k < n; ++k) rest -= r.a[k] * x[k];
            const Rational bound = rest / r.a[v];
            if (r.a[v] > 0) {
                if (!hi || bound < *hi) hi = bound;
            } else {
                if (!lo || bound > *lo) lo = bound;
            }
        }
        x[v] = lo ? *lo : (hi ? std::min(*hi, Rational(0)) : Rational(0));
    }
    res.status = LpStatus::feasible;
    res.x = std::move(x);
    return res;
}

}  // namespace

LpResult solve_feasibility(const LinearSystem& sys, LpMethod method) {
    if (method == LpMethod::fourier_motzkin || (method == LpMethod::automatic && sys.num_vars() <= kFmMaxVars)) {
        if (auto r = fourier_motzkin(sys)) return *r;
        if (method == LpMethod::fourier_motzkin)
            throw TooLarge("Fourier-Motzkin elimination exceeded its row budget");
    }
    return simplex_feasibility(sys);
}

LpResult maximize(const LinearSystem& sys, std::span<const Rational> objective) {
    if (objective.size() != sys.num_vars()) throw DimensionMismatch("objective length differs from variable count");
    Tableau tab(sys);
    auto p1 = run_phase_one(tab);
    LpResult res;
    res.method = LpMethod::simplex;
    if (!p1.feasible) {
        res.status = LpStatus::infeasible;
        res.certificate = std::move(p1.certificate);
        return res;
    }
    tab.drive_out_artificials();
    std::vector<Rational> cost(tab.cols(), Rational(0));
    for (std::size_t j = 0; j < objective.size(); ++j) cost[j] = -objective[j];
    if (!tab.minimize(cost, false)) {
        res.status = LpStatus::unbounded;
        return res;
    }
    res.status = LpStatus::feasible;
    res.x = tab.structural_solution();
    res.objective = -tab.value();
    return res;
}

}  // namespace ctx
