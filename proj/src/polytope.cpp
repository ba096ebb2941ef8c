#include "ctx/polytope.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "ctx/errors.hpp"

namespace ctx {

namespace {

/// Row-reduces [E | f]; returns independent rows or nullopt when inconsistent.
std::optional<std::pair<std::vector<RationalVector>, RationalVector>> independent_rows(
    const std::vector<RationalVector>& e, const RationalVector& f, std::size_t n) {
    std::vector<RationalVector> rows;
    for (std::size_t i = 0; i < e.size(); ++i) {
        RationalVector r = e[i];
        r.push_back(f[i]);
        rows.push_back(std::move(r));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            const Rational factor = rows[i][col] / rows[rank][col];
            for (std::size_t k = col; k <= n; ++k) rows[i][k] -= factor * rows[rank][k];
        }
        ++rank;
    }
    for (std::size_t i = rank; i < rows.size(); ++i)
        if (rows[i][n] != 0) return std::nullopt;
    std::vector<RationalVector> out_e;
    RationalVector out_f;
    for (std::size_t i = 0; i < rank; ++i) {
        out_f.push_back(rows[i][n]);
        rows[i].pop_back();
        out_e.push_back(std::move(rows[i]));
    }
    return std::make_pair(std::move(out_e), std::move(out_f));
}

/// Solves the square system a.x = b exactly; nullopt when singular.
std::optional<RationalVector> solve_square(std::vector<RationalVector> a, RationalVector b) {
    const std::size_t k = b.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        while (piv < k && a[piv][col] == 0) ++piv;
        if (piv == k) return std::nullopt;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t i = 0; i < k; ++i) {
            if (i == col || a[i][col] == 0) continue;
            const Rational factor = a[i][col] / a[col][col];
            for (std::size_t j = col; j < k; ++j) a[i][j] -= factor * a[col][j];
            b[i] -= factor * b[col];
        }
    }
    RationalVector x(k);
    for (std::size_t i = 0; i < k; ++i) x[i] = b[i] / a[i][i];
    return x;
}

void for_each_subset(std::size_t n, std::size_t k, auto&& fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

bool BoxPolytope::contains(const RationalVector& x) const {
    if (x.size() != dimension) return false;
    for (const auto& v : x)
        if (v < lower || v > upper) return false;
    for (std::size_t i = 0; i < equality_rows.size(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < dimension; ++j) s += equality_rows[i][j] * x[j];
        if (s != equality_rhs[i]) return false;
    }
    return true;
}

std::vector<RationalVector> BoxPolytope::vertices() const {
    const auto reduced = independent_rows(equality_rows, equality_rhs, dimension);
    if (!reduced) return {};
    const auto& [e, f] = *reduced;
    const std::size_t rank = e.size();
    std::set<RationalVector> found;

    // A vertex has n - rank coordinates at a bound; the rest solve E_S x_S = f - E_~S x_~S.
    for_each_subset(dimension, rank, [&](const std::vector<std::size_t>& free) {
        std::vector<std::size_t> fixed;
        for (std::size_t j = 0, k = 0; j < dimension; ++j) {
            if (k < free.size() && free[k] == j) ++k;
            else fixed.push_back(j);
        }
        for (std::size_t mask = 0; mask < (std::size_t{1} << fixed.size()); ++mask) {
            RationalVector x(dimension);
            for (std::size_t k = 0; k < fixed.size(); ++k) x[fixed[k]] = (mask >> k) & 1 ? upper : lower;
            std::vector<RationalVector> a(rank, RationalVector(rank));
            RationalVector b(rank);
            for (std::size_t i = 0; i < rank; ++i) {
                b[i] = f[i];
                for (std::size_t k = 0; k < fixed.size(); ++k) b[i] -= e[i][fixed[k]] * x[fixed[k]];
                for (std::size_t k = 0; k < rank; ++k) a[i][k] = e[i][free[k]];
            }
            auto sol = solve_square(std::move(a), std::move(b));
            if (!sol) continue;
            bool inside = true;
            for (std::size_t k = 0; k < rank; ++k) {
                if ((*sol)[k] < lower || (*sol)[k] > upper) {
                    inside = false;
                    break;
                }
                x[free[k]] = (*sol)[k];
            }
            if (inside) found.insert(std::move(x));
        }
    });
    return {found.begin(), found.end()};
}

LinearSystem BoxPolytope::shifted_system() const {
    LinearSystem sys(dimension);
    const Rational width = upper - lower;
    for (std::size_t j = 0; j < dimension; ++j)
        sys.add({{j, Rational(1)}}, Relation::less_equal, width, "box " + std::to_string(j));
    for (std::size_t i = 0; i < equality_rows.size(); ++i) {
        std::vector<std::pair<std::size_t, Rational>> terms;
        Rational rhs = equality_rhs[i];
        for (std::size_t j = 0; j < dimension; ++j) {
            if (equality_rows[i][j] == 0) continue;
            terms.emplace_back(j, equality_rows[i][j]);
            rhs -= equality_rows[i][j] * lower;
        }
        sys.add(std::move(terms), Relation::equal, rhs, "equality " + std::to_string(i));
    }
    return sys;
}

BoxPolytope StrategyPolytope::box() const {
    BoxPolytope p;
    p.dimension = dimension;
    for (const auto& r : relations) {
        if (r.size() != dimension) throw DimensionMismatch("relation length differs from polytope dimension");
        RationalVector row;
        for (int v : r) row.emplace_back(v);
        p.equality_rows.push_back(std::move(row));
        p.equality_rhs.emplace_back(0);
    }
    return p;
}

LinearMax maximize_linear(const BoxPolytope& p, const RationalVector& c) {
    if (c.size() != p.dimension) throw DimensionMismatch("objective length differs from polytope dimension");
    const auto res = maximize(p.shifted_system(), c);
    if (res.status != LpStatus::feasible) throw EmptyPolytope("polytope is empty");
    LinearMax out;
    out.argmax.resize(p.dimension);
    out.value = 0;
    for (std::size_t j = 0; j < p.dimension; ++j) {
        out.argmax[j] = res.x[j] + p.lower;
        out.value += c[j] * out.argmax[j];
    }
    return out;
}

}  // namespace ctx
