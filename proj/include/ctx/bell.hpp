#pragma once

#include <span>
#include <string>
#include <vector>

#include "ctx/algebra.hpp"

namespace ctx {

/// beta = sum_{x,y} M_xy <A_x (x) B_y> with small integer coefficients.
class BellExpression {
public:
    BellExpression(std::string name, std::size_t rows, std::size_t cols, std::vector<int> coeffs);

    const std::string& name() const { return name_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int at(std::size_t x, std::size_t y) const { return coeffs_[x * cols_ + y]; }
    const std::vector<int>& coefficients() const { return coeffs_; }

    BellExpression transposed() const;
    BellExpression operator+(const BellExpression& o) const;
    bool operator==(const BellExpression&) const = default;

private:
    std::string name_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<int> coeffs_;
};

/// sum_{x,y} M_xy A_x (x) B_y. Throws DimensionMismatch on list/shape mismatch.
TwoQubitOperator bell_operator(const BellExpression& expr, std::span<const QubitObservable> alice,
                               std::span<const QubitObservable> bob);

}  // namespace ctx
