#include "ctx/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ctx/bell.hpp"
#include "ctx/errors.hpp"

namespace ctx {

namespace {

constexpr double kUnitTolerance = 1e-9;
constexpr double kStrictTolerance = 1e-12;
constexpr double kJacobiThreshold = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

}  // namespace

double BlochVector::norm() const { return std::sqrt(norm2()); }

// ---------------------------------------------------------------- Mat2

Mat2 Mat2::from_pauli(double c0, const BlochVector& v) {
    return {Complex(c0 + v.z, 0), Complex(v.x, -v.y), Complex(v.x, v.y), Complex(c0 - v.z, 0)};
}

Mat2 Mat2::operator+(const Mat2& o) const {
    Mat2 r;
    for (std::size_t k = 0; k < 4; ++k) r.m_[k] = m_[k] + o.m_[k];
    return r;
}

Mat2 Mat2::operator-(const Mat2& o) const {
    Mat2 r;
    for (std::size_t k = 0; k < 4; ++k) r.m_[k] = m_[k] - o.m_[k];
    return r;
}

Mat2 Mat2::operator*(const Mat2& o) const {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j);
    return r;
}

Mat2 Mat2::operator*(Complex s) const {
    Mat2 r;
    for (std::size_t k = 0; k < 4; ++k) r.m_[k] = m_[k] * s;
    return r;
}

Mat2& Mat2::operator+=(const Mat2& o) {
    for (std::size_t k = 0; k < 4; ++k) m_[k] += o.m_[k];
    return *this;
}

Mat2 Mat2::adjoint() const {
    return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

double Mat2::max_abs() const {
    double r = 0.0;
    for (const auto& c : m_) r = std::max(r, std::abs(c));
    return r;
}

BlochVector Mat2::pauli_components() const {
    // Tr[s_x M] = M10 + M01, Tr[s_y M] = i(M01 - M10), Tr[s_z M] = M00 - M11
    const Complex tx = m_[2] + m_[1];
    const Complex ty = Complex(0, 1) * (m_[1] - m_[2]);
    const Complex tz = m_[0] - m_[3];
    return {tx.real(), ty.real(), tz.real()};
}

// ---------------------------------------------------------------- Mat4

Mat4 Mat4::identity() { return diagonal(1, 1, 1, 1); }

Mat4 Mat4::diagonal(double a, double b, double c, double d) {
    Mat4 r;
    r(0, 0) = a;
    r(1, 1) = b;
    r(2, 2) = c;
    r(3, 3) = d;
    return r;
}

Mat4 Mat4::outer(const Vec4& v) {
    Mat4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r(i, j) = v[i] * std::conj(v[j]);
    return r;
}

Mat4 Mat4::operator+(const Mat4& o) const {
    Mat4 r;
    for (std::size_t k = 0; k < 16; ++k) r.m_[k] = m_[k] + o.m_[k];
    return r;
}

Mat4 Mat4::operator-(const Mat4& o) const {
    Mat4 r;
    for (std::size_t k = 0; k < 16; ++k) r.m_[k] = m_[k] - o.m_[k];
    return r;
}

Mat4 Mat4::operator*(const Mat4& o) const {
    Mat4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < 4; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

Mat4 Mat4::operator*(Complex s) const {
    Mat4 r;
    for (std::size_t k = 0; k < 16; ++k) r.m_[k] = m_[k] * s;
    return r;
}

Mat4& Mat4::operator+=(const Mat4& o) {
    for (std::size_t k = 0; k < 16; ++k) m_[k] += o.m_[k];
    return *this;
}

Vec4 Mat4::operator*(const Vec4& v) const {
    Vec4 r{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

Mat4 Mat4::adjoint() const {
    Mat4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

Complex Mat4::trace() const { return m_[0] + m_[5] + m_[10] + m_[15]; }

double Mat4::max_abs() const {
    double r = 0.0;
    for (const auto& c : m_) r = std::max(r, std::abs(c));
    return r;
}

bool Mat4::is_hermitian(double tol) const {
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

double norm(const Vec4& v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return std::sqrt(s);
}

Complex inner(const Vec4& a, const Vec4& b) {
    Complex s{};
    for (std::size_t i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// ---------------------------------------------------------------- single qubit

QubitObservable QubitObservable::from_bloch(const BlochVector& v, bool renormalize) {
    if (!std::isfinite(v.norm2())) throw NonUnitBloch("Bloch vector is not finite");
    const double n = v.norm();
    const double dev = std::abs(n - 1.0);
    if (dev > (renormalize ? kUnitTolerance : kStrictTolerance))
        throw NonUnitBloch("observable Bloch vector has norm " + std::to_string(n));
    return QubitObservable(dev <= 1e-15 ? v : v * (1.0 / n));
}

QubitDensity QubitDensity::from_bloch(const BlochVector& r, DensityRole role) {
    if (!std::isfinite(r.norm2()) || r.norm() > 1.0 + kStrictTolerance)
        throw ValidationError("density Bloch vector outside the unit ball");
    return QubitDensity(r, role);
}

bool QubitDensity::is_pure() const { return std::abs(bloch_.norm() - 1.0) <= kStrictTolerance; }

QubitDensity projector_of(const QubitObservable& a, int sign) {
    if (sign != 1 && sign != -1) throw ValidationError("projector sign must be +1 or -1");
    return QubitDensity::from_bloch(a.bloch() * static_cast<double>(sign), DensityRole::effect);
}

double expectation(const QubitDensity& rho, const QubitObservable& obs) {
    return rho.bloch().dot(obs.bloch());
}

double expectation(const QubitDensity& rho, const QubitDensity& effect) {
    return 0.5 * (1.0 + rho.bloch().dot(effect.bloch()));
}

// ---------------------------------------------------------------- two qubits

TwoQubitState::TwoQubitState(const Mat4& rho) : rho_(rho) {
    if (std::abs(rho.trace() - Complex(1.0)) > kStrictTolerance)
        throw ValidationError("two-qubit state must have unit trace");
    if (!rho.is_hermitian(kStrictTolerance)) throw ValidationError("two-qubit state must be Hermitian");
    if (eigen_hermitian(rho)[0].value < -1e-10)
        throw ValidationError("two-qubit state has a negative eigenvalue");
}

TwoQubitState TwoQubitState::pure(const Vec4& psi) {
    const double n = norm(psi);
    if (n == 0.0 || !std::isfinite(n)) throw ValidationError("pure state vector must be nonzero");
    Vec4 v = psi;
    for (auto& c : v) c /= n;
    return TwoQubitState(Mat4::outer(v));
}

TwoQubitState TwoQubitState::product(const QubitDensity& a, const QubitDensity& b) {
    return TwoQubitState(kron(a.matrix(), b.matrix()));
}

BellState parse_bell_state(std::string_view name) {
    if (name == "phi_plus") return BellState::phi_plus;
    if (name == "phi_minus") return BellState::phi_minus;
    if (name == "psi_plus") return BellState::psi_plus;
    if (name == "psi_minus") return BellState::psi_minus;
    throw UnknownKind("unknown maximally entangled state '" + std::string(name) + "'");
}

std::string_view to_string(BellState kind) {
    switch (kind) {
        case BellState::phi_plus: return "phi_plus";
        case BellState::phi_minus: return "phi_minus";
        case BellState::psi_plus: return "psi_plus";
        case BellState::psi_minus: return "psi_minus";
    }
    return "?";
}

Vec4 bell_vector(BellState kind) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case BellState::phi_plus: return {h, 0.0, 0.0, h};
        case BellState::phi_minus: return {h, 0.0, 0.0, -h};
        case BellState::psi_plus: return {0.0, h, h, 0.0};
        case BellState::psi_minus: return {0.0, h, -h, 0.0};
    }
    throw UnknownKind("unknown maximally entangled state");
}

TwoQubitState maximally_entangled_state(BellState kind) {
    Mat4 rho = Mat4::outer(bell_vector(kind));
    // exact 1/2 entries instead of (1/sqrt2)^2
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const Complex c = rho(i, j);
            if (std::abs(c) > 0.25) rho(i, j) = Complex(c.real() > 0 ? 0.5 : -0.5, 0.0);
        }
    return TwoQubitState(rho);
}

double expectation(const TwoQubitState& rho, const TwoQubitOperator& op) {
    Complex t{};
    const Mat4& r = rho.matrix();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) t += r(i, j) * op.matrix(j, i);
    if (std::abs(t.imag()) > 1e-10 * std::max(1.0, op.matrix.max_abs()))
        throw NotHermitian("expectation has an imaginary part; operator is not Hermitian");
    return t.real();
}

double expectation(const AnyState& rho, const AnyOperator& op) {
    if (const auto* q = std::get_if<QubitDensity>(&rho)) {
        if (const auto* o = std::get_if<QubitObservable>(&op)) return expectation(*q, *o);
        if (const auto* e = std::get_if<QubitDensity>(&op)) return expectation(*q, *e);
        throw DimensionMismatch("single-qubit state with a two-qubit operator");
    }
    const auto& s = std::get<TwoQubitState>(rho);
    if (const auto* o = std::get_if<TwoQubitOperator>(&op)) return expectation(s, *o);
    throw DimensionMismatch("two-qubit state with a single-qubit operator");
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r(i, j) = a(i / 2, j / 2) * b(i % 2, j % 2);
    return r;
}

TwoQubitOperator tensor_product(const QubitObservable& a, const QubitObservable& b) {
    return {kron(a.matrix(), b.matrix()), true};
}

TwoQubitOperator tensor_product(const QubitDensity& a, const QubitDensity& b) {
    return {kron(a.matrix(), b.matrix()), true};
}

// ---------------------------------------------------------------- Jacobi

std::array<EigenPair, 4> eigen_hermitian(const Mat4& h) {
    Mat4 a = h;
    Mat4 v = Mat4::identity();
    const double scale = std::max(1.0, h.max_abs());

    auto off_norm = [&a] {
        double s = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < kJacobiMaxSweeps && off_norm() > kJacobiThreshold * scale; ++sweep) {
        for (std::size_t p = 0; p < 3; ++p) {
            for (std::size_t q = p + 1; q < 4; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= kJacobiThreshold * scale * 1e-3) continue;
                const Complex phase = apq / mag;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // J = diag phase on q followed by the real rotation:
                // J_pp = c, J_pq = s, J_qp = -s e^{-i phi}, J_qq = c e^{-i phi}
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);
                // a <- a J (columns p, q)
                for (std::size_t k = 0; k < 4; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
                // a <- J^dagger a (rows p, q)
                for (std::size_t k = 0; k < 4; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::array<EigenPair, 4> out;
    for (std::size_t k = 0; k < 4; ++k) {
        out[k].value = a(k, k).real();
        for (std::size_t i = 0; i < 4; ++i) out[k].vector[i] = v(i, k);
    }
    std::sort(out.begin(), out.end(), [](const EigenPair& x, const EigenPair& y) { return x.value < y.value; });
    return out;
}

EigenPair max_eigenvalue_hermitian(const Mat4& h) {
    if (!h.is_hermitian(1e-10)) throw NotHermitian("matrix is not Hermitian");
    EigenPair top = eigen_hermitian(h)[3];
    const double n = norm(top.vector);
    for (auto& c : top.vector) c /= n;
    return top;
}

Mat2 partial_trace_b(const Mat4& m) {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
    return r;
}

Mat2 partial_trace_a(const Mat4& m) {
    Mat2 r;
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(k, l) = m(k, l) + m(2 + k, 2 + l);
    return r;
}

}  // namespace ctx

// ---------------------------------------------------------------- Bell operators

namespace ctx {

BellExpression::BellExpression(std::string name, std::size_t rows, std::size_t cols, std::vector<int> coeffs)
    : name_(std::move(name)), rows_(rows), cols_(cols), coeffs_(std::move(coeffs)) {
    if (rows_ == 0 || cols_ == 0) throw DimensionMismatch("Bell expression needs at least one setting per party");
    if (coeffs_.size() != rows_ * cols_) throw DimensionMismatch("Bell coefficient count does not match shape");
}

BellExpression BellExpression::transposed() const {
    std::vector<int> t(coeffs_.size());
    for (std::size_t x = 0; x < rows_; ++x)
        for (std::size_t y = 0; y < cols_; ++y) t[y * rows_ + x] = at(x, y);
    return BellExpression(name_ + "^T", cols_, rows_, std::move(t));
}

BellExpression BellExpression::operator+(const BellExpression& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("Bell expressions differ in shape");
    std::vector<int> s(coeffs_.size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = coeffs_[k] + o.coeffs_[k];
    return BellExpression(name_ + "+" + o.name_, rows_, cols_, std::move(s));
}

TwoQubitOperator bell_operator(const BellExpression& expr, std::span<const QubitObservable> alice,
                               std::span<const QubitObservable> bob) {
    if (alice.size() != expr.rows() || bob.size() != expr.cols())
        throw DimensionMismatch("setting counts do not match the Bell expression shape");
    Mat4 sum;
    for (std::size_t x = 0; x < expr.rows(); ++x) {
        // sum_y M_xy B_y first, then one Kronecker product per x
        BlochVector c;
        for (std::size_t y = 0; y < expr.cols(); ++y) c = c + bob[y].bloch() * static_cast<double>(expr.at(x, y));
        sum += kron(alice[x].matrix(), Mat2::from_pauli(0.0, c));
    }
    return {sum, true};
}

}  // namespace ctx
