#pragma once

// Qubit and two-qubit operator arithmetic.
//
// Single-qubit objects are kept in Bloch form; 2x2 matrices are built on
// demand. Traces between single-qubit objects reduce to dot products.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace ctx {

using Complex = std::complex<double>;

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    double norm2() const { return x * x + y * y + z * z; }
    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }

    BlochVector operator+(const BlochVector& o) const { return {x + o.x, y + o.y, z + o.z}; }
    BlochVector operator-(const BlochVector& o) const { return {x - o.x, y - o.y, z - o.z}; }
    BlochVector operator-() const { return {-x, -y, -z}; }
    BlochVector operator*(double s) const { return {s * x, s * y, s * z}; }
    bool operator==(const BlochVector&) const = default;
};

inline BlochVector operator*(double s, const BlochVector& v) { return v * s; }

/// Dense 2x2 complex matrix, row major.
class Mat2 {
public:
    Mat2() { m_.fill(Complex{}); }
    Mat2(Complex a, Complex b, Complex c, Complex d) : m_{a, b, c, d} {}

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
    static Mat2 pauli_y() { return {0.0, Complex(0, -1), Complex(0, 1), 0.0}; }
    static Mat2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }
    /// (c0 I + v.sigma)
    static Mat2 from_pauli(double c0, const BlochVector& v);

    Complex& operator()(std::size_t i, std::size_t j) { return m_[2 * i + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_[2 * i + j]; }

    Mat2 operator+(const Mat2& o) const;
    Mat2 operator-(const Mat2& o) const;
    Mat2 operator*(const Mat2& o) const;
    Mat2 operator*(Complex s) const;
    Mat2& operator+=(const Mat2& o);

    Mat2 adjoint() const;
    Complex trace() const { return m_[0] + m_[3]; }
    double max_abs() const;
    /// Coefficients (Tr[s_x M], Tr[s_y M], Tr[s_z M]); real parts for Hermitian M.
    BlochVector pauli_components() const;

private:
    std::array<Complex, 4> m_;
};

using Vec4 = std::array<Complex, 4>;

/// Dense 4x4 complex matrix, row major, basis |00>,|01>,|10>,|11>.
class Mat4 {
public:
    Mat4() { m_.fill(Complex{}); }

    static Mat4 identity();
    static Mat4 diagonal(double a, double b, double c, double d);
    static Mat4 outer(const Vec4& v);  // |v><v|

    Complex& operator()(std::size_t i, std::size_t j) { return m_[4 * i + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_[4 * i + j]; }

    Mat4 operator+(const Mat4& o) const;
    Mat4 operator-(const Mat4& o) const;
    Mat4 operator*(const Mat4& o) const;
    Mat4 operator*(Complex s) const;
    Mat4& operator+=(const Mat4& o);
    Vec4 operator*(const Vec4& v) const;

    Mat4 adjoint() const;
    Complex trace() const;
    double max_abs() const;
    bool is_hermitian(double tol) const;

private:
    std::array<Complex, 16> m_;
};

double norm(const Vec4& v);
Complex inner(const Vec4& a, const Vec4& b);  // <a|b>

/// Dichotomic +-1 observable n.sigma with |n| = 1.
class QubitObservable {
public:
    /// Throws NonUnitBloch when |norm - 1| > 1e-9; renormalizes otherwise
    /// (or, with renormalize == false, whenever the deviation exceeds 1e-12).
    static QubitObservable from_bloch(const BlochVector& v, bool renormalize = true);

    const BlochVector& bloch() const { return bloch_; }
    Mat2 matrix() const { return Mat2::from_pauli(0.0, bloch_); }
    QubitObservable negated() const { return QubitObservable(-bloch_); }
    bool operator==(const QubitObservable&) const = default;

private:
    explicit QubitObservable(const BlochVector& v) : bloch_(v) {}
    BlochVector bloch_;
};

inline QubitObservable observable_from_bloch(const BlochVector& v, bool renormalize = true) {
    return QubitObservable::from_bloch(v, renormalize);
}

/// Whether a rank-1 density stands for a prepared state or a measurement effect.
/// Both share the representation.
enum class DensityRole { state, effect };

/// rho = (I + r.sigma)/2 with |r| <= 1.
class QubitDensity {
public:
    static QubitDensity from_bloch(const BlochVector& r, DensityRole role = DensityRole::state);
    static QubitDensity maximally_mixed() { return QubitDensity({0, 0, 0}, DensityRole::state); }

    const BlochVector& bloch() const { return bloch_; }
    DensityRole role() const { return role_; }
    Mat2 matrix() const { return Mat2::from_pauli(0.5, bloch_ * 0.5); }
    bool is_pure() const;

private:
    QubitDensity(const BlochVector& r, DensityRole role) : bloch_(r), role_(role) {}
    BlochVector bloch_;
    DensityRole role_;
};

/// (I + sign*A)/2. sign must be +1 or -1.
QubitDensity projector_of(const QubitObservable& a, int sign);

struct TwoQubitOperator {
    Mat4 matrix;
    bool hermitian = false;
};

class TwoQubitState {
public:
    /// Validates unit trace, hermiticity and eigenvalues >= -1e-10.
    explicit TwoQubitState(const Mat4& rho);
    static TwoQubitState pure(const Vec4& psi);
    static TwoQubitState product(const QubitDensity& a, const QubitDensity& b);

    const Mat4& matrix() const { return rho_; }

private:
    Mat4 rho_;
};

enum class BellState { phi_plus, phi_minus, psi_plus, psi_minus };

BellState parse_bell_state(std::string_view name);  // throws UnknownKind
std::string_view to_string(BellState kind);
Vec4 bell_vector(BellState kind);
TwoQubitState maximally_entangled_state(BellState kind);

/// Tr[rho O]. Single-qubit overloads use the Bloch shortcut.
double expectation(const QubitDensity& rho, const QubitObservable& obs);
double expectation(const QubitDensity& rho, const QubitDensity& effect);
/// Throws NotHermitian when Tr[rho O] has an imaginary part above 1e-10.
double expectation(const TwoQubitState& rho, const TwoQubitOperator& op);

/// Dimension-erased forms for callers that carry either size.
using AnyState = std::variant<QubitDensity, TwoQubitState>;
using AnyOperator = std::variant<QubitObservable, QubitDensity, TwoQubitOperator>;
/// Throws DimensionMismatch when a single-qubit state meets a two-qubit operator or vice versa.
double expectation(const AnyState& rho, const AnyOperator& op);

Mat4 kron(const Mat2& a, const Mat2& b);
TwoQubitOperator tensor_product(const QubitObservable& a, const QubitObservable& b);
TwoQubitOperator tensor_product(const QubitDensity& a, const QubitDensity& b);

struct EigenPair {
    double value;
    Vec4 vector;
};

/// All four eigenpairs, ascending, via cyclic complex Jacobi rotations.
std::array<EigenPair, 4> eigen_hermitian(const Mat4& h);
/// Largest eigenpair. Throws NotHermitian beyond 1e-10.
EigenPair max_eigenvalue_hermitian(const Mat4& h);

Mat2 partial_trace_b(const Mat4& m);
Mat2 partial_trace_a(const Mat4& m);

}  // namespace ctx
