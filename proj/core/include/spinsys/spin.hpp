#pragma once

// Spin-group membership, the covering map Spin_f -> SO_f and hyperbolic
// displacement in the hyperboloid model {x0^2 - x1^2 - ... - xn^2 = 1, x0 > 0}.

#include "spinsys/clifford.hpp"
#include "spinsys/error.hpp"
#include "spinsys/form.hpp"

#include <cmath>
#include <numeric>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

namespace spinsys {

// Absolute tolerance on real comparisons (scaled by magnitude where noted).
inline constexpr double kRealTolerance = 1e-9;
// arccosh arguments within this of 1 from below are clamped to 1.
inline constexpr double kArccoshClamp = 1e-12;

namespace detail {

template <class R>
bool near_zero(const R& x, const R& zero, double /*scale*/) {
    return x == zero;
}
inline bool near_zero(double x, double /*zero*/, double scale) { return std::fabs(x) <= kRealTolerance * scale; }

template <class R>
double tolerance_scale(const CliffordElement<R>& /*s*/) {
    return 1.0;
}
inline double tolerance_scale(const CliffordElement<double>& s) {
    double sum = 1.0;
    for (const auto& term : s.terms()) sum += term.second * term.second;
    return sum;
}

inline double to_real(double x) { return x; }
inline double to_real(const Rational& x) { return x.convert_to<double>(); }
inline double to_real(const AlgebraicInteger& x) { return x.to_double(); }

// Admissible generator squares: f(e_1) > 0, f(e_j) < 0 under the identity
// embedding; for O_k also f^sigma positive definite.
inline bool admissible_squares(const std::vector<double>& squares) {
    if (squares.empty() || !(squares[0] > 0)) return false;
    for (std::size_t i = 1; i < squares.size(); ++i) {
        if (!(squares[i] < 0)) return false;
    }
    return true;
}
inline bool admissible_squares(const std::vector<Rational>& squares) {
    std::vector<double> real;
    for (const auto& c : squares) real.push_back(c.sign() > 0 ? 1.0 : -1.0);
    return admissible_squares(real);
}
inline bool admissible_squares(const std::vector<AlgebraicInteger>& squares) {
    return QuadraticForm(squares.front().field(), squares).is_admissible();
}

inline double exact_divide(double a, double b) { return a / b; }
inline Rational exact_divide(const Rational& a, const Rational& b) { return a / b; }
inline AlgebraicInteger exact_divide(const AlgebraicInteger& a, const AlgebraicInteger& b) {
    auto q = a.divide_exact(b);
    if (!q) throw NumericError("inexact division in Bareiss elimination");
    return *q;
}

}  // namespace detail

// Dense row-major matrix.
template <class R>
class Matrix {
public:
    Matrix(int rows, int cols, const R& fill)
        : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows * cols), fill) {}

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    R& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }
    const R& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    int rows_;
    int cols_;
    std::vector<R> entries_;
};

template <class R>
Matrix<R> multiply(const Matrix<R>& a, const Matrix<R>& b, const R& zero) {
    if (a.cols() != b.rows()) throw InvalidArgument("matrix shapes do not match");
    Matrix<R> out(a.rows(), b.cols(), zero);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            R acc = zero;
            for (int k = 0; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    }
    return out;
}

template <class R>
Matrix<R> transpose(const Matrix<R>& a) {
    Matrix<R> out(a.cols(), a.rows(), a(0, 0));
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    }
    return out;
}

// Fraction-free (Bareiss) determinant over an integral domain.
template <class R>
R determinant(Matrix<R> a, const R& zero, const R& one) {
    const int n = a.rows();
    if (n != a.cols()) throw InvalidArgument("determinant of a non-square matrix");
    R previous = one;
    bool negate = false;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == zero) {
            int swap = k + 1;
            while (swap < n && a(swap, k) == zero) ++swap;
            if (swap == n) return zero;
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                a(i, j) = detail::exact_divide(a(i, j) * a(k, k) - a(i, k) * a(k, j), previous);
            }
        }
        previous = a(k, k);
    }
    return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

// Even, s s^* = 1, and s e_i s^* has only grade-1 terms for every generator.
// Exact for exact rings; coefficient-wise tolerance 1e-9 (scaled by
// 1 + sum s_M^2) for double.
template <class R>
bool is_spin(const CliffordElement<R>& s) {
    if (!s.is_even()) return false;
    const CliffordAlgebra<R>& algebra = s.algebra();
    const double scale = detail::tolerance_scale(s);
    const CliffordElement<R> conjugate = s.reversal();
    const CliffordElement<R> norm = s * conjugate - CliffordElement<R>::scalar(algebra, algebra.one());
    for (const auto& term : norm.terms()) {
        if (!detail::near_zero(term.second, algebra.zero(), scale)) return false;
    }
    for (int i = 1; i <= algebra.dimension(); ++i) {
        const CliffordElement<R> image = s * CliffordElement<R>::generator(algebra, i) * conjugate;
        for (const auto& term : image.terms()) {
            if (blade_grade(term.first) != 1 && !detail::near_zero(term.second, algebra.zero(), scale)) {
                return false;
            }
        }
    }
    return true;
}

// An element verified by is_spin at construction.
template <class R>
class SpinElement {
public:
    explicit SpinElement(CliffordElement<R> element) : element_(std::move(element)) {
        if (!is_spin(element_)) throw InvalidArgument("element is not in the spin group");
    }

    const CliffordElement<R>& element() const noexcept { return element_; }
    const CliffordAlgebra<R>& algebra() const noexcept { return element_.algebra(); }
    R real_part() const { return element_.scalar_part(); }

    friend SpinElement operator*(const SpinElement& lhs, const SpinElement& rhs) {
        return SpinElement(lhs.element_ * rhs.element_, Trusted{});
    }
    SpinElement inverse() const { return SpinElement(element_.reversal(), Trusted{}); }

private:
    struct Trusted {};
    SpinElement(CliffordElement<R> element, Trusted) : element_(std::move(element)) {}

    CliffordElement<R> element_;
};

// phi_s(x) = s x s^*: column i holds the coordinates of s e_i s^* on e_1..e_{n+1}.
template <class R>
Matrix<R> to_so_matrix(const SpinElement<R>& spin) {
    const CliffordElement<R>& s = spin.element();
    const CliffordAlgebra<R>& algebra = s.algebra();
    const int dim = algebra.dimension();
    const CliffordElement<R> conjugate = s.reversal();
    Matrix<R> out(dim, dim, algebra.zero());
    for (int j = 0; j < dim; ++j) {
        const CliffordElement<R> image = s * CliffordElement<R>::generator(algebra, j + 1) * conjugate;
        for (int i = 0; i < dim; ++i) out(i, j) = image.coefficient(BladeMask{1} << i);
    }
    return out;
}

// Gram matrix diag(f(e_1), ..., f(e_{n+1})).
template <class R>
Matrix<R> gram_matrix(const CliffordAlgebra<R>& algebra) {
    const int dim = algebra.dimension();
    Matrix<R> out(dim, dim, algebra.zero());
    for (int i = 0; i < dim; ++i) out(i, i) = algebra.square(i);
    return out;
}

// A^T G A = G (within tolerance for double).
template <class R>
bool preserves_form(const Matrix<R>& a, const CliffordAlgebra<R>& algebra) {
    const Matrix<R> g = gram_matrix(algebra);
    const Matrix<R> lhs = multiply(multiply(transpose(a), g, algebra.zero()), a, algebra.zero());
    double scale = 1.0;
    if constexpr (std::is_same_v<R, double>) {
        for (int i = 0; i < a.rows(); ++i) {
            for (int j = 0; j < a.cols(); ++j) scale += a(i, j) * a(i, j);
        }
    }
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            if (!detail::near_zero(R(lhs(i, j) - g(i, j)), algebra.zero(), scale)) return false;
        }
    }
    return true;
}

// Trace of left multiplication L_s on the full 2^{n+1}-dimensional algebra,
// summed from the diagonal coefficients of s e_M.
template <class R>
R trace_left_regular(const CliffordElement<R>& s) {
    const CliffordAlgebra<R>& algebra = s.algebra();
    R trace = algebra.zero();
    for (BladeMask m = 0; m < algebra.blade_count(); ++m) {
        const CliffordElement<R> image = s * CliffordElement<R>::blade(algebra, m, algebra.one());
        trace = trace + image.coefficient(m);
    }
    return trace;
}

// Image in the Clifford algebra of the standard form x1^2 - x2^2 - ...:
// s_M e_M -> s_M sqrt(prod_{i in M} |f(e_i)|) e_M under the identity
// embedding.  The real part is unchanged.
template <class R>
CliffordElement<double> rescale_to_standard(const SpinElement<R>& spin) {
    const CliffordAlgebra<R>& algebra = spin.algebra();
    if (!detail::admissible_squares(algebra.squares())) {
        throw HypothesisViolation("rescaling to the standard form needs an admissible form");
    }
    std::vector<double> scale;
    for (const auto& c : algebra.squares()) scale.push_back(std::sqrt(std::fabs(detail::to_real(c))));
    CliffordElement<double> out(standard_real_algebra(algebra.dimension()));
    for (const auto& [m, c] : spin.element().terms()) {
        double factor = 1.0;
        for (int i = 0; i < algebra.dimension(); ++i) {
            if ((m >> i) & 1U) factor *= scale[static_cast<std::size_t>(i)];
        }
        out.set(m, detail::to_real(c) * factor);
    }
    return out;
}

// A point of the hyperboloid model in standard coordinates.
class HyperbolicPoint {
public:
    // Requires x0 > 0 and |q(x) - 1| <= 1e-9 * (1 + sum x_i^2).
    explicit HyperbolicPoint(std::vector<double> coordinates);

    static HyperbolicPoint basepoint(int dimension);
    // (sqrt(1 + |v|^2), v).
    static HyperbolicPoint from_spatial(const std::vector<double>& spatial);

    const std::vector<double>& coordinates() const noexcept { return coordinates_; }
    int dimension() const noexcept { return static_cast<int>(coordinates_.size()); }

private:
    std::vector<double> coordinates_;
};

// x0 y0 - x1 y1 - ... - xn yn.
double minkowski_pairing(const std::vector<double>& x, const std::vector<double>& y);
// cosh d(x, y) from the Minkowski pairing, through the clamped arccosh.
double hyperbolic_distance(const HyperbolicPoint& x, const HyperbolicPoint& y);
// arccosh with values in [1 - 1e-9 * scale, 1) clamped to 0; smaller values
// raise NumericError.
double clamped_arccosh(double value, double scale = 1.0);

HyperbolicPoint apply(const Matrix<double>& a, const HyperbolicPoint& x);

// The SO matrix of s in standard coordinates.
template <class R>
Matrix<double> standard_so_matrix(const SpinElement<R>& spin) {
    return to_so_matrix(SpinElement<double>(rescale_to_standard(spin)));
}

// d(e_1, phi_s(e_1)) = arccosh(a_11), cross-checked against sum_M shat_M^2.
template <class R>
double displacement_at_basepoint(const SpinElement<R>& spin) {
    const CliffordElement<double> standard = rescale_to_standard(spin);
    const Matrix<double> a = to_so_matrix(SpinElement<double>(standard));
    double squares = 0.0;
    for (const auto& term : standard.terms()) squares += term.second * term.second;
    const double scale = std::max(1.0, squares);
    if (std::fabs(a(0, 0) - squares) > kRealTolerance * scale) {
        throw NumericError("a_11 = " + std::to_string(a(0, 0)) + " disagrees with sum of squares " +
                           std::to_string(squares));
    }
    return clamped_arccosh(a(0, 0), scale);
}

// d(x, phi_s(x)).
template <class R>
double displacement(const SpinElement<R>& spin, const HyperbolicPoint& x) {
    const Matrix<double> a = standard_so_matrix(spin);
    if (a.rows() != x.dimension()) throw InvalidArgument("point and element have different dimensions");
    return hyperbolic_distance(x, apply(a, x));
}

struct DisplacementBound {
    double value = 0.0;
    // |s_R| < 1: the bound 2 log|s_R| says nothing.
    bool vacuous = false;
};

// 2 log|s_R|, a lower bound for d(x, phi_s(x)) at every x when |s_R| >= 1.
template <class R>
DisplacementBound displacement_lower_bound(const SpinElement<R>& spin) {
    const double real = std::fabs(detail::to_real(spin.real_part()));
    if (real < 1.0) return {0.0, true};
    return {2.0 * std::log(real), false};
}

// cosh(t/2) + sinh(t/2) e_1 e_j in the standard real algebra.
CliffordElement<double> elementary_boost(const CliffordAlgebra<double>& algebra, int j, double t);
// cos(theta) + sin(theta) e_i e_j, 2 <= i < j.
CliffordElement<double> elementary_rotation(const CliffordAlgebra<double>& algebra, int i, int j, double theta);
// Exact boost (m^2 + 1)/(2m) + (m^2 - 1)/(2m) e_1 e_j, m > 0 rational.
CliffordElement<Rational> rational_boost(const CliffordAlgebra<Rational>& algebra, int j, const Rational& m);
// Exact rotation (1 - u^2)/(1 + u^2) + 2u/(1 + u^2) e_i e_j, 2 <= i < j.
CliffordElement<Rational> rational_rotation(const CliffordAlgebra<Rational>& algebra, int i, int j,
                                            const Rational& u);

}  // namespace spinsys
