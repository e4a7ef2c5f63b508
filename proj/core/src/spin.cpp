#include "spinsys/spin.hpp"

#include <algorithm>

namespace spinsys {

HyperbolicPoint::HyperbolicPoint(std::vector<double> coordinates) : coordinates_(std::move(coordinates)) {
    if (coordinates_.size() < 2) throw InvalidArgument("hyperbolic points need at least two coordinates");
    if (!(coordinates_[0] > 0)) throw InvalidArgument("hyperboloid points need x0 > 0");
    double magnitude = 1.0;
    for (const double x : coordinates_) magnitude += x * x;
    const double residual = minkowski_pairing(coordinates_, coordinates_) - 1.0;
    if (std::fabs(residual) > kRealTolerance * magnitude) {
        throw InvalidArgument("point is off the hyperboloid (residual " + std::to_string(residual) + ")");
    }
}

HyperbolicPoint HyperbolicPoint::basepoint(int dimension) {
    std::vector<double> x(static_cast<std::size_t>(dimension), 0.0);
    x.at(0) = 1.0;
    return HyperbolicPoint(std::move(x));
}

HyperbolicPoint HyperbolicPoint::from_spatial(const std::vector<double>& spatial) {
    double norm = 1.0;
    for (const double v : spatial) norm += v * v;
    std::vector<double> x{std::sqrt(norm)};
    x.insert(x.end(), spatial.begin(), spatial.end());
    return HyperbolicPoint(std::move(x));
}

double minkowski_pairing(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty()) throw InvalidArgument("pairing of vectors of different sizes");
    double out = x[0] * y[0];
    for (std::size_t i = 1; i < x.size(); ++i) out -= x[i] * y[i];
    return out;
}

double clamped_arccosh(double value, double scale) {
    if (value < 1.0 - kRealTolerance * scale) {
        throw NumericError("arccosh argument " + std::to_string(value) + " is below 1");
    }
    if (value < 1.0 + kArccoshClamp) return value <= 1.0 ? 0.0 : std::acosh(value);
    return std::acosh(value);
}

double hyperbolic_distance(const HyperbolicPoint& x, const HyperbolicPoint& y) {
    double scale = 1.0;
    for (const double v : x.coordinates()) scale += v * v;
    for (const double v : y.coordinates()) scale += v * v;
    return clamped_arccosh(minkowski_pairing(x.coordinates(), y.coordinates()), scale);
}

HyperbolicPoint apply(const Matrix<double>& a, const HyperbolicPoint& x) {
    if (a.cols() != x.dimension()) throw InvalidArgument("matrix and point sizes differ");
    std::vector<double> y(static_cast<std::size_t>(a.rows()), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (int j = 0; j < a.cols(); ++j) acc += a(i, j) * x.coordinates()[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = acc;
    }
    // Renormalize onto the hyperboloid to absorb rounding in long products.
    const double q = minkowski_pairing(y, y);
    if (q > 0) {
        const double r = 1.0 / std::sqrt(q);
        for (double& v : y) v *= r;
    }
    return HyperbolicPoint(std::move(y));
}

namespace {

BladeMask pair_mask(int i, int j) { return (BladeMask{1} << (i - 1)) | (BladeMask{1} << (j - 1)); }

void check_pair(int dimension, int i, int j) {
    if (i < 1 || j <= i || j > dimension) throw InvalidArgument("generator pair out of range");
}

}  // namespace

CliffordElement<double> elementary_boost(const CliffordAlgebra<double>& algebra, int j, double t) {
    check_pair(algebra.dimension(), 1, j);
    CliffordElement<double> out = CliffordElement<double>::scalar(algebra, std::cosh(t / 2));
    out.set(pair_mask(1, j), std::sinh(t / 2));
    return out;
}

CliffordElement<double> elementary_rotation(const CliffordAlgebra<double>& algebra, int i, int j, double theta) {
    check_pair(algebra.dimension(), i, j);
    if (i < 2) throw InvalidArgument("rotations act on e_2..e_{n+1}");
    CliffordElement<double> out = CliffordElement<double>::scalar(algebra, std::cos(theta));
    out.set(pair_mask(i, j), std::sin(theta));
    return out;
}

CliffordElement<Rational> rational_boost(const CliffordAlgebra<Rational>& algebra, int j, const Rational& m) {
    check_pair(algebra.dimension(), 1, j);
    if (m <= 0) throw InvalidArgument("boost parameter must be positive");
    CliffordElement<Rational> out = CliffordElement<Rational>::scalar(algebra, (m * m + 1) / (2 * m));
    out.set(pair_mask(1, j), (m * m - 1) / (2 * m));
    return out;
}

CliffordElement<Rational> rational_rotation(const CliffordAlgebra<Rational>& algebra, int i, int j,
                                            const Rational& u) {
    check_pair(algebra.dimension(), i, j);
    if (i < 2) throw InvalidArgument("rotations act on e_2..e_{n+1}");
    CliffordElement<Rational> out = CliffordElement<Rational>::scalar(algebra, (1 - u * u) / (1 + u * u));
    out.set(pair_mask(i, j), 2 * u / (1 + u * u));
    return out;
}

}  // namespace spinsys
