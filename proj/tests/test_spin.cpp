#include "spinsys/spin.hpp"

#include "random_spin.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace spinsys;

namespace {

using RE = CliffordElement<Rational>;
using DE = CliffordElement<double>;

RE parse(std::string_view text, const CliffordAlgebra<Rational>& algebra) {
    return parse_element<Rational>(text, algebra, parse_rational);
}

template <class R>
Matrix<R> identity(int dim, const R& zero, const R& one) {
    Matrix<R> out(dim, dim, zero);
    for (int i = 0; i < dim; ++i) out(i, i) = one;
    return out;
}

}  // namespace

TEST(SpinMembership, Examples) {
    const auto a = standard_rational_algebra(3);
    EXPECT_TRUE(is_spin(RE::scalar(a, 1)));
    EXPECT_TRUE(is_spin(RE::scalar(a, -1)));
    EXPECT_TRUE(is_spin(parse("5/4 + 3/4*e12", a)));
    EXPECT_TRUE(is_spin(parse("-8 + 6*e12 + 6*e13 + 3*e23", a)));
    EXPECT_FALSE(is_spin(parse("1 + e12", a)));      // ss* = 0
    EXPECT_FALSE(is_spin(parse("e1", a)));           // odd
    EXPECT_FALSE(is_spin(parse("2", a)));
    EXPECT_THROW(SpinElement<Rational>(parse("2", a)), InvalidArgument);
    const auto b = standard_rational_algebra(4);
    EXPECT_FALSE(is_spin(parse("1 + e1234", b)));
    EXPECT_TRUE(is_spin(parse("e1234", b) * parse("e1234", b) * RE::scalar(b, -1)));
}

TEST(SoMatrix, Examples) {
    const auto a = standard_rational_algebra(3);
    const SpinElement<Rational> one(RE::scalar(a, 1));
    EXPECT_EQ(to_so_matrix(one), identity<Rational>(3, 0, 1));
    const SpinElement<Rational> minus(RE::scalar(a, -1));
    EXPECT_EQ(to_so_matrix(minus), identity<Rational>(3, 0, 1));
    const SpinElement<Rational> s(parse("5/4 + 3/4*e12", a));
    const Matrix<Rational> m = to_so_matrix(s);
    EXPECT_EQ(m(0, 0), Rational(17, 8));
    EXPECT_EQ(determinant(m, Rational(0), Rational(1)), Rational(1));
    EXPECT_TRUE(preserves_form(m, a));
    // -s has the same image.
    EXPECT_EQ(to_so_matrix(SpinElement<Rational>(-s.element())), m);
}

TEST(SoMatrix, HomomorphismAndOrthogonality) {
    std::mt19937_64 rng(testkit::test_seed());
    for (int dim = 2; dim <= 5; ++dim) {
        const auto a = standard_rational_algebra(dim);
        for (int t = 0; t < 25; ++t) {
            const SpinElement<Rational> g(testkit::random_rational_spin(a, rng, 3));
            const SpinElement<Rational> s(testkit::random_rational_spin(a, rng, 3));
            const Matrix<Rational> mg = to_so_matrix(g);
            const Matrix<Rational> ms = to_so_matrix(s);
            EXPECT_EQ(to_so_matrix(g * s), multiply(mg, ms, Rational(0)));
            EXPECT_TRUE(preserves_form(mg, a));
            EXPECT_EQ(determinant(mg, Rational(0), Rational(1)), Rational(1));
            EXPECT_GE(mg(0, 0), Rational(1));  // preserves the upper sheet
            EXPECT_TRUE(is_spin(g.inverse().element()));
            EXPECT_EQ((g * g.inverse()).element(), RE::scalar(a, 1));
        }
    }
}

TEST(RealPart, ConjugationInvariantExactly) {
    std::mt19937_64 rng(testkit::test_seed() + 1);
    for (int t = 0; t < 200; ++t) {
        const auto a = standard_rational_algebra(2 + t % 4);
        const SpinElement<Rational> g(testkit::random_rational_spin(a, rng, 3));
        const SpinElement<Rational> s(testkit::random_rational_spin(a, rng, 3));
        EXPECT_EQ((g * s * g.inverse()).real_part(), s.real_part());
        EXPECT_EQ(trace_left_regular(s.element()), Rational(1 << a.dimension()) * s.real_part());
    }
}

TEST(Trace, Examples) {
    const auto a = standard_rational_algebra(3);
    EXPECT_EQ(trace_left_regular(RE::scalar(a, 1)), Rational(8));
    EXPECT_EQ(trace_left_regular(parse("5/4 + 3/4*e12", a)), Rational(10));
    EXPECT_EQ(trace_left_regular(parse("e12", a)), Rational(0));
}

TEST(Rescale, Examples) {
    const FieldSpec q2 = FieldSpec::quadratic(2);
    const QuadraticForm form = QuadraticForm::parse("1, -sqrt2, -sqrt2", q2);
    const auto real = form.real_algebra(Embedding(false));
    const double theta = 0.7;
    DE s = DE::scalar(real, std::cos(theta));
    s.set(0b110, std::sin(theta) / std::sqrt(2.0));
    const SpinElement<double> spin(s);
    const DE hat = rescale_to_standard(spin);
    EXPECT_NEAR(hat.coefficient(0b110), std::sin(theta), 1e-12);
    EXPECT_NEAR(hat.coefficient(0), std::cos(theta), 1e-12);
    EXPECT_NEAR(displacement_at_basepoint(spin), 0.0, 1e-9);

    const auto a = standard_rational_algebra(3);
    const CliffordAlgebra<Rational> definite({Rational(-1), Rational(-1)}, Rational(0), Rational(1));
    EXPECT_THROW(rescale_to_standard(SpinElement<Rational>(RE::scalar(definite, 1))), HypothesisViolation);
    EXPECT_NO_THROW(rescale_to_standard(SpinElement<Rational>(RE::scalar(a, 1))));
}

TEST(Rescale, A11EqualsSumOfSquares) {
    std::mt19937_64 rng(testkit::test_seed() + 2);
    for (int t = 0; t < 500; ++t) {
        const int dim = 3 + t % 3;
        const auto a = standard_real_algebra(dim);
        const SpinElement<double> s(testkit::random_real_spin(a, rng, 4));
        const DE hat = rescale_to_standard(s);
        double squares = 0.0;
        for (const auto& term : hat.terms()) squares += term.second * term.second;
        const Matrix<double> m = to_so_matrix(SpinElement<double>(hat));
        EXPECT_LT(std::fabs(m(0, 0) - squares), 1e-9 * std::max(1.0, squares));
    }
}

TEST(Rescale, NonStandardAdmissibleForm) {
    // Conjugating a boost into the form (1, -2, -3) through e_i -> e_i / sqrt|f_i|.
    const auto a = CliffordAlgebra<double>({1.0, -2.0, -3.0}, 0.0, 1.0);
    DE s = DE::scalar(a, std::cosh(0.4));
    s.set(0b011, std::sinh(0.4) / std::sqrt(2.0));
    const SpinElement<double> spin(s);
    EXPECT_NEAR(displacement_at_basepoint(spin), 0.8, 1e-9);
}

TEST(Displacement, Examples) {
    const auto a = standard_rational_algebra(3);
    EXPECT_DOUBLE_EQ(displacement_at_basepoint(SpinElement<Rational>(RE::scalar(a, 1))), 0.0);
    const SpinElement<Rational> s(parse("5/4 + 3/4*e12", a));
    EXPECT_NEAR(displacement_at_basepoint(s), std::acosh(17.0 / 8.0), 1e-12);
    EXPECT_NEAR(displacement_at_basepoint(s), std::log(4.0), 1e-12);
    EXPECT_NEAR(displacement_lower_bound(s).value, 2 * std::log(1.25), 1e-12);
    EXPECT_FALSE(displacement_lower_bound(s).vacuous);
    const SpinElement<Rational> w(parse("-8 + 6*e12 + 6*e13 + 3*e23", a));
    EXPECT_NEAR(displacement_at_basepoint(w), std::acosh(145.0), 1e-10);
    EXPECT_NEAR(displacement_lower_bound(w).value, 2 * std::log(8.0), 1e-12);
    const SpinElement<Rational> r(parse("3/5 + 4/5*e23", a));
    EXPECT_TRUE(displacement_lower_bound(r).vacuous);
    EXPECT_NEAR(displacement_at_basepoint(r), 0.0, 1e-12);

    const auto real = standard_real_algebra(4);
    const SpinElement<double> boost(elementary_boost(real, 3, 1.3));
    EXPECT_NEAR(displacement_at_basepoint(boost), 1.3, 1e-12);
    EXPECT_NEAR(displacement(boost, HyperbolicPoint::basepoint(4)), 1.3, 1e-9);
}

TEST(Displacement, RealPartBound) {
    std::mt19937_64 rng(testkit::test_seed() + 3);
    int checked = 0;
    while (checked < 500) {
        const int dim = 3 + checked % 3;
        const auto a = standard_real_algebra(dim);
        const SpinElement<double> s(testkit::random_real_spin(a, rng, 3, 2.5));
        if (std::fabs(s.real_part()) < 1.0) continue;
        const HyperbolicPoint x = testkit::random_point(dim, rng);
        EXPECT_GE(displacement(s, x), displacement_lower_bound(s).value - 1e-9);
        ++checked;
    }
}

TEST(Displacement, ConjugationMovesBasepoint) {
    // d(g s g^{-1}, g x) = d(s, x).
    std::mt19937_64 rng(testkit::test_seed() + 4);
    for (int t = 0; t < 100; ++t) {
        const auto a = standard_real_algebra(3);
        const SpinElement<double> g(testkit::random_real_spin(a, rng, 2));
        const SpinElement<double> s(testkit::random_real_spin(a, rng, 2));
        const HyperbolicPoint x = HyperbolicPoint::basepoint(3);
        const HyperbolicPoint gx = apply(standard_so_matrix(g), x);
        EXPECT_NEAR(displacement(g * s * g.inverse(), gx), displacement(s, x), 1e-7);
    }
}

TEST(Points, Validation) {
    EXPECT_THROW(HyperbolicPoint({1.0}), InvalidArgument);
    EXPECT_THROW(HyperbolicPoint({-1.0, 0.0}), InvalidArgument);
    EXPECT_THROW(HyperbolicPoint({2.0, 0.0}), InvalidArgument);
    const auto p = HyperbolicPoint::from_spatial({3.0, 4.0});
    EXPECT_NEAR(p.coordinates()[0], std::sqrt(26.0), 1e-12);
    EXPECT_NEAR(hyperbolic_distance(p, p), 0.0, 1e-7);
    const auto a = standard_real_algebra(3);
    EXPECT_THROW(displacement(SpinElement<double>(DE::scalar(a, 1.0)), HyperbolicPoint::basepoint(4)),
                 InvalidArgument);
    EXPECT_THROW(clamped_arccosh(0.5), NumericError);
}

TEST(Generators, Validation) {
    const auto a = standard_rational_algebra(3);
    EXPECT_THROW(rational_boost(a, 1, Rational(2)), InvalidArgument);
    EXPECT_THROW(rational_boost(a, 2, Rational(0)), InvalidArgument);
    EXPECT_THROW(rational_rotation(a, 1, 2, Rational(1)), InvalidArgument);
    EXPECT_THROW(rational_rotation(a, 2, 4, Rational(1)), InvalidArgument);
    EXPECT_EQ(rational_boost(a, 2, Rational(2)), parse("5/4 + 3/4*e12", a));
}
