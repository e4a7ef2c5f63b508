#include "spinsys/systole.hpp"

#include "random_spin.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace spinsys;

namespace {

const FieldSpec kQ = FieldSpec::rational();
const FieldSpec kQ2 = FieldSpec::quadratic(2);

IdealHandle ideal(const char* text, const FieldSpec& field = kQ) { return IdealHandle::parse(text, field); }

SystoleEstimate search(const QuadraticForm& form, const IdealHandle& i, std::int64_t bound, unsigned threads = 1) {
    SearchBox box;
    box.bound = bound;
    box.threads = threads;
    return search_short_elements(CongruenceLevel(form, i), box);
}

bool inside_box(const CliffordElement<AlgebraicInteger>& s, std::int64_t bound) {
    for (const auto& [m, c] : s.terms()) {
        if (abs(c.rational_part()) > bound || abs(c.radical_part()) > bound) return false;
    }
    return true;
}

}  // namespace

TEST(Bounds, RealPartAndSystole) {
    EXPECT_DOUBLE_EQ(real_part_lower_bound(BigInt(3), 1), 3.5);
    EXPECT_DOUBLE_EQ(real_part_lower_bound(BigInt(9), 2), 81.0 / 8.0 - 1.0);
    const SystoleLowerBound b = systole_lower_bound(BigInt(3), 1);
    EXPECT_NEAR(b.value, 4 * std::log(1.5), 1e-12);
    EXPECT_TRUE(b.valid);
    EXPECT_NEAR(systole_lower_bound(BigInt(5), 1).value, 3.66516292, 1e-8);
    EXPECT_FALSE(systole_lower_bound(BigInt(3), 2).valid);
    EXPECT_TRUE(systole_lower_bound(BigInt(4), 2).valid);
    EXPECT_THROW(systole_lower_bound(BigInt(0), 1), InvalidArgument);
    EXPECT_THROW(real_part_lower_bound(BigInt(3), 0), InvalidArgument);
}

TEST(Bounds, TheoremConstants) {
    EXPECT_EQ(theorem_constant(2), Rational(4, 3));
    EXPECT_EQ(theorem_constant(3), Rational(2, 3));
    EXPECT_EQ(theorem_constant(4), Rational(2, 5));
    EXPECT_THROW(theorem_constant(0), InvalidArgument);
    EXPECT_NEAR(theorem_bound(1000.0, 2, 2.0, 1), 4.0 / 3.0 * std::log(1000.0) - 4 * std::log(2.0) -
                                                       4.0 / 3.0 * std::log(2.0),
                1e-12);
    EXPECT_THROW(theorem_bound(-1.0, 2, 1.0, 1), InvalidArgument);
}

TEST(Search, StandardTernaryLevelThree) {
    const SystoleEstimate e = search(QuadraticForm::standard(3), ideal("(3)"), 10);
    ASSERT_TRUE(e.shortest_found.has_value());
    EXPECT_EQ(to_string(e.shortest_found->element), "-8 + 6*e12 + 6*e13 + 3*e23");
    EXPECT_EQ(e.shortest_found->cosh_displacement, AlgebraicInteger(145));
    EXPECT_NEAR(e.shortest_found->displacement, std::acosh(145.0), 1e-10);
    ASSERT_TRUE(e.min_abs_real_part.has_value());
    EXPECT_EQ(*e.min_abs_real_part, AlgebraicInteger(8));
    EXPECT_GE(8.0, e.real_part_bound);
    EXPECT_GE(e.shortest_found->displacement, e.lower.value);
    EXPECT_TRUE(e.identity_found);
    EXPECT_EQ(e.real_part_violations, 0u);
    EXPECT_EQ(e.displacement_violations, 0u);
    EXPECT_GT(e.non_hyperbolic, 0u);
}

TEST(Search, WitnessIsInGammaI) {
    const QuadraticForm f = QuadraticForm::standard(3);
    const SystoleEstimate e = search(f, ideal("(5)"), 40);
    ASSERT_TRUE(e.shortest_found.has_value());
    const SpinElement<AlgebraicInteger> s(e.shortest_found->element);
    EXPECT_TRUE(in_gamma_I(s, ideal("(5)")));
    EXPECT_GE(std::fabs(s.real_part().to_double()), real_part_lower_bound(BigInt(5), 1));
    EXPECT_NEAR(std::cosh(displacement_at_basepoint(s)), e.shortest_found->cosh_displacement.to_double(), 1e-6);
    EXPECT_EQ(e.real_part_violations, 0u);
    EXPECT_EQ(e.displacement_violations, 0u);
}

TEST(Search, TrivialLevel) {
    const SystoleEstimate e = search(QuadraticForm::standard(3), ideal("(1)"), 2);
    EXPECT_TRUE(e.identity_found);
    EXPECT_FALSE(e.lower.valid);
    ASSERT_TRUE(e.shortest_found.has_value());
    EXPECT_GT(e.shortest_found->displacement, 0.0);
}

TEST(Search, LargerBoxIsConsistent) {
    const QuadraticForm f = QuadraticForm::standard(3);
    const SystoleEstimate small = search(f, ideal("(3)"), 10);
    for (const std::int64_t bound : {12, 20, 30}) {
        const SystoleEstimate big = search(f, ideal("(3)"), bound);
        ASSERT_TRUE(big.shortest_found.has_value());
        EXPECT_LE(compare_real(big.shortest_found->cosh_displacement, small.shortest_found->cosh_displacement), 0);
        if (inside_box(big.shortest_found->element, 10)) {
            EXPECT_EQ(big.shortest_found->element, small.shortest_found->element);
        }
        EXPECT_GE(big.survivors, small.survivors);
    }
}

TEST(Search, ThreadsDoNotChangeResult) {
    const QuadraticForm f = QuadraticForm::standard(4);
    const SystoleEstimate a = search(f, ideal("(3)"), 4, 1);
    const SystoleEstimate b = search(f, ideal("(3)"), 4, 8);
    ASSERT_EQ(a.shortest_found.has_value(), b.shortest_found.has_value());
    if (a.shortest_found) EXPECT_EQ(a.shortest_found->element, b.shortest_found->element);
    EXPECT_EQ(a.survivors, b.survivors);
    EXPECT_EQ(a.candidates, b.candidates);
    EXPECT_EQ(a.real_part_violations, 0u);
    EXPECT_EQ(a.displacement_violations, 0u);
}

TEST(Search, QuadraticField) {
    const QuadraticForm f = QuadraticForm::parse("1,-sqrt2,-sqrt2", kQ2);
    const SystoleEstimate e = search(f, ideal("(3)", kQ2), 6);
    EXPECT_TRUE(e.identity_found);
    EXPECT_EQ(e.real_part_violations, 0u);
    EXPECT_EQ(e.displacement_violations, 0u);
    if (e.shortest_found) {
        const SpinElement<AlgebraicInteger> s(e.shortest_found->element);
        EXPECT_TRUE(in_gamma_I(s, ideal("(3)", kQ2)));
        EXPECT_GE(e.shortest_found->displacement, e.lower.value - 1e-9);
    }
}

TEST(Search, Rejections) {
    EXPECT_THROW(search(QuadraticForm::parse("1,1,-1", kQ), ideal("(3)"), 3), HypothesisViolation);
    EXPECT_THROW(search(QuadraticForm::standard(3), ideal("(3)"), 0), InvalidArgument);
    SearchBox box;
    box.bound = 40;
    box.budget = 1000;
    EXPECT_THROW(search_short_elements(CongruenceLevel(QuadraticForm::standard(3), ideal("(3)")), box),
                 BudgetExceeded);
}

TEST(Quaternion, Examples) {
    const QuaternionParams p = quaternion_params(QuadraticForm::standard(3));
    EXPECT_EQ(p.a, AlgebraicInteger(1));
    EXPECT_EQ(p.b, AlgebraicInteger(1));
    EXPECT_TRUE(p.relations_hold);
    const QuaternionParams q = quaternion_params(QuadraticForm::parse("1,-2,-3", kQ));
    EXPECT_EQ(q.a, AlgebraicInteger(2));
    EXPECT_EQ(q.b, AlgebraicInteger(3));
    EXPECT_TRUE(q.relations_hold);
    EXPECT_THROW(quaternion_params(QuadraticForm::standard(4)), InvalidArgument);
    EXPECT_EQ(restrict_to_ternary(QuadraticForm::parse("1,-2,-3,-5", kQ)), QuadraticForm::parse("1,-2,-3", kQ));
    EXPECT_THROW(restrict_to_ternary(QuadraticForm::standard(2)), InvalidArgument);
}

TEST(Quaternion, RandomAdmissibleForms) {
    std::mt19937_64 rng(testkit::test_seed());
    int checked = 0;
    for (int t = 0; t < 50; ++t) {
        const QuadraticForm f = testkit::random_admissible_ternary(kQ, rng);
        ASSERT_TRUE(f.is_admissible());
        const QuaternionParams p = quaternion_params(f);
        EXPECT_TRUE(p.relations_hold);
        EXPECT_EQ(p.a, f.diagonal(0) * -f.diagonal(1));
        ++checked;
    }
    for (int t = 0; t < 50; ++t) {
        const QuadraticForm f = testkit::random_admissible_ternary(kQ2, rng);
        ASSERT_TRUE(f.is_admissible()) << f.to_string();
        const QuaternionParams p = quaternion_params(f);
        EXPECT_TRUE(p.relations_hold);
        EXPECT_EQ(p.b, f.diagonal(0) * -f.diagonal(2));
        ++checked;
    }
    EXPECT_EQ(checked, 100);
}

TEST(Volume, Models) {
    EXPECT_DOUBLE_EQ(volume_model(ideal("(5)"), {1.0, 2}).value, 125.0);
    EXPECT_DOUBLE_EQ(volume_model(ideal("(3)"), {2.0, 4}).value, 2.0 * 59049.0);
    EXPECT_FALSE(volume_model(ideal("(5)"), {1.0, 2}).approximate);
    EXPECT_TRUE(volume_model(ideal("(9)"), {1.0, 2}).approximate);
    EXPECT_DOUBLE_EQ(area_model(ideal("(7)"), 0.5).value, 171.5);
    EXPECT_THROW(volume_model(ideal("(5)"), {0.0, 2}), InvalidArgument);
    EXPECT_THROW(area_model(ideal("(5)"), -1.0), InvalidArgument);
}

TEST(Sharpness, RatioClosedForm) {
    std::vector<IdealHandle> ideals;
    for (const char* p : {"(3)", "(5)", "(7)", "(11)", "(13)", "(101)"}) ideals.push_back(ideal(p));
    SearchBox box;
    box.bound = 0;
    const SharpnessReport r = sharpness_report(QuadraticForm::standard(3), ideals, {1.0, 2}, box);
    ASSERT_EQ(r.rows.size(), 6u);
    for (const auto& row : r.rows) {
        const double p = row.norm.convert_to<double>();
        EXPECT_NEAR(row.lower_ratio, 1.0 - std::log(2.0) / std::log(p), 1e-9);
        EXPECT_FALSE(row.shortest_found.has_value());
    }
    EXPECT_TRUE(r.monotone);
    EXPECT_GT(r.rows.back().lower_ratio, 0.84);
}

TEST(Sharpness, WithSurfaceSearch) {
    SearchBox box;
    box.bound = 10;
    const SharpnessReport r =
        sharpness_report(QuadraticForm::standard(4), {ideal("(3)"), ideal("(5)")}, {1.0, 3}, box);
    ASSERT_EQ(r.rows.size(), 2u);
    ASSERT_TRUE(r.rows[0].shortest_found.has_value());
    EXPECT_NEAR(*r.rows[0].shortest_found, std::acosh(145.0), 1e-9);
    EXPECT_GE(*r.rows[0].shortest_found, r.rows[0].lower.value);
    EXPECT_THROW(sharpness_report(QuadraticForm::standard(3), {ideal("(3)")}, {1.0, 3}, box), InvalidArgument);
}
