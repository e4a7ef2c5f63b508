#pragma once

// Lower bounds for the systole of M_I = Gamma(I)\H^n, the exhaustive box
// search for short elements of Gamma(I), and the surface comparison used to
// show the constant 8/(n(n+1)) cannot be improved.

#include "spinsys/congruence.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spinsys {

// N(I)^2 / 2^{2d-1} - 1: lower bound for |s_R| over s in Gamma(I), s != 1.
double real_part_lower_bound(const BigInt& norm, int degree);

struct SystoleLowerBound {
    double value = 0.0;
    // The bound needs N(I) >= 2^d.
    bool valid = false;
};

// 4 log N(I) - 4 d log 2.
SystoleLowerBound systole_lower_bound(const BigInt& norm, int degree);

// 8 / (n (n+1)), exact.
Rational theorem_constant(int n);
// theorem_constant(n) log(vol) - (4 d log 2 + theorem_constant(n) log(base_vol)).
double theorem_bound(double vol, int n, double base_vol, int degree);

struct SearchBox {
    // |a|, |b| <= bound for every coordinate a + b sqrt(d).
    std::int64_t bound = 1;
    // Cap on the number of tuples left after per-coordinate filtering.
    std::uint64_t budget = kDefaultBudget;
    unsigned threads = 1;
};

struct ShortElement {
    CliffordElement<AlgebraicInteger> element;
    // cosh of the displacement at e_1, exact: sum_M s_M^2 |f(e_M)|.
    AlgebraicInteger cosh_displacement;
    double displacement = 0.0;
};

struct SystoleEstimate {
    SystoleLowerBound lower;
    double real_part_bound = 0.0;
    // Among elements with |s_R| > 1 (hyperbolic, since every point is then
    // moved by at least 2 log|s_R|), the one with the least displacement at
    // e_1.  Ties go to the lexicographically smallest coefficient tuple, each
    // coefficient ordered by magnitude first and positive before negative.
    std::optional<ShortElement> shortest_found;
    // Smallest |s_R| over the same elements.
    std::optional<AlgebraicInteger> min_abs_real_part;
    bool identity_found = false;
    std::uint64_t candidates = 0;
    std::uint64_t survivors = 0;
    // Survivors other than +-1 with |s_R| <= 1 (elliptic or parabolic, e.g.
    // unipotent 1 + N with N^2 = 0).  Never used as systole candidates.
    std::uint64_t non_hyperbolic = 0;
    // Survivors with s_R != 1 breaking the real-part bound, or (when valid)
    // the displacement bound; always expected to be zero.
    std::uint64_t real_part_violations = 0;
    std::uint64_t displacement_violations = 0;
};

// Scans every even tuple in the box satisfying the coefficient congruences,
// drops tuples off the scalar equation sum s_M^2 f(e_M) = 1 before any
// Clifford product, and keeps elements passing is_spin and in_gamma_I.
// Over a quadratic field the conjugate embedding also bounds each coordinate
// through sigma(s_M)^2 sigma(f(e_M)) <= 1.  Requires an admissible form.
SystoleEstimate search_short_elements(const CongruenceLevel& level, const SearchBox& box);

// a_1 x_1^2 - a_2 x_2^2 - a_3 x_3^2 on span{e_1, e_2, e_3}.
QuadraticForm restrict_to_ternary(const QuadraticForm& form);

struct QuaternionParams {
    // a = a_1 a_2, b = a_1 a_3 in the signature convention.
    AlgebraicInteger a;
    AlgebraicInteger b;
    // i = e_1 e_2, j = e_1 e_3 satisfy i^2 = a, j^2 = b, ij = -ji.
    bool relations_hold = false;
};

QuaternionParams quaternion_params(const QuadraticForm& ternary);

struct VolumeModel {
    double nu = 1.0;
    int n = 2;
};

struct ModelValue {
    double value = 0.0;
    // The asymptotic is stated for prime ideals.
    bool approximate = false;
};

// nu N(I)^{n(n+1)/2}.
ModelValue volume_model(const IdealHandle& ideal, const VolumeModel& model);
// mu N(I)^3.
ModelValue area_model(const IdealHandle& ideal, double mu);

struct SharpnessRow {
    IdealHandle ideal;
    BigInt norm;
    SystoleLowerBound lower;
    std::optional<double> shortest_found;
    ModelValue volume;
    // lower / (theorem_constant(n) log vol) and the same for shortest_found.
    double lower_ratio = 0.0;
    std::optional<double> found_ratio;
};

struct SharpnessReport {
    int n = 2;
    std::vector<SharpnessRow> rows;
    // lower_ratio strictly increasing along rows sorted by norm.
    bool monotone = false;
};

// For each ideal: the lower bound, the shortest element found on the ternary
// restriction of the form (the surface S_I), the volume model and the ratios
// against theorem_constant(n) log(vol).
SharpnessReport sharpness_report(const QuadraticForm& form, const std::vector<IdealHandle>& ideals,
                                 const VolumeModel& model, const SearchBox& box);

}  // namespace spinsys
