#include "spinsys/systole.hpp"

#include "spinsys/detail/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spinsys {

namespace {

constexpr double kLog2 = 0.69314718055994530942;

AlgebraicInteger real_abs(const AlgebraicInteger& x) { return x.sign() < 0 ? -x : x; }

// Orders a coordinate by magnitude, then positive before negative.
bool coordinate_less(const AlgebraicInteger& x, const AlgebraicInteger& y) {
    auto key = [](const AlgebraicInteger& v) {
        return std::make_tuple(BigInt(abs(v.rational_part())), v.rational_part() < 0, BigInt(abs(v.radical_part())),
                               v.radical_part() < 0);
    };
    return key(x) < key(y);
}

std::int64_t narrow(const BigInt& v) {
    constexpr std::int64_t limit = std::int64_t{1} << 62;
    if (v >= limit || v <= -limit) throw UnsupportedOperation("search box too large for 64-bit accumulation");
    return v.convert_to<std::int64_t>();
}

struct Candidate {
    AlgebraicInteger value;
    // s_M^2 f(e_M) as a + b sqrt(d).
    std::int64_t a = 0;
    std::int64_t b = 0;
};

struct SliceResult {
    std::optional<ShortElement> best;
    std::optional<AlgebraicInteger> min_abs_real;
    bool identity = false;
    std::uint64_t survivors = 0;
    std::uint64_t non_hyperbolic = 0;
    std::uint64_t real_violations = 0;
    std::uint64_t displacement_violations = 0;
};

bool better(const ShortElement& candidate, const std::optional<ShortElement>& incumbent) {
    return !incumbent || compare_real(candidate.cosh_displacement, incumbent->cosh_displacement) < 0;
}

}  // namespace

double real_part_lower_bound(const BigInt& norm, int degree) {
    if (norm < 1) throw InvalidArgument("ideal norm must be positive");
    if (degree < 1) throw InvalidArgument("degree must be positive");
    const double n = norm.convert_to<double>();
    return n * n / std::ldexp(1.0, 2 * degree - 1) - 1.0;
}

SystoleLowerBound systole_lower_bound(const BigInt& norm, int degree) {
    if (norm < 1) throw InvalidArgument("ideal norm must be positive");
    if (degree < 1) throw InvalidArgument("degree must be positive");
    const double value = 4.0 * std::log(norm.convert_to<double>()) - 4.0 * degree * kLog2;
    return {value, norm >= (BigInt(1) << degree)};
}

Rational theorem_constant(int n) {
    if (n < 1) throw InvalidArgument("dimension must be positive");
    return Rational(8, n * (n + 1));
}

double theorem_bound(double vol, int n, double base_vol, int degree) {
    if (!(vol > 0) || !(base_vol > 0)) throw InvalidArgument("volumes must be positive");
    if (degree < 1) throw InvalidArgument("degree must be positive");
    const double c = theorem_constant(n).convert_to<double>();
    return c * std::log(vol) - (4.0 * degree * kLog2 + c * std::log(base_vol));
}

SystoleEstimate search_short_elements(const CongruenceLevel& level, const SearchBox& box) {
    const QuadraticForm& form = level.form();
    const IdealHandle& ideal = level.ideal();
    if (box.bound < 1) throw InvalidArgument("search box bound must be at least 1");
    if (box.bound > (std::int64_t{1} << 20)) throw InvalidArgument("search box bound above 2^20");
    if (!form.is_admissible()) throw HypothesisViolation("box search needs an admissible form");

    const FieldSpec& field = form.field();
    const int degree = field.degree();
    SystoleEstimate out;
    out.lower = systole_lower_bound(ideal.norm(), degree);
    out.real_part_bound = real_part_lower_bound(ideal.norm(), degree);

    const CliffordAlgebra<AlgebraicInteger> algebra = form.integral_algebra();
    const std::vector<BladeMask> blades = even_blades(form.dimension());
    const std::size_t width = blades.size();
    const AlgebraicInteger one(field, 1);

    // Per-coordinate candidates: congruence condition, then the bound from
    // the positive definite conjugate form.
    std::vector<std::vector<Candidate>> lists(width);
    const std::int64_t radical_bound = field.is_rational() ? 0 : box.bound;
    for (std::size_t k = 0; k < width; ++k) {
        const AlgebraicInteger& fm = algebra.blade_square(blades[k]);
        std::vector<AlgebraicInteger> values;
        for (std::int64_t a = -box.bound; a <= box.bound; ++a) {
            for (std::int64_t b = -radical_bound; b <= radical_bound; ++b) {
                const AlgebraicInteger v(field, a, b);
                if (!ideal.contains(blades[k] == 0 ? v - one : v)) continue;
                const AlgebraicInteger term = v * v * fm;
                if (!field.is_rational() && compare_real(term.conjugate(), one) > 0) continue;
                values.push_back(v);
            }
        }
        std::sort(values.begin(), values.end(), coordinate_less);
        for (const auto& v : values) {
            const AlgebraicInteger term = v * v * fm;
            lists[k].push_back({v, narrow(term.rational_part()), narrow(term.radical_part())});
        }
    }
    double product = 1.0;
    for (const auto& l : lists) product *= static_cast<double>(l.size());
    if (product > static_cast<double>(box.budget)) throw BudgetExceeded("search_short_elements", product, box.budget);
    out.candidates = static_cast<std::uint64_t>(product);
    if (product == 0.0) return out;

    const double tolerance = kRealTolerance;
    std::vector<SliceResult> results(lists[0].size());
    detail::for_each_slice(lists[0].size(), box.threads, [&](std::size_t slice) {
        SliceResult& result = results[slice];
        std::vector<std::size_t> digits(width, 0);
        digits[0] = slice;
        while (true) {
            __int128 a = 0;
            __int128 b = 0;
            for (std::size_t k = 0; k < width; ++k) {
                a += lists[k][digits[k]].a;
                b += lists[k][digits[k]].b;
            }
            if (a == 1 && b == 0) {
                CliffordElement<AlgebraicInteger> s(algebra);
                for (std::size_t k = 0; k < width; ++k) s.set(blades[k], lists[k][digits[k]].value);
                if (is_spin(s)) {
                    const SpinElement<AlgebraicInteger> spin(s);
                    if (in_gamma_I(spin, ideal)) {
                        ++result.survivors;
                        const bool trivial = s.terms().size() == 1 && s.terms().count(0) == 1 &&
                                             real_abs(s.scalar_part()) == one;
                        if (trivial && s.scalar_part() == one) result.identity = true;
                        const AlgebraicInteger real = real_abs(s.scalar_part());
                        if (!trivial && !(s.scalar_part() == one)) {
                            if (real.to_double() < out.real_part_bound - tolerance) ++result.real_violations;
                        }
                        const bool hyperbolic = compare_real(real, one) > 0;
                        if (!trivial && !hyperbolic) ++result.non_hyperbolic;
                        if (hyperbolic) {
                            AlgebraicInteger cosh(field, 0);
                            for (const auto& [m, c] : s.terms()) {
                                cosh += c * c * real_abs(algebra.blade_square(m));
                            }
                            const double d = displacement_at_basepoint(spin);
                            if (out.lower.valid && d < out.lower.value - tolerance) ++result.displacement_violations;
                            if (!result.min_abs_real || compare_real(real, *result.min_abs_real) < 0) {
                                result.min_abs_real = real;
                            }
                            ShortElement found{s, cosh, d};
                            if (better(found, result.best)) result.best = std::move(found);
                        }
                    }
                }
            }
            std::size_t k = width;
            bool done = true;
            while (k > 1) {
                --k;
                if (++digits[k] < lists[k].size()) {
                    done = false;
                    break;
                }
                digits[k] = 0;
            }
            if (done) break;
        }
    });

    for (auto& r : results) {
        out.survivors += r.survivors;
        out.non_hyperbolic += r.non_hyperbolic;
        out.real_part_violations += r.real_violations;
        out.displacement_violations += r.displacement_violations;
        out.identity_found = out.identity_found || r.identity;
        if (r.min_abs_real && (!out.min_abs_real_part || compare_real(*r.min_abs_real, *out.min_abs_real_part) < 0)) {
            out.min_abs_real_part = r.min_abs_real;
        }
        if (r.best && better(*r.best, out.shortest_found)) out.shortest_found = std::move(r.best);
    }
    return out;
}

QuadraticForm restrict_to_ternary(const QuadraticForm& form) {
    if (form.dimension() < 3) throw InvalidArgument("ternary restriction needs at least three variables");
    return form.restrict_to(3);
}

QuaternionParams quaternion_params(const QuadraticForm& ternary) {
    if (ternary.dimension() != 3) throw InvalidArgument("quaternion parameters need a ternary form");
    QuaternionParams out;
    out.a = ternary.signature_coefficient(0) * ternary.signature_coefficient(1);
    out.b = ternary.signature_coefficient(0) * ternary.signature_coefficient(2);
    const auto algebra = ternary.integral_algebra();
    using E = CliffordElement<AlgebraicInteger>;
    const E i = E::blade(algebra, 0b011, algebra.one());
    const E j = E::blade(algebra, 0b101, algebra.one());
    out.relations_hold = i * i == E::scalar(algebra, out.a) && j * j == E::scalar(algebra, out.b) &&
                         (i * j + j * i).is_zero();
    return out;
}

ModelValue volume_model(const IdealHandle& ideal, const VolumeModel& model) {
    if (!(model.nu > 0)) throw InvalidArgument("volume normalization must be positive");
    if (model.n < 1) throw InvalidArgument("dimension must be positive");
    const double norm = ideal.norm().convert_to<double>();
    return {model.nu * std::pow(norm, model.n * (model.n + 1) / 2.0), !is_prime_ideal(ideal)};
}

ModelValue area_model(const IdealHandle& ideal, double mu) {
    if (!(mu > 0)) throw InvalidArgument("area normalization must be positive");
    const double norm = ideal.norm().convert_to<double>();
    return {mu * norm * norm * norm, !is_prime_ideal(ideal)};
}

SharpnessReport sharpness_report(const QuadraticForm& form, const std::vector<IdealHandle>& ideals,
                                 const VolumeModel& model, const SearchBox& box) {
    if (model.n != form.n()) throw InvalidArgument("volume model dimension differs from the form");
    SharpnessReport report;
    report.n = model.n;
    const double c = theorem_constant(model.n).convert_to<double>();
    const QuadraticForm surface = restrict_to_ternary(form);
    for (const auto& ideal : ideals) {
        SharpnessRow row{ideal, ideal.norm(), systole_lower_bound(ideal.norm(), form.field().degree()),
                         std::nullopt, volume_model(ideal, model), 0.0, std::nullopt};
        const double scale = c * std::log(row.volume.value);
        row.lower_ratio = scale > 0 ? row.lower.value / scale : std::numeric_limits<double>::quiet_NaN();
        if (box.bound > 0) {
            const SystoleEstimate estimate = search_short_elements(CongruenceLevel(surface, ideal), box);
            if (estimate.shortest_found) {
                row.shortest_found = estimate.shortest_found->displacement;
                if (scale > 0) row.found_ratio = *row.shortest_found / scale;
            }
        }
        report.rows.push_back(std::move(row));
    }
    std::vector<const SharpnessRow*> sorted;
    for (const auto& r : report.rows) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const auto* x, const auto* y) { return x->norm < y->norm; });
    report.monotone = true;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (!(sorted[i]->lower_ratio > sorted[i - 1]->lower_ratio)) report.monotone = false;
    }
    return report;
}

}  // namespace spinsys
