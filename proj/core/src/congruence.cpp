#include "spinsys/congruence.hpp"

#include "spinsys/detail/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_map>

namespace spinsys {

namespace {

std::vector<BigInt> prime_divisors(BigInt n) {
    std::vector<BigInt> out;
    n = abs(n);
    for (BigInt p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

double power_count(double base, double exponent) { return std::pow(base, exponent); }

void require_odd_field(const ResidueRing& field, const char* what) {
    if (!field.is_field()) throw InvalidArgument(std::string(what) + ": residue ring is not a field");
    if (field.size() % 2 == 0) throw InvalidArgument(std::string(what) + ": characteristic 2 is not supported");
}

void require_same_ring(const std::vector<ResidueElement>& values, const ResidueRing& field) {
    for (const auto& v : values) {
        if (!(v.modulus() == field.modulus())) throw InvalidArgument("residue from a different ring");
    }
}

// Even tuples (stored flat, one residue index per even blade) that satisfy
// s s^* = 1 and s E s^* = E, in lexicographic index order.
struct SpinScan {
    std::vector<BladeMask> blades;
    std::vector<std::int64_t> flat;
    std::uint64_t scanned = 0;

    std::size_t stride() const { return blades.size(); }
    std::size_t count() const { return blades.empty() ? 0 : flat.size() / blades.size(); }
};

CliffordElement<ResidueElement> element_from_indices(const CliffordAlgebra<ResidueElement>& algebra,
                                                     const ResidueRing& ring, const std::vector<BladeMask>& blades,
                                                     const std::int64_t* indices) {
    CliffordElement<ResidueElement> out(algebra);
    for (std::size_t k = 0; k < blades.size(); ++k) out.set(blades[k], ring.element(indices[k]));
    return out;
}

std::vector<std::int64_t> indices_of(const CliffordElement<ResidueElement>& s, const std::vector<BladeMask>& blades,
                                     const ResidueRing& ring) {
    std::vector<std::int64_t> out;
    out.reserve(blades.size());
    for (const BladeMask m : blades) {
        const auto it = s.terms().find(m);
        out.push_back(it == s.terms().end() ? ring.zero().index() : it->second.index());
    }
    return out;
}

SpinScan scan_spin(const QuadraticForm& form, const ResidueRing& ring, const EnumerationOptions& options) {
    SpinScan scan;
    scan.blades = even_blades(form.dimension());
    const std::size_t width = scan.blades.size();
    const std::int64_t q = ring.size();
    const double required = power_count(static_cast<double>(q), static_cast<double>(width));
    if (required > static_cast<double>(options.budget)) {
        throw BudgetExceeded("enumerate_finite_spin", required, options.budget);
    }
    const CliffordAlgebra<ResidueElement> algebra = form.residue_algebra(ring);

    // contribution[k][x] = x^2 f(e_M) for the k-th even blade and residue x.
    std::vector<std::vector<ResidueElement>> contribution(width);
    for (std::size_t k = 0; k < width; ++k) {
        const ResidueElement& fm = algebra.blade_square(scan.blades[k]);
        contribution[k].reserve(static_cast<std::size_t>(q));
        for (std::int64_t x = 0; x < q; ++x) {
            const ResidueElement r = ring.element(x);
            contribution[k].push_back(r * r * fm);
        }
    }
    const ResidueElement one = ring.one();

    const auto slices = static_cast<std::size_t>(q);
    std::vector<std::vector<std::int64_t>> found(slices);
    detail::for_each_slice(slices, options.threads, [&](std::size_t slice) {
        std::vector<std::int64_t> digits(width, 0);
        digits[0] = static_cast<std::int64_t>(slice);
        auto& out = found[slice];
        while (true) {
            ResidueElement sum = contribution[0][static_cast<std::size_t>(digits[0])];
            for (std::size_t k = 1; k < width; ++k) sum += contribution[k][static_cast<std::size_t>(digits[k])];
            // The scalar part of s s^* must be 1 before anything else is worth checking.
            if (sum == one) {
                const auto s = element_from_indices(algebra, ring, scan.blades, digits.data());
                if (is_spin(s)) out.insert(out.end(), digits.begin(), digits.end());
            }
            std::size_t k = width;
            while (k > 1) {
                --k;
                if (++digits[k] < q) break;
                digits[k] = 0;
                if (k == 1) {
                    k = 0;
                    break;
                }
            }
            if (k == 0 || width == 1) break;
        }
    });
    for (auto& part : found) scan.flat.insert(scan.flat.end(), part.begin(), part.end());
    scan.scanned = static_cast<std::uint64_t>(required);
    return scan;
}

// Products of sampled pairs must land back in the scanned set.
std::uint64_t check_closure(const SpinScan& scan, const QuadraticForm& form, const ResidueRing& ring,
                            std::uint64_t seed) {
    const std::size_t count = scan.count();
    if (count == 0) throw NumericError("enumeration found no elements; the identity is always present");
    const CliffordAlgebra<ResidueElement> algebra = form.residue_algebra(ring);
    std::set<std::vector<std::int64_t>> members;
    for (std::size_t i = 0; i < count; ++i) {
        const auto* begin = scan.flat.data() + i * scan.stride();
        members.emplace(begin, begin + scan.stride());
    }
    std::mt19937_64 engine(seed);
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    const std::uint64_t samples = std::min<std::uint64_t>(64, static_cast<std::uint64_t>(count) * count);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const std::size_t x = pick(engine);
        const std::size_t y = pick(engine);
        const auto s = element_from_indices(algebra, ring, scan.blades, scan.flat.data() + x * scan.stride());
        const auto t = element_from_indices(algebra, ring, scan.blades, scan.flat.data() + y * scan.stride());
        if (!members.count(indices_of(s * t, scan.blades, ring))) {
            throw NumericError("enumerated set is not closed under multiplication");
        }
    }
    return samples;
}

std::vector<ResidueElement> reduce_diagonal(const QuadraticForm& form, const ResidueRing& ring) {
    std::vector<ResidueElement> out;
    for (const auto& c : form.diagonal()) out.push_back(ring.reduce(c));
    return out;
}

ResidueElement leibniz_determinant(const std::vector<std::vector<ResidueElement>>& columns, const ResidueRing& ring) {
    const std::size_t m = columns.size();
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    ResidueElement det = ring.zero();
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
        }
        ResidueElement term = ring.one();
        for (std::size_t j = 0; j < m; ++j) term *= columns[j][perm[j]];
        det = inversions % 2 == 0 ? det + term : det - term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

}  // namespace

// ------------------------------------------------------------ CongruenceLevel

CongruenceLevel::CongruenceLevel(QuadraticForm form, IdealHandle ideal, std::optional<bool> declared_good)
    : form_(std::move(form)), ideal_(std::move(ideal)) {
    if (!(ideal_.field() == form_.field()) && !ideal_.field().is_rational()) {
        throw InvalidArgument("form and ideal live over different fields");
    }
    const AlgebraicInteger d = AlgebraicInteger(form_.field(), 2) * form_.discriminant();
    bad_primes_ = prime_divisors(field_norm(d));
    const BigInt norm = ideal_.norm();
    if (form_.field().is_rational()) {
        good_ = std::none_of(bad_primes_.begin(), bad_primes_.end(),
                             [&](const BigInt& p) { return norm % p == 0; });
        if (declared_good && *declared_good != good_) {
            throw InvalidArgument("over Q goodness is decided by divisibility; the declaration contradicts it");
        }
    } else if (declared_good) {
        good_ = *declared_good;
    } else {
        good_ = gcd(norm, abs(field_norm(d))) == 1;
    }
}

std::string CongruenceLevel::exclusion_note() const {
    if (good_) return {};
    std::string primes;
    for (const auto& p : bad_primes_) {
        if (!primes.empty()) primes += ", ";
        primes += p.str();
    }
    return "ideal " + ideal_.to_string() + " is not coprime to D = 2*D_f; excluded primes: {" + primes + "}";
}

// ---------------------------------------------------------------- Gamma(I)

bool in_gamma_I(const SpinElement<AlgebraicInteger>& s, const IdealHandle& ideal) {
    for (const auto& [m, c] : s.element().terms()) {
        const AlgebraicInteger value = m == 0 ? c - AlgebraicInteger(1) : c;
        if (!ideal.contains(value)) return false;
    }
    if (s.element().coefficient(0).is_zero() && !ideal.contains(AlgebraicInteger(-1))) return false;
    return true;
}

bool in_gamma_I(const SpinElement<Rational>& s, const IdealHandle& ideal) {
    const CliffordAlgebra<Rational>& algebra = s.algebra();
    std::vector<AlgebraicInteger> squares;
    for (const auto& c : algebra.squares()) {
        if (denominator(c) != 1) throw InvalidArgument("form coefficients must be integers");
        squares.emplace_back(numerator(c));
    }
    CliffordElement<AlgebraicInteger> integral(
        CliffordAlgebra<AlgebraicInteger>(squares, AlgebraicInteger(0), AlgebraicInteger(1)));
    for (const auto& [m, c] : s.element().terms()) {
        if (denominator(c) != 1) {
            throw InvalidArgument("coefficient of " + blade_name(m) + " is not integral");
        }
        integral.set(m, AlgebraicInteger(numerator(c)));
    }
    return in_gamma_I(SpinElement<AlgebraicInteger>(std::move(integral)), ideal);
}

// ------------------------------------------------------------ enumeration

std::vector<BladeMask> even_blades(int dimension) {
    std::vector<BladeMask> out;
    const BladeMask count = BladeMask{1} << dimension;
    for (BladeMask m = 0; m < count; ++m) {
        if (blade_grade(m) % 2 == 0) out.push_back(m);
    }
    return out;
}

FiniteSpinGroup enumerate_finite_spin(const QuadraticForm& form, const IdealHandle& ideal,
                                      const EnumerationOptions& options) {
    const ResidueRing ring(ideal);
    const SpinScan scan = scan_spin(form, ring, options);
    FiniteSpinGroup group{CongruenceLevel(form, ideal), scan.count(), std::nullopt, scan.scanned, 0};
    group.closure_checks = check_closure(scan, form, ring, options.seed);
    if (options.keep_elements) {
        const CliffordAlgebra<ResidueElement> algebra = form.residue_algebra(ring);
        std::vector<CliffordElement<ResidueElement>> elements;
        elements.reserve(scan.count());
        for (std::size_t i = 0; i < scan.count(); ++i) {
            elements.push_back(element_from_indices(algebra, ring, scan.blades, scan.flat.data() + i * scan.stride()));
        }
        group.elements = std::move(elements);
    }
    return group;
}

// ------------------------------------------------------ orthogonal groups

std::uint64_t so_order_bruteforce(const std::vector<ResidueElement>& diagonal, const ResidueRing& field,
                                  std::uint64_t budget) {
    require_odd_field(field, "so_order_bruteforce");
    require_same_ring(diagonal, field);
    for (const auto& c : diagonal) {
        if (c.is_zero()) throw InvalidArgument("so_order_bruteforce: degenerate form");
    }
    const std::size_t m = diagonal.size();
    const std::int64_t q = field.size();
    const double vectors = power_count(static_cast<double>(q), static_cast<double>(m));
    if (vectors > static_cast<double>(budget)) throw BudgetExceeded("so_order_bruteforce", vectors, budget);

    auto value = [&](const std::vector<ResidueElement>& u, const std::vector<ResidueElement>& v) {
        ResidueElement acc = field.zero();
        for (std::size_t i = 0; i < m; ++i) acc += diagonal[i] * u[i] * v[i];
        return acc;
    };

    // Vectors of every length f(v) that occurs on the diagonal.
    std::vector<std::vector<std::vector<ResidueElement>>> candidates(m);
    std::vector<std::int64_t> digits(m, 0);
    const auto total = static_cast<std::uint64_t>(vectors);
    for (std::uint64_t counter = 0; counter < total; ++counter) {
        std::vector<ResidueElement> v;
        for (std::size_t i = 0; i < m; ++i) v.push_back(field.element(digits[i]));
        const ResidueElement length = value(v, v);
        for (std::size_t j = 0; j < m; ++j) {
            if (length == diagonal[j]) candidates[j].push_back(v);
        }
        for (std::size_t i = m; i-- > 0;) {
            if (++digits[i] < q) break;
            digits[i] = 0;
        }
    }

    std::uint64_t nodes = 0;
    std::uint64_t count = 0;
    std::vector<std::vector<ResidueElement>> columns;
    auto extend = [&](auto&& self, std::size_t j) -> void {
        if (j == m) {
            if (leibniz_determinant(columns, field) == field.one()) ++count;
            return;
        }
        for (const auto& v : candidates[j]) {
            if (++nodes > budget) throw BudgetExceeded("so_order_bruteforce", static_cast<double>(nodes), budget);
            bool orthogonal = true;
            for (const auto& u : columns) {
                if (!value(u, v).is_zero()) {
                    orthogonal = false;
                    break;
                }
            }
            if (!orthogonal) continue;
            columns.push_back(v);
            self(self, j + 1);
            columns.pop_back();
        }
    };
    extend(extend, 0);
    return count;
}

std::uint64_t so_order_bruteforce(const QuadraticForm& form, const IdealHandle& prime, std::uint64_t budget) {
    const ResidueRing field(prime);
    return so_order_bruteforce(reduce_diagonal(form, field), field, budget);
}

SoOrderFormula so_order_formula(int m, const BigInt& q, bool signed_discriminant_is_square) {
    if (m < 1) throw InvalidArgument("so_order_formula: dimension must be positive");
    if (q < 3 || q % 2 == 0) throw InvalidArgument("so_order_formula: q must be odd");
    SoOrderFormula out;
    const unsigned k = static_cast<unsigned>(m / 2);
    BigInt order = 1;
    if (m % 2 == 1) {
        order = pow(q, k * k);
        for (unsigned i = 1; i <= k; ++i) order *= pow(q, 2 * i) - 1;
    } else {
        out.epsilon = signed_discriminant_is_square ? 1 : -1;
        order = pow(q, k * (k - 1)) * (pow(q, k) - out.epsilon);
        for (unsigned i = 1; i + 1 <= k; ++i) order *= pow(q, 2 * i) - 1;
    }
    out.order = order;
    out.bound = pow(q, static_cast<unsigned>(m * (m - 1) / 2));
    out.within_bound = out.order <= out.bound;
    return out;
}

SoOrderFormula so_order_formula(const std::vector<ResidueElement>& diagonal, const ResidueRing& field) {
    require_odd_field(field, "so_order_formula");
    require_same_ring(diagonal, field);
    const int m = static_cast<int>(diagonal.size());
    ResidueElement disc = field.one();
    for (const auto& c : diagonal) disc *= c;
    if (disc.is_zero()) throw InvalidArgument("so_order_formula: degenerate form");
    if ((m / 2) % 2 == 1) disc = -disc;
    return so_order_formula(m, BigInt(field.size()), field.is_square(disc));
}

// ------------------------------------------------------------ kernel of theta

KernelReport kernel_theta_size(const QuadraticForm& form, const IdealHandle& prime, unsigned r,
                               const EnumerationOptions& options) {
    if (!is_prime_ideal(prime)) throw InvalidArgument("kernel_theta_size: " + prime.to_string() + " is not prime");
    const CongruenceLevel level(form, prime);
    if (!level.is_good()) throw HypothesisViolation(level.exclusion_note());

    const IdealHandle upper_ideal = prime.power(r + 1);
    const IdealHandle lower_ideal = prime.power(r);
    const ResidueRing upper(upper_ideal);
    const ResidueRing lower(lower_ideal);
    const SpinScan top = scan_spin(form, upper, options);
    const SpinScan bottom = scan_spin(form, lower, options);

    KernelReport report;
    report.upper_order = top.count();
    report.lower_order = bottom.count();
    report.expected = pow(prime.norm(), static_cast<unsigned>(form.n() * (form.n() + 1) / 2));
    report.shape_ok = true;

    const std::int64_t lower_zero = lower.zero().index();
    const std::int64_t lower_one = lower.one().index();
    const std::int64_t upper_zero = upper.zero().index();
    const std::int64_t upper_one = upper.one().index();
    for (std::size_t i = 0; i < top.count(); ++i) {
        const std::int64_t* tuple = top.flat.data() + i * top.stride();
        bool in_kernel = true;
        for (std::size_t k = 0; k < top.stride() && in_kernel; ++k) {
            const std::int64_t image = lower.reduce(upper.lift(upper.element(tuple[k]))).index();
            in_kernel = image == (top.blades[k] == 0 ? lower_one : lower_zero);
        }
        if (!in_kernel) continue;
        ++report.kernel_size;
        for (std::size_t k = 0; k < top.stride(); ++k) {
            const int grade = blade_grade(top.blades[k]);
            const bool ok = grade == 0   ? tuple[k] == upper_one
                            : grade == 2 ? lower_ideal.contains(upper.lift(upper.element(tuple[k])))
                                         : tuple[k] == upper_zero;
            report.shape_ok = report.shape_ok && ok;
        }
    }
    return report;
}

// ------------------------------------------------------------------- CRT

CrtReport crt_check(const QuadraticForm& form, const IdealHandle& ideal, const EnumerationOptions& options) {
    CrtReport report;
    report.product = 1;
    for (const auto& [p, e] : crt_split(ideal)) {
        const IdealHandle factor = p.power(e);
        CrtFactor row{factor, e, CongruenceLevel(form, p).is_good(), 0};
        row.order = scan_spin(form, ResidueRing(factor), options).count();
        report.product *= row.order;
        report.excluded = report.excluded || !row.good;
        report.factors.push_back(std::move(row));
    }
    report.direct_order = scan_spin(form, ResidueRing(ideal), options).count();
    report.equal = report.product == report.direct_order;
    return report;
}

// --------------------------------------------------------------- isotropy

std::array<ResidueElement, 3> universal_representation(const ResidueElement& b1, const ResidueElement& b2,
                                                       const ResidueElement& b3, const ResidueElement& c,
                                                       const ResidueRing& field) {
    require_odd_field(field, "universal_representation");
    require_same_ring({b1, b2, b3, c}, field);
    if (b2.is_zero() || b3.is_zero()) throw InvalidArgument("universal_representation: zero coefficient");
    const std::int64_t q = field.size();
    std::unordered_map<std::int64_t, std::int64_t> left;
    for (std::int64_t y = 0; y < q; ++y) {
        const ResidueElement v = field.element(y);
        left.emplace((b1 + b2 * v * v).index(), y);
    }
    for (std::int64_t z = 0; z < q; ++z) {
        const ResidueElement w = field.element(z);
        const auto it = left.find((c - b3 * w * w).index());
        if (it != left.end()) return {field.one(), field.element(it->second), w};
    }
    throw NumericError("no representation found; the two value sets must intersect over a finite field");
}

std::optional<std::vector<ResidueElement>> isotropy_test(const std::vector<ResidueElement>& diagonal,
                                                         const ResidueRing& field) {
    require_odd_field(field, "isotropy_test");
    require_same_ring(diagonal, field);
    if (diagonal.empty()) throw InvalidArgument("isotropy_test: empty form");
    for (const auto& c : diagonal) {
        if (c.is_zero()) throw InvalidArgument("isotropy_test: degenerate form (zero coefficient)");
    }
    std::vector<ResidueElement> v(diagonal.size(), field.zero());
    if (diagonal.size() >= 3) {
        const auto y = universal_representation(diagonal[0], diagonal[1], diagonal[2], field.zero(), field);
        std::copy(y.begin(), y.end(), v.begin());
        return v;
    }
    if (diagonal.size() == 1) return std::nullopt;
    // Two variables: b1 + b2 y^2 = 0 for some y (the first coordinate of an
    // isotropic vector cannot vanish).
    for (std::int64_t y = 0; y < field.size(); ++y) {
        const ResidueElement t = field.element(y);
        if ((diagonal[0] + diagonal[1] * t * t).is_zero()) {
            v[0] = field.one();
            v[1] = t;
            return v;
        }
    }
    return std::nullopt;
}

// ----------------------------------------------------------- index bound

BigInt index_upper_bound(const BigInt& norm, int n) {
    if (norm < 1) throw InvalidArgument("ideal norm must be positive");
    if (n < 1) throw InvalidArgument("dimension must be positive");
    return pow(norm, static_cast<unsigned>(n * (n + 1) / 2));
}

BigInt index_upper_bound(const CongruenceLevel& level) {
    if (!level.is_good()) throw HypothesisViolation(level.exclusion_note());
    return index_upper_bound(level.ideal().norm(), level.form().n());
}

}  // namespace spinsys
