#pragma once

// Random spin elements for property tests.  Exact ones are products of
// rational boosts and rotations; real ones of hyperbolic boosts and circular
// rotations.  Every generator is checked with is_spin before use.

#include "spinsys/form.hpp"
#include "spinsys/spin.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace spinsys {

// Readable values in test failure messages.
inline void PrintTo(const AlgebraicInteger& x, std::ostream* os) { *os << x.to_string(); }
inline void PrintTo(const ResidueElement& x, std::ostream* os) { *os << x.to_string(); }
template <class R>
void PrintTo(const CliffordElement<R>& x, std::ostream* os) {
    if (x.algebra().dimension() <= 9) *os << to_string(x);
}

}  // namespace spinsys

namespace spinsys::testkit {

// SPINSYS_SEED overrides the fixed default.
inline std::uint64_t test_seed() {
    if (const char* env = std::getenv("SPINSYS_SEED"); env != nullptr && *env != '\0') {
        return std::stoull(env);
    }
    return 0x51C0DEULL;
}

template <class R>
CliffordElement<R> checked(CliffordElement<R> s) {
    if (!is_spin(s)) throw std::logic_error("generator failed is_spin");
    return s;
}

inline CliffordElement<Rational> random_rational_spin(const CliffordAlgebra<Rational>& algebra, std::mt19937_64& rng,
                                                      int factors) {
    const int dim = algebra.dimension();
    std::uniform_int_distribution<int> small(1, 4);
    std::uniform_int_distribution<int> pick_j(2, dim);
    std::uniform_int_distribution<int> coin(0, 1);
    CliffordElement<Rational> s = CliffordElement<Rational>::scalar(algebra, Rational(1));
    for (int f = 0; f < factors; ++f) {
        if (dim < 3 || coin(rng) == 0) {
            const Rational m(small(rng), small(rng));
            s = s * checked(rational_boost(algebra, pick_j(rng), m));
        } else {
            int i = pick_j(rng);
            int j = pick_j(rng);
            while (j == i) j = pick_j(rng);
            if (i > j) std::swap(i, j);
            const Rational u(small(rng) * (coin(rng) ? 1 : -1), small(rng));
            s = s * checked(rational_rotation(algebra, i, j, u));
        }
    }
    return s;
}

inline CliffordElement<double> random_real_spin(const CliffordAlgebra<double>& algebra, std::mt19937_64& rng,
                                                int factors, double max_boost = 1.5) {
    const int dim = algebra.dimension();
    std::uniform_real_distribution<double> boost(-max_boost, max_boost);
    std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
    std::uniform_int_distribution<int> pick_j(2, dim);
    std::uniform_int_distribution<int> coin(0, 1);
    CliffordElement<double> s = CliffordElement<double>::scalar(algebra, 1.0);
    for (int f = 0; f < factors; ++f) {
        if (dim < 3 || coin(rng) == 0) {
            s = s * checked(elementary_boost(algebra, pick_j(rng), boost(rng)));
        } else {
            int i = pick_j(rng);
            int j = pick_j(rng);
            while (j == i) j = pick_j(rng);
            if (i > j) std::swap(i, j);
            s = s * checked(elementary_rotation(algebra, i, j, angle(rng)));
        }
    }
    return s;
}

// A point of H^n: (sqrt(1 + |v|^2), v) with v uniform in a cube.
inline HyperbolicPoint random_point(int dimension, std::mt19937_64& rng, double radius = 2.0) {
    std::uniform_real_distribution<double> coord(-radius, radius);
    std::vector<double> v;
    for (int i = 1; i < dimension; ++i) v.push_back(coord(rng));
    return HyperbolicPoint::from_spatial(v);
}

// Random admissible ternary form over Q or Q(sqrt 2): f(e_1) totally positive,
// f(e_2), f(e_3) negative with positive conjugates (over Q simply negative).
inline QuadraticForm random_admissible_ternary(const FieldSpec& field, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> small(1, 9);
    if (field.is_rational()) {
        return QuadraticForm(field, {AlgebraicInteger(small(rng)), AlgebraicInteger(-small(rng)),
                                     AlgebraicInteger(-small(rng))});
    }
    const double root = std::sqrt(static_cast<double>(field.radicand()));
    std::uniform_int_distribution<int> radical(-3, 3);
    std::uniform_int_distribution<int> extra(0, 2);
    const int b = radical(rng);
    const int a = std::max(1, static_cast<int>(std::ceil(std::abs(b) * root)) + extra(rng));
    std::vector<AlgebraicInteger> diagonal{AlgebraicInteger(field, a, b)};
    std::uniform_int_distribution<int> c_dist(1, 4);
    for (int i = 0; i < 2; ++i) {
        const int c = c_dist(rng);
        std::uniform_int_distribution<int> a_dist(1, static_cast<int>(std::floor(c * root)));
        diagonal.emplace_back(field, a_dist(rng), -c);
    }
    return QuadraticForm(field, std::move(diagonal));
}

}  // namespace spinsys::testkit
