#pragma once

#include "spinsys/clifford.hpp"
#include "spinsys/ring.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace spinsys {

// Diagonal form f = c_1 x_1^2 + ... + c_{n+1} x_{n+1}^2 over O_k.  In the
// signature convention f = a_1 x_1^2 - a_2 x_2^2 - ... - a_{n+1} x_{n+1}^2 the
// coefficients are a_1 = c_1 and a_j = -c_j; the generator squares of the
// Clifford algebra are the diagonal entries c_i.
class QuadraticForm {
public:
    QuadraticForm(FieldSpec field, std::vector<AlgebraicInteger> diagonal);

    // Comma separated diagonal entries, e.g. "1,-1,-1" or "1,-sqrt2,-sqrt2".
    static QuadraticForm parse(std::string_view text, const FieldSpec& field);
    // x_1^2 - x_2^2 - ... - x_{dimension}^2 over Q.
    static QuadraticForm standard(int dimension);

    const FieldSpec& field() const noexcept { return field_; }
    int dimension() const noexcept { return static_cast<int>(diagonal_.size()); }
    // Hyperbolic dimension n = dimension - 1.
    int n() const noexcept { return dimension() - 1; }

    // f(e_{i+1}) for 0-based i.
    const AlgebraicInteger& diagonal(int i) const { return diagonal_.at(static_cast<std::size_t>(i)); }
    const std::vector<AlgebraicInteger>& diagonal() const noexcept { return diagonal_; }
    // a_{i+1} in the signature convention.
    AlgebraicInteger signature_coefficient(int i) const { return i == 0 ? diagonal(0) : -diagonal(i); }

    // Product of the diagonal entries (D_f up to sign).
    AlgebraicInteger discriminant() const;

    // Real signature (1, n) under the identity embedding (a_i > 0 for all i)
    // and f^sigma positive definite under every nontrivial embedding.
    bool is_admissible() const;

    // Restriction to span{e_1, ..., e_count}.
    QuadraticForm restrict_to(int count) const;

    CliffordAlgebra<AlgebraicInteger> integral_algebra() const;
    // Only for forms over Q.
    CliffordAlgebra<Rational> rational_algebra() const;
    CliffordAlgebra<double> real_algebra(const Embedding& embedding) const;
    CliffordAlgebra<ResidueElement> residue_algebra(const ResidueRing& ring) const;

    std::string to_string() const;

    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

private:
    FieldSpec field_;
    std::vector<AlgebraicInteger> diagonal_;
};

// Clifford algebra of x_1^2 - x_2^2 - ... over the reals.
CliffordAlgebra<double> standard_real_algebra(int dimension);
// Same form with exact rational coefficients.
CliffordAlgebra<Rational> standard_rational_algebra(int dimension);

}  // namespace spinsys
