#pragma once

// Principal congruence subgroups Gamma(I) of Spin_f(O_k), the finite groups
// (Q/IQ)^1 of reduced even elements with s s^* = 1 and s E s^* = E, and the
// orthogonal-group counts that bound them.

#include "spinsys/clifford.hpp"
#include "spinsys/form.hpp"
#include "spinsys/ring.hpp"
#include "spinsys/spin.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spinsys {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct EnumerationOptions {
    std::uint64_t budget = kDefaultBudget;
    // Keep the reduced elements in the result, not only the order.
    bool keep_elements = false;
    unsigned threads = 1;
    // Seed for the sampled closure check.
    std::uint64_t seed = 20240917;
};

// A form together with an ideal.  Over Q the excluded primes are those
// dividing D = 2 * D_f.  Over a quadratic field the caller may declare the
// level good; without a declaration it counts as good only when N(I) is
// coprime to N(D).
class CongruenceLevel {
public:
    CongruenceLevel(QuadraticForm form, IdealHandle ideal, std::optional<bool> declared_good = std::nullopt);

    const QuadraticForm& form() const noexcept { return form_; }
    const IdealHandle& ideal() const noexcept { return ideal_; }
    // Rational primes dividing N(2 * D_f).
    const std::vector<BigInt>& bad_primes() const noexcept { return bad_primes_; }
    bool is_good() const noexcept { return good_; }
    // Human readable reason when the level is not good.
    std::string exclusion_note() const;

private:
    QuadraticForm form_;
    IdealHandle ideal_;
    std::vector<BigInt> bad_primes_;
    bool good_ = false;
};

// s_M in I for M != {} and s_R - 1 in I.  Membership in the spin group is
// checked by the SpinElement type.
bool in_gamma_I(const SpinElement<AlgebraicInteger>& s, const IdealHandle& ideal);
// Same test for rational coefficients; throws InvalidArgument when a
// coefficient is not an integer.
bool in_gamma_I(const SpinElement<Rational>& s, const IdealHandle& ideal);

struct FiniteSpinGroup {
    CongruenceLevel level;
    std::uint64_t order = 0;
    // Reduced elements in enumeration order (lexicographic over residue
    // indices, scalar coordinate first) when requested.
    std::optional<std::vector<CliffordElement<ResidueElement>>> elements;
    std::uint64_t candidates_scanned = 0;
    std::uint64_t closure_checks = 0;
};

// Even blades in ascending mask order.
std::vector<BladeMask> even_blades(int dimension);

// Exhaustive scan of the N(I)^{2^n} even coefficient tuples over O_k/I.
// Throws BudgetExceeded when that count exceeds options.budget.
FiniteSpinGroup enumerate_finite_spin(const QuadraticForm& form, const IdealHandle& ideal,
                                      const EnumerationOptions& options = {});

// |SO_f(F_q)| by enumerating matrices column by column: column j runs over the
// vectors with f(v) = f(e_j) orthogonal to the earlier columns, and complete
// matrices are kept when det = 1.  `field` must be a residue field of odd order.
std::uint64_t so_order_bruteforce(const std::vector<ResidueElement>& diagonal, const ResidueRing& field,
                                  std::uint64_t budget = kDefaultBudget);
std::uint64_t so_order_bruteforce(const QuadraticForm& form, const IdealHandle& prime,
                                  std::uint64_t budget = kDefaultBudget);

struct SoOrderFormula {
    BigInt order;
    // q^{m(m-1)/2}.
    BigInt bound;
    bool within_bound = false;
    // +1 / -1 type of an even-dimensional form, 0 in odd dimension.
    int epsilon = 0;
};

// Order of SO_m(F_q), q odd.  m = 2k+1: q^{k^2} prod_{i=1..k} (q^{2i} - 1).
// m = 2k: q^{k(k-1)} (q^k - eps) prod_{i=1..k-1} (q^{2i} - 1), where eps = +1
// iff (-1)^k disc is a square in F_q.
SoOrderFormula so_order_formula(int m, const BigInt& q, bool signed_discriminant_is_square);
SoOrderFormula so_order_formula(const std::vector<ResidueElement>& diagonal, const ResidueRing& field);

struct KernelReport {
    // |ker(theta)| for theta: (Q/p^{r+1}Q)^1 -> (Q/p^rQ)^1.
    std::uint64_t kernel_size = 0;
    std::uint64_t upper_order = 0;  // |(Q/p^{r+1}Q)^1|
    std::uint64_t lower_order = 0;  // |(Q/p^rQ)^1|
    // N(p)^{n(n+1)/2}.
    BigInt expected;
    // Every kernel element is 1 + sum_{|M|=2} t_M e_M with t_M in p^r / p^{r+1}.
    bool shape_ok = false;
};

KernelReport kernel_theta_size(const QuadraticForm& form, const IdealHandle& prime, unsigned r,
                               const EnumerationOptions& options = {});

struct CrtFactor {
    IdealHandle ideal;  // p^e
    unsigned exponent = 0;
    bool good = false;
    std::uint64_t order = 0;
};

struct CrtReport {
    std::vector<CrtFactor> factors;
    std::uint64_t direct_order = 0;
    BigInt product;
    bool equal = false;
    // A factor lies over a prime in the exclusion set; nothing is claimed.
    bool excluded = false;
};

// Compares |(Q/IQ)^1| with the product of |(Q/p_i^{r_i}Q)^1| over the
// factorization of a rational ideal, each counted by its own enumeration.
CrtReport crt_check(const QuadraticForm& form, const IdealHandle& ideal, const EnumerationOptions& options = {});

// A solution of b1 + b2 y2^2 + b3 y3^2 = c, found by intersecting
// {b1 + b2 y^2} with {c - b3 z^2}; both have (q+1)/2 elements.
std::array<ResidueElement, 3> universal_representation(const ResidueElement& b1, const ResidueElement& b2,
                                                       const ResidueElement& b3, const ResidueElement& c,
                                                       const ResidueRing& field);

// A nonzero isotropic vector of a diagonal form over F_q (q odd).  Always
// found for three or more variables; may be absent for two.
std::optional<std::vector<ResidueElement>> isotropy_test(const std::vector<ResidueElement>& diagonal,
                                                         const ResidueRing& field);

// N(I)^{n(n+1)/2}.
BigInt index_upper_bound(const BigInt& norm, int n);
// Same, refusing levels with an excluded prime (HypothesisViolation).
BigInt index_upper_bound(const CongruenceLevel& level);

}  // namespace spinsys
