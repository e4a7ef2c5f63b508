#pragma once

// Exact arithmetic in the ring of integers O_k of k = Q or k = Q(sqrt d),
// d squarefree with d = 2, 3 (mod 4) so that O_k = Z[sqrt d].  Principal
// ideals, residue rings O_k/I and the real embeddings of k live here too.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinsys {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class FieldSpec {
public:
    enum class Kind { Rational, RealQuadratic };

    // k = Q.
    FieldSpec() = default;

    static FieldSpec rational() { return FieldSpec{}; }
    // k = Q(sqrt d).  Throws InvalidArgument unless d > 1 is squarefree,
    // d = 2, 3 (mod 4) and d < 2^20.
    static FieldSpec quadratic(std::int64_t d);
    // Accepts "Q", "Q(sqrt 2)", "Q(sqrt2)" and "Q(√2)".
    static FieldSpec parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    bool is_rational() const noexcept { return kind_ == Kind::Rational; }
    // Radicand d; 0 for Q.
    std::int64_t radicand() const noexcept { return d_; }
    int degree() const noexcept { return is_rational() ? 1 : 2; }

    std::string to_string() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    Kind kind_ = Kind::Rational;
    std::int64_t d_ = 0;
};

// a + b*sqrt(d).  Values over Q carry b = 0.  Binary operations between a
// rational value and a quadratic one promote the rational operand, so integer
// literals mix freely with elements of Z[sqrt d].
class AlgebraicInteger {
public:
    AlgebraicInteger() = default;
    AlgebraicInteger(long long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
    AlgebraicInteger(const BigInt& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
    AlgebraicInteger(const FieldSpec& field, BigInt a, BigInt b = 0);

    // Parses "3", "-2", "sqrt2", "1+sqrt2", "1-3*sqrt 2", optionally wrapped in
    // parentheses.  The radicand in the text must match the field.
    static AlgebraicInteger parse(std::string_view text, const FieldSpec& field);
    // sqrt(d) in the given quadratic field.
    static AlgebraicInteger root(const FieldSpec& field);

    const FieldSpec& field() const noexcept { return field_; }
    const BigInt& rational_part() const noexcept { return a_; }
    const BigInt& radical_part() const noexcept { return b_; }

    bool is_zero() const noexcept { return a_ == 0 && b_ == 0; }
    bool is_rational_integer() const noexcept { return b_ == 0; }

    // Galois conjugate a - b*sqrt(d); identity over Q.
    AlgebraicInteger conjugate() const;

    // Exact sign of the value under the identity embedding (-1, 0, 1).
    int sign() const;
    // Value under the identity embedding.
    double to_double() const;

    // x / divisor when the quotient lies in O_k.
    std::optional<AlgebraicInteger> divide_exact(const AlgebraicInteger& divisor) const;

    AlgebraicInteger operator-() const;
    AlgebraicInteger& operator+=(const AlgebraicInteger& rhs);
    AlgebraicInteger& operator-=(const AlgebraicInteger& rhs);
    AlgebraicInteger& operator*=(const AlgebraicInteger& rhs);

    friend AlgebraicInteger operator+(AlgebraicInteger lhs, const AlgebraicInteger& rhs) { return lhs += rhs; }
    friend AlgebraicInteger operator-(AlgebraicInteger lhs, const AlgebraicInteger& rhs) { return lhs -= rhs; }
    friend AlgebraicInteger operator*(AlgebraicInteger lhs, const AlgebraicInteger& rhs) { return lhs *= rhs; }
    friend bool operator==(const AlgebraicInteger& lhs, const AlgebraicInteger& rhs);

    // Compares real values under the identity embedding, exactly.
    friend int compare_real(const AlgebraicInteger& lhs, const AlgebraicInteger& rhs);

    std::string to_string() const;

private:
    void adopt_field(const AlgebraicInteger& other);

    FieldSpec field_;
    BigInt a_ = 0;
    BigInt b_ = 0;
};

// a^2 - d*b^2 (a over Q).
BigInt field_norm(const AlgebraicInteger& x);

// A real embedding of k: identity, or a + b*sqrt(d) -> a - b*sqrt(d).
class Embedding {
public:
    explicit Embedding(bool conjugating) : conjugating_(conjugating) {}

    bool is_identity() const noexcept { return !conjugating_; }
    AlgebraicInteger apply(const AlgebraicInteger& x) const { return conjugating_ ? x.conjugate() : x; }
    double operator()(const AlgebraicInteger& x) const { return apply(x).to_double(); }
    std::string name() const { return conjugating_ ? "conjugate" : "identity"; }

private:
    bool conjugating_;
};

// Identity first, then the nontrivial embedding for quadratic fields.
std::vector<Embedding> galois_embeddings(const FieldSpec& field);

// Principal ideal (g) of O_k, g != 0.
class IdealHandle {
public:
    explicit IdealHandle(AlgebraicInteger generator);

    // "(3)", "(1+sqrt2)"; parentheses optional.
    static IdealHandle parse(std::string_view text, const FieldSpec& field);

    const AlgebraicInteger& generator() const noexcept { return generator_; }
    const FieldSpec& field() const noexcept { return generator_.field(); }
    BigInt norm() const;
    bool contains(const AlgebraicInteger& x) const;
    IdealHandle power(unsigned exponent) const;
    IdealHandle operator*(const IdealHandle& other) const;

    std::string to_string() const;

private:
    AlgebraicInteger generator_;
};

// |O_k / I| = |N(g)|.
BigInt ideal_norm(const IdealHandle& ideal);

// Prime-power factorization of a rational ideal by trial division.  Throws
// UnsupportedOperation over a quadratic field.
std::vector<std::pair<IdealHandle, unsigned>> crt_split(const IdealHandle& ideal);

// True when I is a prime ideal: N(I) prime, or I = (p) up to a unit with p
// inert in Z[sqrt d].
bool is_prime_ideal(const IdealHandle& ideal);

// Lattice data of an ideal in coordinates (a, b) of a + b*sqrt(d): the ideal is
// spanned by (row_modulus, 0) and (offset, column_modulus), and residues are
// represented by a in [0, row_modulus), b in [0, column_modulus).
struct ResidueModulus {
    std::int64_t row_modulus = 1;
    std::int64_t column_modulus = 1;
    std::int64_t offset = 0;
    std::int64_t radicand = 0;

    friend bool operator==(const ResidueModulus&, const ResidueModulus&) = default;
};

class ResidueElement {
public:
    ResidueElement() = default;
    ResidueElement(const ResidueModulus& modulus, std::int64_t a, std::int64_t b);

    const ResidueModulus& modulus() const noexcept { return modulus_; }
    std::int64_t a() const noexcept { return a_; }
    std::int64_t b() const noexcept { return b_; }
    // Position of this residue in the ring's enumeration order.
    std::int64_t index() const noexcept { return b_ * modulus_.row_modulus + a_; }
    bool is_zero() const noexcept { return a_ == 0 && b_ == 0; }

    ResidueElement operator-() const;
    ResidueElement& operator+=(const ResidueElement& rhs);
    ResidueElement& operator-=(const ResidueElement& rhs);
    ResidueElement& operator*=(const ResidueElement& rhs);

    friend ResidueElement operator+(ResidueElement lhs, const ResidueElement& rhs) { return lhs += rhs; }
    friend ResidueElement operator-(ResidueElement lhs, const ResidueElement& rhs) { return lhs -= rhs; }
    friend ResidueElement operator*(ResidueElement lhs, const ResidueElement& rhs) { return lhs *= rhs; }
    friend bool operator==(const ResidueElement&, const ResidueElement&) = default;

    std::string to_string() const;

private:
    void check_same(const ResidueElement& rhs) const;

    ResidueModulus modulus_;
    std::int64_t a_ = 0;
    std::int64_t b_ = 0;
};

// O_k / I with canonical representatives.  Norms up to 2^31 are supported.
class ResidueRing {
public:
    explicit ResidueRing(const IdealHandle& ideal);

    const IdealHandle& ideal() const noexcept { return ideal_; }
    const ResidueModulus& modulus() const noexcept { return modulus_; }
    std::int64_t size() const noexcept { return modulus_.row_modulus * modulus_.column_modulus; }

    ResidueElement reduce(const AlgebraicInteger& x) const;
    ResidueElement reduce(std::int64_t x) const;
    // Canonical representative in O_k.
    AlgebraicInteger lift(const ResidueElement& x) const;
    // The residue at position index in [0, size()).
    ResidueElement element(std::int64_t index) const;
    ResidueElement zero() const { return element(0); }
    ResidueElement one() const { return reduce(1); }

    // O_k / I is a field exactly when I is prime.
    bool is_field() const;
    // Whether x is a square in the ring (by enumeration).
    bool is_square(const ResidueElement& x) const;

private:
    IdealHandle ideal_;
    ResidueModulus modulus_;
};

}  // namespace spinsys
