#include "spinsys/ring.hpp"

#include "spinsys/error.hpp"
#include "spinsys/detail/text.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <cmath>
#include <random>
#include <sstream>

namespace spinsys {

namespace {

constexpr std::int64_t kMaxRadicand = std::int64_t{1} << 20;
constexpr std::int64_t kMaxResidueNorm = std::int64_t{1} << 31;

bool is_squarefree(std::int64_t d) {
    for (std::int64_t p = 2; p * p <= d; ++p) {
        if (d % (p * p) == 0) return false;
    }
    return true;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

BigInt floor_mod(const BigInt& a, const BigInt& b) { return a - floor_div(a, b) * b; }

__int128 floor_mod128(__int128 a, __int128 m) {
    __int128 r = a % m;
    return r < 0 ? r + m : r;
}

__int128 floor_div128(__int128 a, __int128 m) { return (a - floor_mod128(a, m)) / m; }

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n < BigInt(1000000000000LL)) {
        const auto v = n.convert_to<std::int64_t>();
        for (std::int64_t p = 2; p * p <= v; ++p) {
            if (v % p == 0) return false;
        }
        return true;
    }
    std::mt19937_64 engine(0x5eed);
    return boost::multiprecision::miller_rabin_test(n, 32, engine);
}

// Parses a signed sum of terms c, c*sqrtD, sqrtD.  Returns (a, b, radicand),
// radicand 0 when no radical appears.
struct ParsedSum {
    BigInt a = 0;
    BigInt b = 0;
    std::int64_t radicand = 0;
};

ParsedSum parse_sum(std::string_view raw) {
    std::string text = text::normalize(raw);
    text = text::strip_parentheses(text);
    if (text.empty()) throw ParseError("empty algebraic integer");

    ParsedSum out;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw ParseError("expected '+' or '-' in '" + std::string(raw) + "'");
        }
        first = false;
        std::size_t end = pos;
        while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
        std::string term = text.substr(pos, end - pos);
        pos = end;
        if (term.empty()) throw ParseError("dangling sign in '" + std::string(raw) + "'");

        const auto root = term.find("sqrt");
        if (root == std::string::npos) {
            out.a += sign * text::parse_bigint(term);
            continue;
        }
        std::string coefficient = term.substr(0, root);
        if (!coefficient.empty() && coefficient.back() == '*') coefficient.pop_back();
        const BigInt c = coefficient.empty() ? BigInt(1) : text::parse_bigint(coefficient);
        const std::string radicand_text = term.substr(root + 4);
        if (radicand_text.empty()) throw ParseError("missing radicand in '" + std::string(raw) + "'");
        const auto radicand = text::parse_bigint(radicand_text).convert_to<std::int64_t>();
        if (out.radicand != 0 && out.radicand != radicand) {
            throw ParseError("mixed radicands in '" + std::string(raw) + "'");
        }
        out.radicand = radicand;
        out.b += sign * c;
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- FieldSpec

FieldSpec FieldSpec::quadratic(std::int64_t d) {
    if (d <= 1 || d >= kMaxRadicand) {
        throw InvalidArgument("radicand must lie in (1, 2^20): " + std::to_string(d));
    }
    if (!is_squarefree(d)) throw InvalidArgument("radicand is not squarefree: " + std::to_string(d));
    if (d % 4 != 2 && d % 4 != 3) {
        throw InvalidArgument("only d = 2, 3 (mod 4) is supported (O_k = Z[sqrt d]): " + std::to_string(d));
    }
    FieldSpec out;
    out.kind_ = Kind::RealQuadratic;
    out.d_ = d;
    return out;
}

FieldSpec FieldSpec::parse(std::string_view raw) {
    const std::string text = text::normalize(raw);
    if (text == "Q") return rational();
    const std::string prefix = "Q(sqrt";
    if (text.size() > prefix.size() + 1 && text.compare(0, prefix.size(), prefix) == 0 && text.back() == ')') {
        const std::string digits = text.substr(prefix.size(), text.size() - prefix.size() - 1);
        return quadratic(text::parse_bigint(digits).convert_to<std::int64_t>());
    }
    throw ParseError("unrecognised field '" + std::string(raw) + "' (expected Q or Q(sqrt d))");
}

std::string FieldSpec::to_string() const {
    if (is_rational()) return "Q";
    return "Q(sqrt " + std::to_string(d_) + ")";
}

// --------------------------------------------------------- AlgebraicInteger

AlgebraicInteger::AlgebraicInteger(const FieldSpec& field, BigInt a, BigInt b)
    : field_(field), a_(std::move(a)), b_(std::move(b)) {
    if (field_.is_rational() && b_ != 0) throw InvalidArgument("rational integer with a radical part");
}

AlgebraicInteger AlgebraicInteger::parse(std::string_view text, const FieldSpec& field) {
    const ParsedSum sum = parse_sum(text);
    if (sum.radicand != 0) {
        if (field.is_rational()) {
            throw ParseError("'" + std::string(text) + "' is not an element of Z");
        }
        if (sum.radicand != field.radicand()) {
            throw ParseError("radicand in '" + std::string(text) + "' does not match " + field.to_string());
        }
    }
    return AlgebraicInteger(field, sum.a, sum.b);
}

AlgebraicInteger AlgebraicInteger::root(const FieldSpec& field) {
    if (field.is_rational()) throw InvalidArgument("Q has no square root generator");
    return AlgebraicInteger(field, 0, 1);
}

AlgebraicInteger AlgebraicInteger::conjugate() const {
    AlgebraicInteger out = *this;
    out.b_ = -out.b_;
    return out;
}

int AlgebraicInteger::sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    const BigInt lhs = a_ * a_;
    const BigInt rhs = BigInt(field_.radicand()) * b_ * b_;
    return lhs > rhs ? sa : sb;
}

double AlgebraicInteger::to_double() const {
    if (b_ == 0) return a_.convert_to<double>();
    const long double root = std::sqrt(static_cast<long double>(field_.radicand()));
    const long double value = a_.convert_to<long double>() + b_.convert_to<long double>() * root;
    return static_cast<double>(value);
}

std::optional<AlgebraicInteger> AlgebraicInteger::divide_exact(const AlgebraicInteger& divisor) const {
    if (divisor.is_zero()) throw InvalidArgument("division by zero");
    AlgebraicInteger lhs = *this;
    lhs.adopt_field(divisor);
    if (lhs.field_.is_rational()) {
        if (lhs.a_ % divisor.a_ != 0) return std::nullopt;
        return AlgebraicInteger(lhs.a_ / divisor.a_);
    }
    const BigInt norm = field_norm(divisor);
    const AlgebraicInteger numerator = lhs * divisor.conjugate();
    if (numerator.a_ % norm != 0 || numerator.b_ % norm != 0) return std::nullopt;
    return AlgebraicInteger(numerator.field_, numerator.a_ / norm, numerator.b_ / norm);
}

void AlgebraicInteger::adopt_field(const AlgebraicInteger& other) {
    if (field_ == other.field_) return;
    if (field_.is_rational()) {
        field_ = other.field_;
        return;
    }
    if (!other.field_.is_rational()) {
        throw InvalidArgument("mixing " + field_.to_string() + " and " + other.field_.to_string());
    }
}

AlgebraicInteger AlgebraicInteger::operator-() const {
    AlgebraicInteger out = *this;
    out.a_ = -out.a_;
    out.b_ = -out.b_;
    return out;
}

AlgebraicInteger& AlgebraicInteger::operator+=(const AlgebraicInteger& rhs) {
    adopt_field(rhs);
    a_ += rhs.a_;
    b_ += rhs.b_;
    return *this;
}

AlgebraicInteger& AlgebraicInteger::operator-=(const AlgebraicInteger& rhs) {
    adopt_field(rhs);
    a_ -= rhs.a_;
    b_ -= rhs.b_;
    return *this;
}

AlgebraicInteger& AlgebraicInteger::operator*=(const AlgebraicInteger& rhs) {
    adopt_field(rhs);
    if (b_ == 0 && rhs.b_ == 0) {
        a_ *= rhs.a_;
        return *this;
    }
    BigInt a = a_ * rhs.a_ + BigInt(field_.radicand()) * b_ * rhs.b_;
    BigInt b = a_ * rhs.b_ + b_ * rhs.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
}

bool operator==(const AlgebraicInteger& lhs, const AlgebraicInteger& rhs) {
    if (lhs.a_ != rhs.a_ || lhs.b_ != rhs.b_) return false;
    if (lhs.b_ == 0) return true;
    return lhs.field_ == rhs.field_;
}

int compare_real(const AlgebraicInteger& lhs, const AlgebraicInteger& rhs) { return (lhs - rhs).sign(); }

std::string AlgebraicInteger::to_string() const {
    if (b_ == 0) return a_.str();
    std::ostringstream out;
    if (a_ != 0) out << a_.str();
    if (b_ < 0) {
        out << '-';
    } else if (a_ != 0) {
        out << '+';
    }
    const BigInt mag = abs(b_);
    if (mag != 1) out << mag.str() << '*';
    out << "sqrt" << field_.radicand();
    return out.str();
}

BigInt field_norm(const AlgebraicInteger& x) {
    if (x.field().is_rational()) return x.rational_part();
    return x.rational_part() * x.rational_part() -
           BigInt(x.field().radicand()) * x.radical_part() * x.radical_part();
}

std::vector<Embedding> galois_embeddings(const FieldSpec& field) {
    std::vector<Embedding> out{Embedding(false)};
    if (!field.is_rational()) out.emplace_back(true);
    return out;
}

// -------------------------------------------------------------- IdealHandle

IdealHandle::IdealHandle(AlgebraicInteger generator) : generator_(std::move(generator)) {
    if (generator_.is_zero()) throw InvalidArgument("ideal generator must be nonzero");
}

IdealHandle IdealHandle::parse(std::string_view text, const FieldSpec& field) {
    return IdealHandle(AlgebraicInteger::parse(text, field));
}

BigInt IdealHandle::norm() const { return abs(field_norm(generator_)); }

bool IdealHandle::contains(const AlgebraicInteger& x) const { return x.divide_exact(generator_).has_value(); }

IdealHandle IdealHandle::power(unsigned exponent) const {
    AlgebraicInteger g(field(), 1);
    for (unsigned i = 0; i < exponent; ++i) g *= generator_;
    return IdealHandle(g);
}

IdealHandle IdealHandle::operator*(const IdealHandle& other) const {
    return IdealHandle(generator_ * other.generator_);
}

std::string IdealHandle::to_string() const { return "(" + generator_.to_string() + ")"; }

BigInt ideal_norm(const IdealHandle& ideal) { return ideal.norm(); }

std::vector<std::pair<IdealHandle, unsigned>> crt_split(const IdealHandle& ideal) {
    if (!ideal.field().is_rational()) {
        throw UnsupportedOperation("prime factorization is only supported over Q");
    }
    BigInt n = abs(ideal.generator().rational_part());
    std::vector<std::pair<IdealHandle, unsigned>> out;
    for (BigInt p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(IdealHandle(AlgebraicInteger(p)), e);
    }
    if (n > 1) out.emplace_back(IdealHandle(AlgebraicInteger(n)), 1u);
    return out;
}

bool is_prime_ideal(const IdealHandle& ideal) {
    const BigInt norm = ideal.norm();
    if (is_prime(norm)) return true;
    if (ideal.field().is_rational()) return false;
    const BigInt p = sqrt(norm);
    if (p * p != norm || !is_prime(p) || p == 2) return false;
    // (g) = (p) iff g / p is a unit.
    const auto quotient = ideal.generator().divide_exact(AlgebraicInteger(p));
    if (!quotient) return false;
    // p inert iff d is a non-residue mod p.
    const auto q = p.convert_to<std::int64_t>();
    const std::int64_t d = ideal.field().radicand() % q;
    for (std::int64_t x = 0; x < q; ++x) {
        if ((x * x) % q == d) return false;
    }
    return true;
}

// ----------------------------------------------------------- ResidueElement

namespace {

ResidueElement normalized(const ResidueModulus& m, __int128 a, __int128 b) {
    const __int128 reduced_b = floor_mod128(b, m.column_modulus);
    const __int128 k = floor_div128(b, m.column_modulus);
    const __int128 reduced_a = floor_mod128(a - k * m.offset, m.row_modulus);
    return ResidueElement(m, static_cast<std::int64_t>(reduced_a), static_cast<std::int64_t>(reduced_b));
}

}  // namespace

ResidueElement::ResidueElement(const ResidueModulus& modulus, std::int64_t a, std::int64_t b)
    : modulus_(modulus), a_(a), b_(b) {
    if (a < 0 || a >= modulus.row_modulus || b < 0 || b >= modulus.column_modulus) {
        throw InvalidArgument("residue coordinates out of range");
    }
}

void ResidueElement::check_same(const ResidueElement& rhs) const {
    if (!(modulus_ == rhs.modulus_)) throw InvalidArgument("residues of different rings");
}

ResidueElement ResidueElement::operator-() const {
    return normalized(modulus_, -static_cast<__int128>(a_), -static_cast<__int128>(b_));
}

ResidueElement& ResidueElement::operator+=(const ResidueElement& rhs) {
    check_same(rhs);
    *this = normalized(modulus_, static_cast<__int128>(a_) + rhs.a_, static_cast<__int128>(b_) + rhs.b_);
    return *this;
}

ResidueElement& ResidueElement::operator-=(const ResidueElement& rhs) {
    check_same(rhs);
    *this = normalized(modulus_, static_cast<__int128>(a_) - rhs.a_, static_cast<__int128>(b_) - rhs.b_);
    return *this;
}

ResidueElement& ResidueElement::operator*=(const ResidueElement& rhs) {
    check_same(rhs);
    const __int128 a = static_cast<__int128>(a_) * rhs.a_ +
                       static_cast<__int128>(modulus_.radicand) * (static_cast<__int128>(b_) * rhs.b_);
    const __int128 b = static_cast<__int128>(a_) * rhs.b_ + static_cast<__int128>(b_) * rhs.a_;
    *this = normalized(modulus_, a, b);
    return *this;
}

std::string ResidueElement::to_string() const {
    if (modulus_.radicand == 0 || b_ == 0) return std::to_string(a_);
    std::string out = a_ != 0 ? std::to_string(a_) + "+" : std::string();
    if (b_ != 1) out += std::to_string(b_) + "*";
    return out + "sqrt" + std::to_string(modulus_.radicand);
}

// -------------------------------------------------------------- ResidueRing

ResidueRing::ResidueRing(const IdealHandle& ideal) : ideal_(ideal) {
    const BigInt norm = ideal.norm();
    if (norm >= kMaxResidueNorm) {
        throw UnsupportedOperation("residue rings need N(I) < 2^31, got " + norm.str());
    }
    const AlgebraicInteger& g = ideal.generator();
    if (ideal.field().is_rational()) {
        modulus_.row_modulus = norm.convert_to<std::int64_t>();
        return;
    }
    // Rows g*1 = (alpha, beta) and g*sqrt(d) = (d*beta, alpha).  Combine them
    // into (A, 0) and (c, B) with B = gcd(beta, alpha).
    const BigInt alpha = g.rational_part();
    const BigInt beta = g.radical_part();
    const BigInt d = ideal.field().radicand();
    BigInt old_r = beta, r = alpha, old_u = 1, u = 0, old_v = 0, v = 1;
    while (r != 0) {
        const BigInt q = old_r / r;
        BigInt next = old_r - q * r;
        old_r = r;
        r = next;
        next = old_u - q * u;
        old_u = u;
        u = next;
        next = old_v - q * v;
        old_v = v;
        v = next;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_u = -old_u;
        old_v = -old_v;
    }
    const BigInt column = old_r;                         // B
    const BigInt row = abs(field_norm(g)) / column;      // A
    const BigInt offset = floor_mod(old_u * alpha + old_v * d * beta, row);
    modulus_.row_modulus = row.convert_to<std::int64_t>();
    modulus_.column_modulus = column.convert_to<std::int64_t>();
    modulus_.offset = offset.convert_to<std::int64_t>();
    modulus_.radicand = ideal.field().radicand();
}

ResidueElement ResidueRing::reduce(const AlgebraicInteger& x) const {
    const BigInt column = modulus_.column_modulus;
    const BigInt row = modulus_.row_modulus;
    const BigInt b = floor_mod(x.radical_part(), column);
    const BigInt k = floor_div(x.radical_part(), column);
    const BigInt a = floor_mod(x.rational_part() - k * modulus_.offset, row);
    return ResidueElement(modulus_, a.convert_to<std::int64_t>(), b.convert_to<std::int64_t>());
}

ResidueElement ResidueRing::reduce(std::int64_t x) const { return normalized(modulus_, x, 0); }

AlgebraicInteger ResidueRing::lift(const ResidueElement& x) const {
    if (!(x.modulus() == modulus_)) throw InvalidArgument("residue of a different ring");
    return AlgebraicInteger(ideal_.field(), x.a(), x.b());
}

ResidueElement ResidueRing::element(std::int64_t index) const {
    if (index < 0 || index >= size()) throw InvalidArgument("residue index out of range");
    return ResidueElement(modulus_, index % modulus_.row_modulus, index / modulus_.row_modulus);
}

bool ResidueRing::is_field() const { return is_prime_ideal(ideal_); }

bool ResidueRing::is_square(const ResidueElement& x) const {
    for (std::int64_t i = 0; i < size(); ++i) {
        const ResidueElement y = element(i);
        if (y * y == x) return true;
    }
    return false;
}

}  // namespace spinsys
