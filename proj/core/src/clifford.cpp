#include "spinsys/clifford.hpp"

#include "spinsys/form.hpp"

#include <array>
#include <cctype>

namespace spinsys {

std::string blade_name(BladeMask m) {
    if (m == 0) return "1";
    std::string out = "e";
    for (int i = 0; i < 32; ++i) {
        if ((m >> i) & 1U) out += std::to_string(i + 1);
    }
    return out;
}

BladeMask parse_blade(std::string_view text) {
    if (text == "1") return 0;
    if (text.size() < 2 || text[0] != 'e') throw ParseError("bad blade '" + std::string(text) + "'");
    BladeMask m = 0;
    int previous = 0;
    for (std::size_t i = 1; i < text.size(); ++i) {
        const char c = text[i];
        if (c < '1' || c > '9') throw ParseError("bad blade '" + std::string(text) + "'");
        const int index = c - '0';
        if (index <= previous) throw ParseError("blade indices must increase: '" + std::string(text) + "'");
        previous = index;
        m |= BladeMask{1} << (index - 1);
    }
    return m;
}

bool blade_less(BladeMask lhs, BladeMask rhs) noexcept {
    const int gl = blade_grade(lhs);
    const int gr = blade_grade(rhs);
    if (gl != gr) return gl < gr;
    // Same grade: compare the ascending index lists, i.e. the lowest differing
    // generator decides, and the blade containing it comes first.
    const BladeMask diff = lhs ^ rhs;
    if (diff == 0) return false;
    const BladeMask lowest = diff & (~diff + 1);
    return (lhs & lowest) != 0;
}

CoefficientText coefficient_text(const Rational& x) {
    CoefficientText out;
    out.negative = x < 0;
    const Rational mag = out.negative ? Rational(-x) : x;
    out.magnitude = boost::multiprecision::numerator(mag).str();
    if (boost::multiprecision::denominator(mag) != 1) {
        out.magnitude += "/" + boost::multiprecision::denominator(mag).str();
    }
    return out;
}

CoefficientText coefficient_text(const AlgebraicInteger& x) {
    CoefficientText out;
    if (x.is_rational_integer()) {
        out.negative = x.rational_part() < 0;
        out.magnitude = BigInt(abs(x.rational_part())).str();
        return out;
    }
    if (x.rational_part() == 0) {
        out.negative = x.radical_part() < 0;
        out.magnitude = (out.negative ? -x : x).to_string();
        return out;
    }
    out.magnitude = "(" + x.to_string() + ")";
    return out;
}

CoefficientText coefficient_text(const ResidueElement& x) {
    CoefficientText out;
    const std::string s = x.to_string();
    out.magnitude = s.find('+') == std::string::npos ? s : "(" + s + ")";
    return out;
}

CoefficientText coefficient_text(double x) {
    CoefficientText out;
    out.negative = std::signbit(x) && x != 0.0;
    std::array<char, 40> buffer{};
    std::snprintf(buffer.data(), buffer.size(), "%.17g", std::fabs(x));
    out.magnitude = buffer.data();
    return out;
}

namespace detail {

std::vector<std::pair<int, std::string>> split_signed_terms(std::string_view text) {
    std::vector<std::pair<int, std::string>> out;
    if (text.empty()) throw ParseError("empty Clifford element");
    int sign = 1;
    std::string current;
    int depth = 0;
    auto flush = [&](std::size_t at) {
        if (current.empty()) throw ParseError("dangling sign at position " + std::to_string(at));
        out.emplace_back(sign, current);
        current.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        const bool is_sign = (c == '+' || c == '-') && depth == 0;
        // 1.5e-3: sign of a floating-point exponent.
        const bool exponent = is_sign && i >= 2 && (text[i - 1] == 'e' || text[i - 1] == 'E') &&
                              (std::isdigit(static_cast<unsigned char>(text[i - 2])) || text[i - 2] == '.');
        if (is_sign && !exponent) {
            if (i == 0) {
                sign = c == '-' ? -1 : 1;
                continue;
            }
            flush(i);
            sign = c == '-' ? -1 : 1;
            continue;
        }
        current += c;
    }
    flush(text.size());
    return out;
}

}  // namespace detail

Rational parse_rational(std::string_view raw) {
    const std::string text = text::strip_parentheses(text::normalize(raw));
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(text::parse_bigint(text));
    const BigInt num = text::parse_bigint(text.substr(0, slash));
    const BigInt den = text::parse_bigint(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(raw) + "'");
    return Rational(num, den);
}

// ------------------------------------------------------------ QuadraticForm

QuadraticForm::QuadraticForm(FieldSpec field, std::vector<AlgebraicInteger> diagonal)
    : field_(field), diagonal_(std::move(diagonal)) {
    if (diagonal_.empty() || diagonal_.size() > static_cast<std::size_t>(kMaxGenerators)) {
        throw InvalidArgument("forms need between 1 and " + std::to_string(kMaxGenerators) + " variables");
    }
    for (auto& c : diagonal_) {
        if (c.is_zero()) throw InvalidArgument("diagonal entries must be nonzero");
        c = AlgebraicInteger(field_, c.rational_part(), c.radical_part());
    }
}

QuadraticForm QuadraticForm::parse(std::string_view text, const FieldSpec& field) {
    std::vector<AlgebraicInteger> diagonal;
    for (const auto& part : text::split_top_level(text::normalize(text), ',')) {
        diagonal.push_back(AlgebraicInteger::parse(part, field));
    }
    return QuadraticForm(field, std::move(diagonal));
}

QuadraticForm QuadraticForm::standard(int dimension) {
    if (dimension < 1) throw InvalidArgument("dimension must be positive");
    std::vector<AlgebraicInteger> diagonal(static_cast<std::size_t>(dimension), AlgebraicInteger(-1));
    diagonal[0] = 1;
    return QuadraticForm(FieldSpec::rational(), std::move(diagonal));
}

AlgebraicInteger QuadraticForm::discriminant() const {
    AlgebraicInteger out(field_, 1);
    for (const auto& c : diagonal_) out *= c;
    return out;
}

bool QuadraticForm::is_admissible() const {
    for (int i = 0; i < dimension(); ++i) {
        if (signature_coefficient(i).sign() <= 0) return false;
    }
    if (!field_.is_rational()) {
        for (const auto& c : diagonal_) {
            if (c.conjugate().sign() <= 0) return false;
        }
    }
    return true;
}

QuadraticForm QuadraticForm::restrict_to(int count) const {
    if (count < 1 || count > dimension()) throw InvalidArgument("restriction size out of range");
    return QuadraticForm(field_, std::vector<AlgebraicInteger>(diagonal_.begin(), diagonal_.begin() + count));
}

CliffordAlgebra<AlgebraicInteger> QuadraticForm::integral_algebra() const {
    return CliffordAlgebra<AlgebraicInteger>(diagonal_, AlgebraicInteger(field_, 0), AlgebraicInteger(field_, 1));
}

CliffordAlgebra<Rational> QuadraticForm::rational_algebra() const {
    if (!field_.is_rational()) throw UnsupportedOperation("rational coefficients need a form over Q");
    std::vector<Rational> squares;
    for (const auto& c : diagonal_) squares.emplace_back(c.rational_part());
    return CliffordAlgebra<Rational>(std::move(squares), Rational(0), Rational(1));
}

CliffordAlgebra<double> QuadraticForm::real_algebra(const Embedding& embedding) const {
    std::vector<double> squares;
    for (const auto& c : diagonal_) squares.push_back(embedding(c));
    return CliffordAlgebra<double>(std::move(squares), 0.0, 1.0);
}

CliffordAlgebra<ResidueElement> QuadraticForm::residue_algebra(const ResidueRing& ring) const {
    std::vector<ResidueElement> squares;
    for (const auto& c : diagonal_) squares.push_back(ring.reduce(c));
    return CliffordAlgebra<ResidueElement>(std::move(squares), ring.zero(), ring.one());
}

std::string QuadraticForm::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < diagonal_.size(); ++i) {
        if (i) out += ",";
        out += diagonal_[i].to_string();
    }
    return out;
}

CliffordAlgebra<double> standard_real_algebra(int dimension) {
    return QuadraticForm::standard(dimension).real_algebra(Embedding(false));
}

CliffordAlgebra<Rational> standard_rational_algebra(int dimension) {
    return QuadraticForm::standard(dimension).rational_algebra();
}

}  // namespace spinsys
