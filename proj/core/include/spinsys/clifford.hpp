#pragma once

// Clifford algebra C(f, R) of a diagonal quadratic form over a commutative
// coefficient ring R.  Generators e1..e{n+1} satisfy e_i^2 = f(e_i) and
// e_i e_j = -e_j e_i; the basis products e_M are indexed by bitmasks, with
// generator i on bit i-1.
//
// R must provide +, -, *, unary -, == and be copyable.  The algebra carries the
// ring's zero and one, so rings whose elements need context (residues) work the
// same way as Rational, AlgebraicInteger or double.

#include "spinsys/detail/text.hpp"
#include "spinsys/error.hpp"
#include "spinsys/ring.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinsys {

using BladeMask = std::uint32_t;

inline constexpr int kMaxGenerators = 12;

constexpr int blade_grade(BladeMask m) noexcept { return std::popcount(m); }

// (-1)^{g(g-1)/2}: sign picked up by a grade-g blade under reversal.
constexpr int reversal_sign(int grade) noexcept { return ((grade * (grade - 1) / 2) % 2 == 0) ? 1 : -1; }

// e_M * e_N = sign * f(e_{M&N}) * e_{M^N}.
struct BasisProduct {
    BladeMask index;
    int sign;
    BladeMask contracted;
};

// sign = (-1)^t with t = sum over j in N of |{i in M : i > j}|.
constexpr BasisProduct basis_product(BladeMask lhs, BladeMask rhs) noexcept {
    int swaps = 0;
    for (BladeMask rest = rhs; rest != 0; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        swaps += std::popcount(lhs >> (j + 1));
    }
    return {lhs ^ rhs, (swaps % 2 == 0) ? 1 : -1, lhs & rhs};
}

// "1" for the empty blade, otherwise "e" followed by the generator indices.
std::string blade_name(BladeMask m);
// Inverse of blade_name for "e12"-style names (generators 1..9).
BladeMask parse_blade(std::string_view text);
// Orders blades by grade, then lexicographically by their index lists.
bool blade_less(BladeMask lhs, BladeMask rhs) noexcept;

template <class R>
class CliffordAlgebra {
public:
    // squares[i] = f(e_{i+1}).
    CliffordAlgebra(std::vector<R> squares, R zero, R one) {
        if (squares.empty() || squares.size() > static_cast<std::size_t>(kMaxGenerators)) {
            throw InvalidArgument("Clifford algebras need between 1 and " + std::to_string(kMaxGenerators) +
                                  " generators, got " + std::to_string(squares.size()));
        }
        auto data = std::make_shared<Data>(Data{std::move(squares), {}, std::move(zero), std::move(one)});
        const std::size_t count = std::size_t{1} << data->squares.size();
        data->blade_squares.reserve(count);
        data->blade_squares.push_back(data->one);
        for (std::size_t m = 1; m < count; ++m) {
            const int top = std::bit_width(m) - 1;
            const auto rest = static_cast<BladeMask>(m & ~(std::size_t{1} << top));
            data->blade_squares.push_back(data->blade_squares[rest] * data->squares[top]);
        }
        data_ = std::move(data);
    }

    int dimension() const noexcept { return static_cast<int>(data_->squares.size()); }
    std::size_t blade_count() const noexcept { return data_->blade_squares.size(); }
    // f(e_{i+1}) for 0-based i.
    const R& square(int i) const { return data_->squares.at(static_cast<std::size_t>(i)); }
    const std::vector<R>& squares() const noexcept { return data_->squares; }
    // f(e_M) = product of f(e_i) over i in M.
    const R& blade_square(BladeMask m) const { return data_->blade_squares.at(m); }
    const R& zero() const noexcept { return data_->zero; }
    const R& one() const noexcept { return data_->one; }

    bool same_as(const CliffordAlgebra& other) const {
        return data_ == other.data_ || data_->squares == other.data_->squares;
    }

private:
    struct Data {
        std::vector<R> squares;
        std::vector<R> blade_squares;
        R zero;
        R one;
    };
    std::shared_ptr<const Data> data_;
};

template <class R>
class CliffordElement {
public:
    using Terms = std::map<BladeMask, R>;

    explicit CliffordElement(CliffordAlgebra<R> algebra) : algebra_(std::move(algebra)) {}

    static CliffordElement scalar(const CliffordAlgebra<R>& algebra, const R& value) {
        return blade(algebra, 0, value);
    }
    static CliffordElement blade(const CliffordAlgebra<R>& algebra, BladeMask m, const R& value) {
        CliffordElement out(algebra);
        out.set(m, value);
        return out;
    }
    // e_{i} for 1-based generator index i.
    static CliffordElement generator(const CliffordAlgebra<R>& algebra, int i) {
        if (i < 1 || i > algebra.dimension()) throw InvalidArgument("generator index out of range");
        return blade(algebra, BladeMask{1} << (i - 1), algebra.one());
    }

    const CliffordAlgebra<R>& algebra() const noexcept { return algebra_; }
    const Terms& terms() const noexcept { return terms_; }

    R coefficient(BladeMask m) const {
        const auto it = terms_.find(m);
        return it == terms_.end() ? algebra_.zero() : it->second;
    }
    // Stores value at blade m; zero values erase the term.
    void set(BladeMask m, const R& value) {
        check_blade(m);
        if (value == algebra_.zero()) {
            terms_.erase(m);
        } else {
            terms_.insert_or_assign(m, value);
        }
    }
    void add(BladeMask m, const R& value) { set(m, coefficient(m) + value); }

    R scalar_part() const { return coefficient(0); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_even() const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const auto& t) { return blade_grade(t.first) % 2 == 0; });
    }
    bool has_only_grade(int grade) const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [grade](const auto& t) { return blade_grade(t.first) == grade; });
    }

    CliffordElement reversal() const {
        CliffordElement out(algebra_);
        for (const auto& [m, c] : terms_) {
            out.terms_.emplace(m, reversal_sign(blade_grade(m)) < 0 ? -c : c);
        }
        return out;
    }

    CliffordElement operator-() const {
        CliffordElement out(algebra_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
        return out;
    }

    CliffordElement& operator+=(const CliffordElement& rhs) {
        check_algebra(rhs);
        for (const auto& [m, c] : rhs.terms_) add(m, c);
        return *this;
    }
    CliffordElement& operator-=(const CliffordElement& rhs) {
        check_algebra(rhs);
        for (const auto& [m, c] : rhs.terms_) add(m, -c);
        return *this;
    }
    CliffordElement& operator*=(const R& factor) {
        Terms scaled;
        for (const auto& [m, c] : terms_) {
            R v = c * factor;
            if (!(v == algebra_.zero())) scaled.emplace(m, std::move(v));
        }
        terms_ = std::move(scaled);
        return *this;
    }

    friend CliffordElement operator+(CliffordElement lhs, const CliffordElement& rhs) { return lhs += rhs; }
    friend CliffordElement operator-(CliffordElement lhs, const CliffordElement& rhs) { return lhs -= rhs; }
    friend CliffordElement operator*(CliffordElement lhs, const R& factor) { return lhs *= factor; }
    friend CliffordElement operator*(const R& factor, CliffordElement rhs) { return rhs *= factor; }

    friend CliffordElement operator*(const CliffordElement& lhs, const CliffordElement& rhs) {
        lhs.check_algebra(rhs);
        const CliffordAlgebra<R>& algebra = lhs.algebra_;
        std::map<BladeMask, R> acc;
        for (const auto& [m, x] : lhs.terms_) {
            for (const auto& [n, y] : rhs.terms_) {
                const BasisProduct p = basis_product(m, n);
                R v = x * y;
                if (p.contracted != 0) v = v * algebra.blade_square(p.contracted);
                if (p.sign < 0) v = -v;
                auto it = acc.find(p.index);
                if (it == acc.end()) {
                    acc.emplace(p.index, std::move(v));
                } else {
                    it->second = it->second + v;
                }
            }
        }
        CliffordElement out(algebra);
        for (auto& [m, c] : acc) {
            if (!(c == algebra.zero())) out.terms_.emplace(m, std::move(c));
        }
        return out;
    }

    friend bool operator==(const CliffordElement& lhs, const CliffordElement& rhs) {
        return lhs.terms_ == rhs.terms_;
    }

private:
    void check_blade(BladeMask m) const {
        if (m >= algebra_.blade_count()) throw InvalidArgument("blade outside the algebra: " + blade_name(m));
    }
    void check_algebra(const CliffordElement& rhs) const {
        if (!algebra_.same_as(rhs.algebra_)) throw InvalidArgument("elements of different Clifford algebras");
    }

    CliffordAlgebra<R> algebra_;
    Terms terms_;
};

template <class R>
CliffordElement<R> mul(const CliffordElement<R>& x, const CliffordElement<R>& y) {
    return x * y;
}

template <class R>
CliffordElement<R> reversal(const CliffordElement<R>& x) {
    return x.reversal();
}

// s * s^*.  Scalar for even elements of the Clifford group; its scalar part is
// always sum_M s_M^2 f(e_M).
template <class R>
CliffordElement<R> spinor_norm(const CliffordElement<R>& s) {
    return s * s.reversal();
}

template <class R>
R scalar_part(const CliffordElement<R>& s) {
    return s.scalar_part();
}

template <class R>
bool even_part_check(const CliffordElement<R>& s) {
    return s.is_even();
}

template <class R>
R f_of_basis(const CliffordAlgebra<R>& algebra, BladeMask m) {
    return algebra.blade_square(m);
}

// ------------------------------------------------------------------ text I/O

// Coefficient formatting: magnitude text plus whether a leading minus sign can
// be pulled out of the term.
struct CoefficientText {
    bool negative = false;
    std::string magnitude;
};

CoefficientText coefficient_text(const Rational& x);
CoefficientText coefficient_text(const AlgebraicInteger& x);
CoefficientText coefficient_text(const ResidueElement& x);
CoefficientText coefficient_text(double x);

// "-8 + 6*e12 + 6*e13 + 3*e23".  Terms are ordered by blade_less.
template <class R>
std::string to_string(const CliffordElement<R>& x) {
    if (x.algebra().dimension() > 9) throw UnsupportedOperation("text format covers generators e1..e9 only");
    if (x.is_zero()) return "0";
    std::vector<BladeMask> order;
    for (const auto& term : x.terms()) order.push_back(term.first);
    std::sort(order.begin(), order.end(), blade_less);
    std::string out;
    bool first = true;
    for (const BladeMask m : order) {
        const CoefficientText c = coefficient_text(x.terms().at(m));
        if (first) {
            if (c.negative) out += "-";
        } else {
            out += c.negative ? " - " : " + ";
        }
        first = false;
        if (m == 0) {
            out += c.magnitude;
        } else if (c.magnitude == "1") {
            out += blade_name(m);
        } else {
            out += c.magnitude + "*" + blade_name(m);
        }
    }
    return out;
}

namespace detail {

// Splits "a + b*e1 - c*e12" into signed terms ("+a", "+b*e1", "-c*e12"),
// skipping signs nested in parentheses or inside a floating-point exponent.
std::vector<std::pair<int, std::string>> split_signed_terms(std::string_view normalized);

}  // namespace detail

// Parses the format produced by to_string.  parse_coefficient maps one
// coefficient string (without sign) to R.
template <class R>
CliffordElement<R> parse_element(std::string_view text, const CliffordAlgebra<R>& algebra,
                                 const std::function<R(std::string_view)>& parse_coefficient) {
    const std::string normalized = text::normalize(text);
    CliffordElement<R> out(algebra);
    for (const auto& [sign, term] : detail::split_signed_terms(normalized)) {
        BladeMask m = 0;
        R value = algebra.one();
        const auto star = term.rfind('*');
        if (term.size() > 1 && term[0] == 'e' && term.find('*') == std::string::npos &&
            std::all_of(term.begin() + 1, term.end(), [](char c) { return c >= '1' && c <= '9'; })) {
            m = parse_blade(term);
        } else if (star != std::string::npos && star + 1 < term.size() && term[star + 1] == 'e' &&
                   term.find("sqrt", star) == std::string::npos) {
            m = parse_blade(term.substr(star + 1));
            value = parse_coefficient(term.substr(0, star));
        } else {
            value = parse_coefficient(term);
        }
        if (m >= algebra.blade_count()) throw ParseError("blade " + blade_name(m) + " outside the algebra");
        out.add(m, sign < 0 ? -value : value);
    }
    return out;
}

Rational parse_rational(std::string_view text);

}  // namespace spinsys
