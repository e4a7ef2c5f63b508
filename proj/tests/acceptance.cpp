// Acceptance run: one PASS/FAIL line per criterion with its wall time.
// Exit status is the number of failed criteria.  `--seed N` overrides the
// seed of the randomized criteria.

#include "spinsys/bounds.hpp"
#include "spinsys/cli/commands.hpp"
#include "spinsys/congruence.hpp"
#include "spinsys/systole.hpp"

#include "random_spin.hpp"

#include <chrono>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace spinsys;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition && pass) {
            pass = false;
            detail = what;
        }
    }
};

using Check = std::function<Outcome()>;

const FieldSpec kQ = FieldSpec::rational();
const FieldSpec kQ2 = FieldSpec::quadratic(2);

IdealHandle ideal(const char* text, const FieldSpec& field = kQ) { return IdealHandle::parse(text, field); }

std::string fmt(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.9g", v);
    return buffer;
}

// -------------------------------------------------------------- criteria

Outcome clifford_kernel() {
    Outcome o;
    std::mt19937_64 rng(testkit::test_seed());
    std::uniform_int_distribution<int> square(-3, 3);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> keep(0, 1);
    using RE = CliffordElement<Rational>;
    for (int t = 0; t < 200; ++t) {
        const int dim = 1 + t % 5;
        std::vector<Rational> squares;
        for (int i = 0; i < dim; ++i) {
            int v = 0;
            while (v == 0) v = square(rng);
            squares.emplace_back(v);
        }
        const CliffordAlgebra<Rational> a(squares, Rational(0), Rational(1));
        auto random = [&] {
            RE x(a);
            for (BladeMask m = 0; m < a.blade_count(); ++m) {
                if (keep(rng)) x.set(m, Rational(num(rng), den(rng)));
            }
            return x;
        };
        const RE x = random();
        const RE y = random();
        const RE z = random();
        o.require((x * y) * z == x * (y * z), "associativity, case " + std::to_string(t));
        o.require((x * y).reversal() == y.reversal() * x.reversal(), "reversal, case " + std::to_string(t));
        for (BladeMask m = 0; m < a.blade_count(); ++m) {
            for (BladeMask n = 0; n < a.blade_count(); ++n) {
                const RE p = RE::blade(a, m, 1) * RE::blade(a, n, 1);
                // Sign from anticommuting each generator of n past the larger ones of m.
                int swaps = 0;
                for (int j = 0; j < dim; ++j) {
                    if (!((n >> j) & 1U)) continue;
                    for (int i = j + 1; i < dim; ++i) swaps += (m >> i) & 1U;
                }
                Rational expected = a.blade_square(m & n);
                if (swaps % 2) expected = -expected;
                o.require(p == RE::blade(a, m ^ n, expected), "grade-sign law, case " + std::to_string(t));
            }
            const int g = blade_grade(m);
            const Rational sign = (g * (g - 1) / 2) % 2 == 0 ? 1 : -1;
            o.require(RE::blade(a, m, 1).reversal() == RE::blade(a, m, sign), "reversal sign");
        }
    }
    o.detail = o.pass ? "200 cases, n+1 in 1..5" : o.detail;
    return o;
}

Outcome real_part_invariance() {
    Outcome o;
    std::mt19937_64 rng(testkit::test_seed() + 1);
    for (int t = 0; t < 200; ++t) {
        const auto a = standard_rational_algebra(2 + t % 4);
        const SpinElement<Rational> g(testkit::random_rational_spin(a, rng, 3));
        const SpinElement<Rational> s(testkit::random_rational_spin(a, rng, 3));
        o.require((g * s * g.inverse()).real_part() == s.real_part(), "conjugation, case " + std::to_string(t));
        o.require(trace_left_regular(s.element()) == Rational(1 << a.dimension()) * s.real_part(),
                  "trace, case " + std::to_string(t));
    }
    if (o.pass) o.detail = "200 exact pairs, n in 1..4";
    return o;
}

Outcome rescaled_a11() {
    Outcome o;
    std::mt19937_64 rng(testkit::test_seed() + 2);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const int n = 2 + t % 3;
        const auto a = standard_real_algebra(n + 1);
        const SpinElement<double> s(testkit::random_real_spin(a, rng, 4));
        const auto hat = rescale_to_standard(s);
        double squares = 0.0;
        for (const auto& term : hat.terms()) squares += term.second * term.second;
        const double a11 = to_so_matrix(SpinElement<double>(hat))(0, 0);
        worst = std::max(worst, std::fabs(a11 - squares));
    }
    o.require(worst < 1e-9, "max |a11 - sum| = " + fmt(worst));
    if (o.pass) o.detail = "500 elements, max |a11 - sum| = " + fmt(worst);
    return o;
}

Outcome displacement_bound() {
    Outcome o;
    std::mt19937_64 rng(testkit::test_seed() + 3);
    int checked = 0;
    double slack = 1e300;
    while (checked < 500) {
        const int dim = 3 + checked % 3;
        const auto a = standard_real_algebra(dim);
        const SpinElement<double> s(testkit::random_real_spin(a, rng, 3, 2.5));
        if (std::fabs(s.real_part()) < 1.0) continue;
        const HyperbolicPoint x = testkit::random_point(dim, rng);
        const double gap = displacement(s, x) - displacement_lower_bound(s).value;
        slack = std::min(slack, gap);
        o.require(gap >= -1e-9, "gap " + fmt(gap) + " at case " + std::to_string(checked));
        ++checked;
    }
    if (o.pass) o.detail = "500 pairs, min slack " + fmt(slack);
    return o;
}

Outcome finite_counts() {
    Outcome o;
    const QuadraticForm f = QuadraticForm::standard(3);
    for (const auto& [p, expected] : std::vector<std::pair<const char*, std::uint64_t>>{{"(3)", 24}, {"(5)", 120}}) {
        const std::uint64_t order = enumerate_finite_spin(f, ideal(p)).order;
        const std::uint64_t so = so_order_bruteforce(f, ideal(p));
        o.require(order == expected, std::string(p) + " order " + std::to_string(order));
        o.require(order == so, std::string(p) + " SO brute force " + std::to_string(so));
        o.require(BigInt(order) <= index_upper_bound(ideal(p).norm(), 2), std::string(p) + " above N^3");
    }
    if (o.pass) o.detail = "24 (SO 24, <= 27), 120 (SO 120, <= 125)";
    return o;
}

Outcome kernel_theta() {
    Outcome o;
    const KernelReport k = kernel_theta_size(QuadraticForm::standard(3), ideal("(3)"), 1);
    o.require(k.kernel_size == 27, "kernel size " + std::to_string(k.kernel_size));
    o.require(k.expected == 27, "expected 3^3");
    o.require(k.shape_ok, "kernel element off the 1 + grade-2 shape");
    if (o.pass) o.detail = "27 elements of shape 1 + (3)/(9) grade-2 terms";
    return o;
}

Outcome crt() {
    Outcome o;
    const CrtReport r = crt_check(QuadraticForm::standard(3), ideal("(15)"));
    o.require(r.direct_order == 2880, "direct " + std::to_string(r.direct_order));
    o.require(r.product == 2880 && r.equal, "product " + r.product.str());
    o.require(r.factors.size() == 2 && r.factors[0].order == 24 && r.factors[1].order == 120, "factor orders");
    if (o.pass) o.detail = "2880 = 24 * 120";
    return o;
}

Outcome isotropy() {
    Outcome o;
    std::uint64_t forms = 0;
    for (const char* p : {"(3)", "(5)", "(7)"}) {
        const ResidueRing field(ideal(p));
        for (int m = 3; m <= 5; ++m) {
            std::vector<std::int64_t> idx(static_cast<std::size_t>(m), 1);
            while (true) {
                std::vector<ResidueElement> d;
                for (const auto i : idx) d.push_back(field.element(i));
                const auto v = isotropy_test(d, field);
                bool ok = v.has_value();
                if (ok) {
                    ResidueElement value = field.zero();
                    bool nonzero = false;
                    for (std::size_t i = 0; i < d.size(); ++i) {
                        value += d[i] * (*v)[i] * (*v)[i];
                        nonzero = nonzero || !(*v)[i].is_zero();
                    }
                    ok = value.is_zero() && nonzero;
                }
                o.require(ok, std::string("no isotropic vector over ") + p);
                ++forms;
                int k = m - 1;
                while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == field.size()) {
                    idx[static_cast<std::size_t>(k)] = 1;
                    --k;
                }
                if (k < 0) break;
            }
        }
    }
    if (o.pass) o.detail = std::to_string(forms) + " diagonal forms in 3..5 variables over F_3, F_5, F_7";
    return o;
}

Outcome box_search() {
    Outcome o;
    SearchBox box;
    box.bound = 10;
    const SystoleEstimate e = search_short_elements(CongruenceLevel(QuadraticForm::standard(3), ideal("(3)")), box);
    o.require(e.min_abs_real_part && *e.min_abs_real_part == AlgebraicInteger(8), "min |s_R| is not 8");
    o.require(e.real_part_bound == 3.5 && 8.0 >= e.real_part_bound, "real-part bound");
    o.require(e.shortest_found.has_value(), "nothing found");
    if (!o.pass) return o;
    const ShortElement& w = *e.shortest_found;
    o.require(to_string(w.element) == "-8 + 6*e12 + 6*e13 + 3*e23", "witness " + to_string(w.element));
    o.require(w.cosh_displacement == AlgebraicInteger(145), "cosh " + w.cosh_displacement.to_string());
    o.require(std::fabs(w.displacement - std::acosh(145.0)) < 1e-9, "displacement " + fmt(w.displacement));
    o.require(std::fabs(e.lower.value - 4 * std::log(1.5)) < 1e-12 && e.lower.valid, "lower bound");
    o.require(w.displacement >= e.lower.value, "displacement below the bound");
    o.require(e.real_part_violations == 0 && e.displacement_violations == 0, "bound violations among survivors");
    if (o.pass) {
        o.detail = "min |s_R| = 8 >= 3.5, witness " + to_string(w.element) + ", d = arccosh(145) = " +
                   fmt(w.displacement) + " >= " + fmt(e.lower.value);
    }
    return o;
}

Outcome theorem_constants() {
    Outcome o;
    o.require(theorem_constant(2) == Rational(4, 3), "n=2");
    o.require(theorem_constant(3) == Rational(2, 3), "n=3");
    o.require(theorem_constant(4) == Rational(2, 5), "n=4");
    o.require(two_sided_systole_constants(3).first == theorem_constant(3), "dimension-3 constant");
    if (o.pass) o.detail = "4/3, 2/3, 2/5";
    return o;
}

Outcome sharpness() {
    Outcome o;
    std::vector<IdealHandle> ideals;
    for (const char* p : {"(3)", "(5)", "(7)", "(11)", "(13)", "(101)"}) ideals.push_back(ideal(p));
    SearchBox box;
    box.bound = 0;
    const SharpnessReport r = sharpness_report(QuadraticForm::standard(3), ideals, {1.0, 2}, box);
    double worst = 0.0;
    for (const auto& row : r.rows) {
        const double p = row.norm.convert_to<double>();
        worst = std::max(worst, std::fabs(row.lower_ratio - (1.0 - std::log(2.0) / std::log(p))));
    }
    o.require(worst < 1e-9, "max deviation " + fmt(worst));
    o.require(r.monotone, "not strictly increasing");
    o.require(r.rows.back().lower_ratio > 0.84, "ratio at 101 is " + fmt(r.rows.back().lower_ratio));
    if (o.pass) o.detail = "ratio at 101 = " + fmt(r.rows.back().lower_ratio) + ", max deviation " + fmt(worst);
    return o;
}

Outcome quaternion() {
    Outcome o;
    std::mt19937_64 rng(testkit::test_seed() + 4);
    for (const FieldSpec& field : {kQ, kQ2}) {
        for (int t = 0; t < 50; ++t) {
            const QuadraticForm f = testkit::random_admissible_ternary(field, rng);
            o.require(f.is_admissible(), "generated form not admissible: " + f.to_string());
            const QuaternionParams q = quaternion_params(f);
            o.require(q.relations_hold, "relations fail for " + f.to_string());
            o.require(q.a == f.signature_coefficient(0) * f.signature_coefficient(1) &&
                          q.b == f.signature_coefficient(0) * f.signature_coefficient(2),
                      "parameters for " + f.to_string());
        }
    }
    if (o.pass) o.detail = "50 forms over Q, 50 over Q(sqrt 2)";
    return o;
}

Outcome determinism() {
    Outcome o;
    const std::vector<std::vector<std::string>> commands = {
        {"alg", "mul", "--form", "1,-1,-1", "1 + e12", "2 - e13"},
        {"spin", "verify", "-8 + 6*e12 + 6*e13 + 3*e23"},
        {"cong", "count", "--ideal", "(15)", "--elements"},
        {"cong", "count", "--field", "Q(sqrt 2)", "--form", "1,-sqrt2,-sqrt2", "--ideal", "(3)"},
        {"sys", "search", "--ideal", "(3)", "--box", "10"},
        {"sys", "search", "--form", "1,-1,-1,-1", "--ideal", "(3)", "--box", "4"},
        {"sys", "bound", "--ideal", "(5)", "--degree", "1", "--dim", "2"},
        {"sys", "report", "--ideals", "(3),(5),(7),(11),(13),(101)"},
        {"bounds", "report", "--dim", "3", "--code-n", "1000", "--sys", "10", "--vol", "50"},
    };
    int reports = 0;
    for (const auto& base : commands) {
        for (const char* format : {"json", "csv"}) {
            std::string reference;
            for (const char* threads : {"1", "1", "8"}) {
                std::vector<std::string> args{"spinsys"};
                args.insert(args.end(), base.begin(), base.end());
                args.insert(args.end(), {"--format", format, "--threads", threads});
                std::ostringstream out;
                std::ostringstream err;
                const int code = cli::run_cli(args, out, err);
                o.require(code == 0, base[0] + " " + base[1] + " exited " + std::to_string(code) + ": " + err.str());
                if (reference.empty()) {
                    reference = out.str();
                } else {
                    o.require(out.str() == reference, base[0] + " " + base[1] + " output differs");
                }
            }
            ++reports;
        }
    }
    if (o.pass) o.detail = std::to_string(reports) + " reports identical over two runs and threads 1 / 8";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        if (std::string(argv[i]) == "--seed") ::setenv("SPINSYS_SEED", argv[i + 1], 1);
    }
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;  // 0: no time limit
        Check check;
    };
    const std::vector<Criterion> criteria = {
        {1, "clifford kernel laws", 5, clifford_kernel},
        {2, "real part conjugation invariance and trace", 0, real_part_invariance},
        {3, "rescaled a11 equals sum of squares", 0, rescaled_a11},
        {4, "displacement >= 2 log|s_R|", 0, displacement_bound},
        {5, "finite spin orders modulo 3 and 5", 10, finite_counts},
        {6, "kernel of reduction (2, (3), 1)", 60, kernel_theta},
        {7, "CRT for (15)", 120, crt},
        {8, "isotropy over F_3, F_5, F_7", 30, isotropy},
        {9, "box search for (3), B = 10", 60, box_search},
        {10, "systole constants 8/(n(n+1))", 0, theorem_constants},
        {11, "sharpness ratio trend", 0, sharpness},
        {12, "quaternion identification", 0, quaternion},
        {13, "CLI determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && seconds >= c.limit_seconds) {
            o.pass = false;
            o.detail += " (took " + fmt(seconds) + " s, limit " + fmt(c.limit_seconds) + " s)";
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.3f s", seconds);
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << timing
                  << "] " << o.detail << "\n";
        failed += o.pass ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed;
}
