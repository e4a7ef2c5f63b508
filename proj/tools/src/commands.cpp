#include "spinsys/cli/commands.hpp"

#include "spinsys/bounds.hpp"
#include "spinsys/systole.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <map>

namespace spinsys::cli {

namespace {

Json big_json(const BigInt& v) {
    if (v >= -(BigInt(1) << 53) && v <= (BigInt(1) << 53)) return v.convert_to<std::int64_t>();
    return v.str();
}

std::string exact_text(const Rational& x) { return x.str(); }
std::string exact_text(const AlgebraicInteger& x) { return x.to_string(); }

FieldSpec field_of(const RunConfig& c) { return FieldSpec::parse(c.field); }

// Without --form: the standard form x_0^2 - x_1^2 - ... - x_n^2 over Q.
QuadraticForm form_of(const RunConfig& c) {
    if (c.form.empty()) {
        if (!field_of(c).is_rational()) throw InvalidArgument("--form is required over a quadratic field");
        return QuadraticForm::standard(c.dim + 1);
    }
    return QuadraticForm::parse(c.form, field_of(c));
}

IdealHandle ideal_of(const RunConfig& c) {
    if (c.ideal.empty()) throw InvalidArgument("--ideal is required");
    return IdealHandle::parse(c.ideal, field_of(c));
}

std::vector<IdealHandle> ideals_of(const RunConfig& c) {
    if (c.ideals.empty()) throw InvalidArgument("--ideals is required");
    std::vector<IdealHandle> out;
    for (const auto& part : text::split_top_level(text::normalize(c.ideals), ',')) {
        out.push_back(IdealHandle::parse(part, field_of(c)));
    }
    return out;
}

int degree_of(const RunConfig& c) { return c.degree > 0 ? c.degree : field_of(c).degree(); }

Report single(Json row) {
    Report r;
    for (const auto& item : row.items()) r.columns.push_back(item.key());
    r.rows.push_back(std::move(row));
    return r;
}

// Runs `body` with the coefficient ring matching the field: exact rationals
// over Q, Z[sqrt d] otherwise.
template <class Body>
Report with_ring(const QuadraticForm& form, Body&& body) {
    if (form.field().is_rational()) {
        return body(form.rational_algebra(), std::function<Rational(std::string_view)>(parse_rational));
    }
    const FieldSpec field = form.field();
    return body(form.integral_algebra(), std::function<AlgebraicInteger(std::string_view)>(
                                             [field](std::string_view t) { return AlgebraicInteger::parse(t, field); }));
}

template <class R>
Json matrix_json(const Matrix<R>& a) {
    Json rows = Json::array();
    for (int i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < a.cols(); ++j) row.push_back(exact_text(a(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Report alg_mul(const RunConfig& config, const std::string& lhs, const std::string& rhs) {
    const QuadraticForm form = form_of(config);
    return with_ring(form, [&](const auto& algebra, const auto& parse) {
        const auto x = parse_element(lhs, algebra, parse);
        const auto y = parse_element(rhs, algebra, parse);
        Json row;
        row["field"] = form.field().to_string();
        row["form"] = form.to_string();
        row["x"] = to_string(x);
        row["y"] = to_string(y);
        row["product"] = to_string(x * y);
        return single(std::move(row));
    });
}

Report spin_verify(const RunConfig& config, const std::string& element) {
    const QuadraticForm form = form_of(config);
    return with_ring(form, [&](const auto& algebra, const auto& parse) {
        using R = std::decay_t<decltype(algebra.one())>;
        const auto s = parse_element(element, algebra, parse);
        Json row;
        row["field"] = form.field().to_string();
        row["form"] = form.to_string();
        row["element"] = to_string(s);
        const bool spin = is_spin(s);
        row["is_spin"] = spin;
        row["real_part"] = exact_text(s.scalar_part());
        row["so_matrix"] = nullptr;
        row["displacement"] = nullptr;
        row["lower_bound"] = nullptr;
        row["lower_bound_vacuous"] = nullptr;
        row["note"] = "";
        if (spin) {
            const SpinElement<R> verified(s);
            row["so_matrix"] = matrix_json(to_so_matrix(verified));
            if (form.is_admissible()) {
                row["displacement"] = number6(displacement_at_basepoint(verified));
                const DisplacementBound bound = displacement_lower_bound(verified);
                row["lower_bound"] = number6(bound.value);
                row["lower_bound_vacuous"] = bound.vacuous;
                row["note"] = "displacement of e1; the lower bound holds at every point";
            } else {
                row["note"] = "form is not admissible; no hyperbolic displacement";
            }
        }
        return single(std::move(row));
    });
}

Report cong_count(const RunConfig& config) {
    const QuadraticForm form = form_of(config);
    const IdealHandle ideal = ideal_of(config);
    const CongruenceLevel level(form, ideal, config.declared_good);
    if (!level.is_good()) throw HypothesisViolation(level.exclusion_note());
    EnumerationOptions options;
    options.budget = config.budget;
    options.keep_elements = config.elements;
    options.threads = config.threads;
    options.seed = config.seed;
    const FiniteSpinGroup group = enumerate_finite_spin(form, ideal, options);
    const BigInt bound = index_upper_bound(level);

    Json row;
    row["field"] = form.field().to_string();
    row["form"] = form.to_string();
    row["ideal"] = ideal.to_string();
    row["norm"] = big_json(ideal.norm());
    row["order"] = group.order;
    row["bound"] = big_json(bound);
    row["within_bound"] = BigInt(group.order) <= bound;
    row["formula_order"] = nullptr;
    row["oracle_order"] = nullptr;
    if (is_prime_ideal(ideal) && ideal.norm() % 2 == 1) {
        const ResidueRing field(ideal);
        std::vector<ResidueElement> diagonal;
        for (const auto& c : form.diagonal()) diagonal.push_back(field.reduce(c));
        row["formula_order"] = big_json(so_order_formula(diagonal, field).order);
        try {
            row["oracle_order"] = so_order_bruteforce(diagonal, field, config.budget);
        } catch (const BudgetExceeded&) {
            row["oracle_order"] = nullptr;
        }
    }
    if (group.elements) {
        Json list = Json::array();
        for (const auto& e : *group.elements) list.push_back(to_string(e));
        row["elements"] = std::move(list);
    }
    return single(std::move(row));
}

Report sys_search(const RunConfig& config) {
    const QuadraticForm form = form_of(config);
    const IdealHandle ideal = ideal_of(config);
    SearchBox box;
    box.bound = config.box;
    box.budget = config.budget;
    box.threads = config.threads;
    const SystoleEstimate e = search_short_elements(CongruenceLevel(form, ideal, config.declared_good), box);
    Json row;
    row["field"] = form.field().to_string();
    row["form"] = form.to_string();
    row["ideal"] = ideal.to_string();
    row["box"] = config.box;
    row["candidates"] = e.candidates;
    row["survivors"] = e.survivors;
    row["non_hyperbolic"] = e.non_hyperbolic;
    row["lower_bound"] = number6(e.lower.value);
    row["valid"] = e.lower.valid;
    row["real_part_bound"] = number6(e.real_part_bound);
    row["min_abs_real_part"] = e.min_abs_real_part ? Json(e.min_abs_real_part->to_string()) : Json(nullptr);
    if (e.shortest_found) {
        Json found;
        found["element"] = to_string(e.shortest_found->element);
        found["real_part"] = e.shortest_found->element.scalar_part().to_string();
        found["cosh_displacement"] = e.shortest_found->cosh_displacement.to_string();
        found["displacement"] = number6(e.shortest_found->displacement);
        row["shortest_found"] = std::move(found);
    } else {
        row["shortest_found"] = nullptr;
    }
    row["bound_violations"] = e.real_part_violations + e.displacement_violations;
    row["caveat"] = "shortest found displacement at e1; an upper estimate for the systole, not a proof";
    return single(std::move(row));
}

Report sys_bound(const RunConfig& config) {
    const IdealHandle ideal = ideal_of(config);
    const int degree = degree_of(config);
    const SystoleLowerBound lower = systole_lower_bound(ideal.norm(), degree);
    Json row;
    row["ideal"] = ideal.to_string();
    row["norm"] = big_json(ideal.norm());
    row["degree"] = degree;
    row["dim"] = config.dim;
    row["lower"] = number6(lower.value);
    row["valid"] = lower.valid;
    row["real_part_bound"] = number6(real_part_lower_bound(ideal.norm(), degree));
    row["theorem_constant"] = theorem_constant(config.dim).str();
    row["index_bound"] = big_json(index_upper_bound(ideal.norm(), config.dim));
    return single(std::move(row));
}

Report sys_report(const RunConfig& config) {
    const QuadraticForm form = form_of(config);
    SearchBox box;
    box.bound = config.box;
    box.budget = config.budget;
    box.threads = config.threads;
    const SharpnessReport report = sharpness_report(form, ideals_of(config), VolumeModel{config.nu, form.n()}, box);
    Report out;
    out.table = true;
    out.columns = {"N(I)", "lower_bound", "shortest_found", "vol_model", "ratio"};
    for (const auto& r : report.rows) {
        Json row;
        row["N(I)"] = big_json(r.norm);
        row["lower_bound"] = number6(r.lower.value);
        row["shortest_found"] = r.shortest_found ? number6(*r.shortest_found) : Json(nullptr);
        row["vol_model"] = number6(r.volume.value);
        row["ratio"] = number6(r.lower_ratio);
        out.rows.push_back(std::move(row));
    }
    return out;
}

Report bounds_report(const RunConfig& config) {
    const int n = config.dim;
    Json row;
    row["dim"] = n;
    row["theorem_constant"] = theorem_constant(n).str();
    if (n >= 3) {
        const GenusVolumeConstants g = genus_volume_constants(n);
        const auto [lo, hi] = two_sided_systole_constants(n);
        row["genus_log_const"] = g.lower_log_const.str();
        row["genus_upper_exponent"] = g.upper_exponent.str();
        row["systole_lower_const"] = lo.str();
        row["systole_upper_const"] = hi.str();
    } else {
        row["genus_log_const"] = nullptr;
        row["genus_upper_exponent"] = nullptr;
        row["systole_lower_const"] = nullptr;
        row["systole_upper_const"] = nullptr;
    }
    if (config.sys >= 0) row["genus_lower"] = number6(systolic_genus_lower(config.sys, config.eps));
    if (config.vol > 0) {
        row["noncompact_upper"] = number6(noncompact_systole_upper(config.vol, degree_of(config)));
    }
    if (config.code_n > 0) {
        const BoundReport code =
            code_parameter_report(config.code_n, config.c1, config.c2, config.c3, config.vol, config.inj_constant);
        Json values;
        for (const auto& [k, v] : code.values) values[k] = number6(v);
        row["code"] = std::move(values);
        row["code_note"] = code.validity_note;
    }
    row["validity_note"] = n >= 3 ? "asymptotic: no finite-n guarantee; genus and two-sided constants need n >= 3"
                                  : "genus and two-sided constants need n >= 3";
    return single(std::move(row));
}

// ------------------------------------------------------------------- driver

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Clifford algebras, spin groups and systole bounds for arithmetic hyperbolic manifolds", "spinsys"};
    app.fallthrough();
    app.require_subcommand(1);

    std::map<std::string, std::string> values;
    std::vector<std::pair<CLI::Option*, std::string>> bound_options;
    auto option = [&](CLI::App* where, const std::string& key, const std::string& help) {
        std::string flag = key;
        for (auto& c : flag) c = c == '_' ? '-' : c;
        bound_options.emplace_back(where->add_option("--" + flag, values[key], help), key);
    };
    std::string config_path;
    app.add_option("--config", config_path, "key = value configuration file");
    option(&app, "format", "json or csv");
    option(&app, "output", "write the report to this file");
    option(&app, "threads", "worker threads for enumerations");
    option(&app, "budget", "candidate budget for exhaustive scans");
    option(&app, "seed", "seed for randomized checks");

    std::vector<std::string> positional;
    auto field_and_form = [&](CLI::App* sc) {
        option(sc, "field", "Q or Q(sqrt d)");
        option(sc, "form", "diagonal entries f(e_i), e.g. \"1,-1,-1\"");
        option(sc, "dim", "hyperbolic dimension n of the default form");
    };

    CLI::App* alg = app.add_subcommand("alg", "Clifford algebra arithmetic");
    alg->require_subcommand(1);
    CLI::App* mul = alg->add_subcommand("mul", "multiply two elements");
    field_and_form(mul);
    mul->add_option("elements", positional, "two elements such as \"1 + 2*e12\"")->expected(2)->required();

    CLI::App* spin = app.add_subcommand("spin", "spin group membership");
    spin->require_subcommand(1);
    CLI::App* verify = spin->add_subcommand("verify", "check membership, SO matrix and displacement");
    field_and_form(verify);
    verify->add_option("element", positional, "element such as \"5/4 + 3/4*e12\"")->expected(1)->required();

    CLI::App* cong = app.add_subcommand("cong", "finite spin groups modulo an ideal");
    cong->require_subcommand(1);
    CLI::App* count = cong->add_subcommand("count", "order of (Q/IQ)^1 with bound and SO counts");
    field_and_form(count);
    option(count, "ideal", "principal ideal, e.g. \"(3)\"");
    option(count, "good", "declare a quadratic-field level good (true) or bad (false)");
    bool list_elements = false;
    count->add_flag("--elements", list_elements, "list the elements");

    CLI::App* sys = app.add_subcommand("sys", "systole bounds and searches");
    sys->require_subcommand(1);
    CLI::App* search = sys->add_subcommand("search", "exhaustive box search in Gamma(I)");
    field_and_form(search);
    option(search, "ideal", "principal ideal");
    option(search, "box", "coordinate bound B");
    option(search, "good", "declare a quadratic-field level good (true) or bad (false)");
    CLI::App* bound = sys->add_subcommand("bound", "systole lower bound for a level");
    option(bound, "field", "Q or Q(sqrt d)");
    option(bound, "ideal", "principal ideal");
    option(bound, "degree", "degree of the field");
    option(bound, "dim", "hyperbolic dimension n");
    CLI::App* report = sys->add_subcommand("report", "sharpness table over several ideals");
    field_and_form(report);
    option(report, "ideals", "comma separated ideals, e.g. \"(3),(5),(7)\"");
    option(report, "box", "coordinate bound B for the surface search");
    option(report, "nu", "volume normalization");

    CLI::App* bounds = app.add_subcommand("bounds", "genus and code bounds");
    bounds->require_subcommand(1);
    CLI::App* breport = bounds->add_subcommand("report", "constants and evaluated bounds");
    option(breport, "dim", "hyperbolic dimension n");
    option(breport, "code_n", "code length");
    option(breport, "c1", "distance constant");
    option(breport, "c2", "dimension constant");
    option(breport, "c3", "kd^2 constant");
    option(breport, "sys", "systole for the genus bound");
    option(breport, "eps", "epsilon in (0, 1/2)");
    option(breport, "vol", "volume");
    option(breport, "inj_constant", "constant in the injectivity radius bound");
    option(breport, "field", "Q or Q(sqrt d)");

    if (args.size() <= 1) {
        err << app.help();
        return kExitUsage;
    }
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        std::vector<Setting> flags;
        for (const auto& [opt, key] : bound_options) {
            if (opt->count() > 0) flags.emplace_back(key, values[key]);
        }
        if (list_elements) flags.emplace_back("elements", "true");
        const std::vector<Setting> file = config_path.empty() ? std::vector<Setting>{} : read_config_file(config_path);
        const RunConfig config = resolve_config(file, flags);

        Report result;
        if (mul->parsed()) {
            result = alg_mul(config, positional.at(0), positional.at(1));
        } else if (verify->parsed()) {
            result = spin_verify(config, positional.at(0));
        } else if (count->parsed()) {
            result = cong_count(config);
        } else if (search->parsed()) {
            result = sys_search(config);
        } else if (bound->parsed()) {
            result = sys_bound(config);
        } else if (report->parsed()) {
            result = sys_report(config);
        } else if (breport->parsed()) {
            result = bounds_report(config);
        }
        emit_report(result, config.format, config.output, out);
        return kExitOk;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const HypothesisViolation& e) {
        err << "hypothesis violated: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace spinsys::cli
