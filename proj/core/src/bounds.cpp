#include "spinsys/bounds.hpp"

#include "spinsys/error.hpp"

#include <cmath>

namespace spinsys {

namespace {

void require_dimension(int n) {
    if (n < 3) throw InvalidArgument("genus and two-sided constants need n >= 3, got " + std::to_string(n));
}

constexpr const char* kAsymptotic = "asymptotic: no finite-n guarantee";

}  // namespace

double systolic_genus_lower(double sys, double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw InvalidArgument("eps must lie in (0, 1/2)");
    if (!(sys >= 0.0)) throw InvalidArgument("systole must be nonnegative");
    return std::exp((0.5 - eps) * sys);
}

GenusVolumeConstants genus_volume_constants(int n) {
    require_dimension(n);
    return {Rational(4, n * (n + 1)), Rational(6, n * (n + 1))};
}

std::pair<Rational, Rational> two_sided_systole_constants(int n) {
    require_dimension(n);
    return {Rational(8, n * (n + 1)), Rational(12, n * (n + 1))};
}

BoundReport code_parameter_report(double n_code, double c1, double c2, double c3, double vol, double inj_constant) {
    if (!(n_code > 0)) throw InvalidArgument("code length must be positive");
    if (!(c1 > 0 && c2 > 0 && c3 > 0)) throw InvalidArgument("code constants must be positive");
    BoundReport r;
    r.name = "homological_code_parameters";
    r.inputs = {{"n", n_code}, {"c1", c1}, {"c2", c2}, {"c3", c3}};
    r.values["distance_exponent"] = 0.2;
    r.values["distance_lower"] = c1 * std::pow(n_code, 0.2);
    r.values["dimension_lower"] = c2 * n_code;
    r.values["kd2_exponent"] = 1.4;
    r.values["kd2_lower"] = c3 * std::pow(n_code, 1.4);
    r.values["distance_ceiling_exponent"] = 0.3;
    r.values["injectivity_constant"] = 0.2;
    if (vol > 0) {
        r.inputs["vol"] = vol;
        r.inputs["inj_constant"] = inj_constant;
        r.values["injectivity_lower"] = 0.2 * std::log(vol) - inj_constant;
    }
    r.validity_note = std::string(kAsymptotic) +
                      "; c1, c2, c3 are unspecified constants supplied by the caller (default 1); "
                      "d = O(n^0.3) is a known ceiling for these codes";
    return r;
}

double noncompact_systole_upper(double vol, int degree) {
    if (!(vol > 0)) throw InvalidArgument("volume must be positive");
    return 2.0 * std::log(vol) + degree;
}

BoundReport genus_report(int n, double sys, double eps, double vol) {
    const GenusVolumeConstants g = genus_volume_constants(n);
    const auto [lo, hi] = two_sided_systole_constants(n);
    BoundReport r;
    r.name = "systolic_genus";
    r.inputs = {{"n", n}, {"sys", sys}, {"eps", eps}};
    r.values["genus_lower"] = systolic_genus_lower(sys, eps);
    r.values["genus_log_const"] = g.lower_log_const.convert_to<double>();
    r.values["genus_upper_exponent"] = g.upper_exponent.convert_to<double>();
    r.values["systole_lower_const"] = lo.convert_to<double>();
    r.values["systole_upper_const"] = hi.convert_to<double>();
    if (vol > 0) {
        r.inputs["vol"] = vol;
        r.values["genus_log_lower"] = g.lower_log_const.convert_to<double>() * std::log(vol);
        r.values["genus_power_upper"] = std::pow(vol, g.upper_exponent.convert_to<double>());
        r.values["systole_log_lower"] = lo.convert_to<double>() * std::log(vol);
        r.values["systole_log_upper"] = hi.convert_to<double>() * std::log(vol);
    }
    r.validity_note = std::string(kAsymptotic) + "; genus bound holds for sys sufficiently large";
    return r;
}

}  // namespace spinsys
