#pragma once

// Evaluators for the systolic genus and homological code bounds that follow
// from the systole estimate.  The asymptotic relations carry no explicit
// rate, so every report states its caveat in validity_note.

#include "spinsys/ring.hpp"

#include <map>
#include <string>
#include <utility>

namespace spinsys {

struct BoundReport {
    std::string name;
    std::map<std::string, double> inputs;
    std::map<std::string, double> values;
    std::string validity_note;
};

// exp((1/2 - eps) sys); eps in (0, 1/2).  Holds once sys is large enough.
double systolic_genus_lower(double sys, double eps);

struct GenusVolumeConstants {
    // sysg >~ lower_log_const * log(vol).
    Rational lower_log_const;
    // sysg <~ vol^upper_exponent.
    Rational upper_exponent;
};

// (4/(n(n+1)), 6/(n(n+1))), n >= 3.
GenusVolumeConstants genus_volume_constants(int n);

// (8/(n(n+1)), 12/(n(n+1))), n >= 3.
std::pair<Rational, Rational> two_sided_systole_constants(int n);

// Code bounds d >= c1 n^0.2, k >= c2 n, k d^2 >= c3 n^1.4, the d = O(n^0.3)
// ceiling, and inj >= (1/5) log(vol) - inj_constant for the 4-dimensional
// manifold (evaluated when vol > 0).
BoundReport code_parameter_report(double n_code, double c1 = 1.0, double c2 = 1.0, double c3 = 1.0,
                                  double vol = 0.0, double inj_constant = 0.0);

// 2 log(vol) + d, the known upper bound for non-compact manifolds.  Exposed as
// a formula only.
double noncompact_systole_upper(double vol, int degree);

BoundReport genus_report(int n, double sys, double eps, double vol);

}  // namespace spinsys
