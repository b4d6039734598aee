#pragma once

#include "blflux/models.hpp"

#include <string_view>
#include <vector>

namespace blflux::classifier {

enum class Verdict { pass, fail, indeterminate };

enum class Condition {
    c1,             // m > 0, m(0) = 0
    c2,             // m' > 0, m'(0) = 0
    c3,             // m'' > 0
    c4,             // m''/m' decreasing
    log_decreasing, // m'/m decreasing
};

std::string_view to_string(Verdict v);
std::string_view to_string(Condition c);

struct Witness {
    Condition condition;
    double s;
    /// Scale-free sign quantity at s (see check_conditions), or the raw
    /// endpoint value for the m(0) / m'(0) checks.
    double value;
    bool indeterminate = false;
};

struct ConditionReport {
    Verdict c1 = Verdict::indeterminate;
    Verdict c2 = Verdict::indeterminate;
    Verdict c3 = Verdict::indeterminate;
    Verdict c4 = Verdict::indeterminate;
    /// m'/m decreasing on the grid (the half of C4* that C4 does not state).
    Verdict log_decreasing = Verdict::indeterminate;
    /// c4 and log_decreasing both pass.
    Verdict c4star = Verdict::indeterminate;
    bool in_class_M = false;

    std::vector<Witness> witnesses;
    /// (m''/m^3)' at s = 0.5; NaN when m(0.5) <= 0.
    double criterion_T3 = 0.0;

    int grid_n = 0;
    double eps = 0.0;
    double m_at_eps = 0.0;
    double slope_at_eps = 0.0;
};

struct CheckOptions {
    int grid_n = 4096;
    double eps = 1e-6;
    double endpoint_tol = 1e-4;
    double endpoint_tol_slope = 1e-2;
    /// Minimum local decay exponent eps m''(eps) / m'(eps) that accepts
    /// m'(0) = 0 when m'(eps) itself exceeds endpoint_tol_slope.
    double min_slope_decay = 1e-3;
    /// Sign quantities with magnitude below this are indeterminate.
    double zero_tol = 1e-13;
    /// Indeterminate witnesses kept per condition.
    int max_indeterminate_witnesses = 3;
};

/// Grid check of conditions C1-C4 and C4* on s_i = eps + i (1 - 2 eps) / (n - 1).
///
/// Each condition is decided from a scale-free sign quantity built from the
/// ratios r_k = m^(k) / |m|:
///   C2: r1 s,   C3: r2 s^2,
///   C4: (r3 r1 - r2^2) / (|r3 r1| + r2^2)   (sign of m''' m' - m''^2),
///   m'/m decreasing: (r2 - r1^2) / (|r2| + r1^2).
/// Points where m underflows are indeterminate for every condition.
/// Throws std::invalid_argument for bad options and DomainError when the
/// model cannot be evaluated on the grid.
ConditionReport check_conditions(const models::ModelExpr& m, const CheckOptions& options = {});

/// (m''/m^3)' at s = 0.5, i.e. (m''' m - 3 m'' m') / m^4. Throws DomainError
/// when m(0.5) is zero.
double criterion_T3(const models::ModelExpr& m);

enum class Ratio { m2_over_m, m2_over_m1, m1_over_m };

struct RatioScanOptions {
    int grid_n = 4096;
    double eps = 1e-6;
    double tol = 1e-10;
    double zero_tol = 1e-13;
};

/// Sign changes of the derivative of the chosen ratio on (eps, 1 - eps),
/// each refined by bisection to an interval narrower than `tol`.
std::vector<double> monotonicity_change_of_ratio(const models::ModelExpr& m, Ratio which,
                                                 const RatioScanOptions& options = {});

}  // namespace blflux::classifier
