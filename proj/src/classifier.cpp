#include "blflux/classifier.hpp"

#include "blflux/error.hpp"
#include "blflux/roots.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blflux::classifier {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Derivative ratios m^(k) / |m|; empty when m underflows or is not finite.
struct Ratios {
    bool valid = false;
    double m0 = 0.0;
    double r1 = nan, r2 = nan, r3 = nan;
};

Ratios ratios(const Jet3& j) {
    Ratios r;
    r.m0 = j.f0;
    if (!std::isnormal(j.f0)) return r;
    const double mag = std::abs(j.f0);
    r.r1 = j.f1 / mag;
    r.r2 = j.f2 / mag;
    r.r3 = j.f3 / mag;
    r.valid = true;
    return r;
}

double relative(double num, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) return nan;
    return num / scale;
}

// Scale-free quantity whose sign decides the monotonicity of each ratio.
// Negative means the ratio is decreasing.
double ratio_slope(const Ratios& r, Ratio which) {
    switch (which) {
        case Ratio::m2_over_m:  // m''' m - m'' m'
            return relative(r.r3 - r.r2 * r.r1, std::abs(r.r3) + std::abs(r.r2 * r.r1));
        case Ratio::m2_over_m1:  // m''' m' - m''^2
            return relative(r.r3 * r.r1 - r.r2 * r.r2, std::abs(r.r3 * r.r1) + r.r2 * r.r2);
        case Ratio::m1_over_m:  // m'' m - m'^2
            return relative(r.r2 - r.r1 * r.r1, std::abs(r.r2) + r.r1 * r.r1);
    }
    return nan;
}

constexpr std::size_t n_grid_conditions = 5;

struct Tally {
    int fails = 0;
    int passes = 0;
    int indeterminate = 0;
    int kept_indeterminate = 0;
    double first_s = nan, first_v = nan;
    double worst_s = nan, worst_v = nan;
    double worst_violation = -1.0;
};

Verdict verdict_of(const Tally& t) {
    if (t.fails > 0) return Verdict::fail;
    if (t.passes > 0) return Verdict::pass;
    return Verdict::indeterminate;
}

Verdict both(Verdict a, Verdict b) {
    if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
    if (a == Verdict::pass && b == Verdict::pass) return Verdict::pass;
    return Verdict::indeterminate;
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

std::string_view to_string(Condition c) {
    switch (c) {
        case Condition::c1: return "C1";
        case Condition::c2: return "C2";
        case Condition::c3: return "C3";
        case Condition::c4: return "C4";
        case Condition::log_decreasing: return "m'/m decreasing";
    }
    return "?";
}

ConditionReport check_conditions(const models::ModelExpr& m, const CheckOptions& opt) {
    if (opt.grid_n < 100) throw std::invalid_argument("grid_n must be >= 100");
    if (!(opt.eps > 0.0 && opt.eps < 1e-3)) throw std::invalid_argument("eps must be in (0, 1e-3)");

    ConditionReport rep;
    rep.grid_n = opt.grid_n;
    rep.eps = opt.eps;

    std::array<Tally, n_grid_conditions> tally{};
    const auto grid = uniform_grid(opt.eps, 1.0 - opt.eps, opt.grid_n);

    // Condition must be positive (sign = +1) for c1..c3 and negative for the
    // monotonicity quantities; `want` encodes that.
    auto record = [&](Condition c, double s, double v, int want) {
        Tally& t = tally[static_cast<std::size_t>(c)];
        // A normal m carries its sign exactly; only the scale-free quantities
        // are subject to the rounding threshold.
        const int sg = sign_of(v, c == Condition::c1 ? 0.0 : opt.zero_tol);
        if (sg == 0) {
            ++t.indeterminate;
            if (t.kept_indeterminate < opt.max_indeterminate_witnesses) {
                ++t.kept_indeterminate;
                rep.witnesses.push_back({c, s, v, true});
            }
        } else if (sg == want) {
            ++t.passes;
        } else {
            if (t.fails++ == 0) {
                t.first_s = s;
                t.first_v = v;
            }
            const double violation = std::abs(v);
            if (violation > t.worst_violation) {
                t.worst_violation = violation;
                t.worst_s = s;
                t.worst_v = v;
            }
        }
    };

    for (double s : grid) {
        const Jet3 j = m.eval_at(s);
        const Ratios r = ratios(j);
        if (!r.valid) {
            // Underflowed or non-finite value: no sign information here.
            const double v = std::isfinite(j.f0) ? j.f0 : nan;
            if (std::isfinite(j.f0) && j.f0 < 0.0) {
                record(Condition::c1, s, v, +1);
            } else {
                record(Condition::c1, s, 0.0, +1);
            }
            record(Condition::c2, s, 0.0, +1);
            record(Condition::c3, s, 0.0, +1);
            record(Condition::c4, s, 0.0, -1);
            record(Condition::log_decreasing, s, 0.0, -1);
            continue;
        }
        record(Condition::c1, s, r.m0, +1);
        record(Condition::c2, s, r.r1 * s, +1);
        record(Condition::c3, s, r.r2 * s * s, +1);
        record(Condition::c4, s, ratio_slope(r, Ratio::m2_over_m1), -1);
        record(Condition::log_decreasing, s, ratio_slope(r, Ratio::m1_over_m), -1);
    }

    // Endpoint conditions m(0) = 0, m'(0) = 0 at the clip point.
    const Jet3 at_eps = m.eval_at(opt.eps);
    rep.m_at_eps = at_eps.f0;
    rep.slope_at_eps = at_eps.f1;
    bool c1_endpoint = std::abs(at_eps.f0) < opt.endpoint_tol;
    bool c2_endpoint = std::abs(at_eps.f1) < opt.endpoint_tol_slope;
    if (!c2_endpoint && at_eps.f1 > 0.0) {
        // m' ~ c s^k near 0 with k > 0 still vanishes at 0.
        const double decay = opt.eps * at_eps.f2 / at_eps.f1;
        c2_endpoint = decay >= opt.min_slope_decay;
    }

    auto finish = [&](Condition c, bool endpoint_ok, double endpoint_value) {
        Tally& t = tally[static_cast<std::size_t>(c)];
        Verdict v = verdict_of(t);
        if (t.fails > 0) {
            rep.witnesses.push_back({c, t.first_s, t.first_v, false});
            if (t.worst_s != t.first_s) rep.witnesses.push_back({c, t.worst_s, t.worst_v, false});
        }
        if (!endpoint_ok) {
            v = Verdict::fail;
            rep.witnesses.push_back({c, opt.eps, endpoint_value, false});
        }
        return v;
    };

    rep.c1 = finish(Condition::c1, c1_endpoint, at_eps.f0);
    rep.c2 = finish(Condition::c2, c2_endpoint, at_eps.f1);
    rep.c3 = finish(Condition::c3, true, 0.0);
    rep.c4 = finish(Condition::c4, true, 0.0);
    rep.log_decreasing = finish(Condition::log_decreasing, true, 0.0);
    rep.c4star = both(rep.c4, rep.log_decreasing);
    rep.in_class_M = rep.c1 == Verdict::pass && rep.c2 == Verdict::pass &&
                     rep.c3 == Verdict::pass && rep.c4 == Verdict::pass;

    try {
        rep.criterion_T3 = criterion_T3(m);
    } catch (const DomainError&) {
        rep.criterion_T3 = nan;
    }
    return rep;
}

double criterion_T3(const models::ModelExpr& m) {
    const Jet3 j = m.eval_at(0.5);
    if (j.f0 == 0.0) throw DomainError("criterion: m(0.5) is zero", 0.5);
    const double m2 = j.f0 * j.f0;
    return (j.f3 * j.f0 - 3.0 * j.f2 * j.f1) / (m2 * m2);
}

std::vector<double> monotonicity_change_of_ratio(const models::ModelExpr& m, Ratio which,
                                                 const RatioScanOptions& opt) {
    if (opt.grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");
    auto slope_at = [&](double s) { return ratio_slope(ratios(m.eval_at(s)), which); };

    const auto grid = uniform_grid(opt.eps, 1.0 - opt.eps, opt.grid_n);
    std::vector<double> values;
    values.reserve(grid.size());
    for (double s : grid) values.push_back(slope_at(s));

    std::vector<double> roots;
    for (const auto& b : sign_changes(grid, values, opt.zero_tol)) {
        roots.push_back(bisect(slope_at, b.lo, b.hi, opt.tol));
    }
    return roots;
}

}  // namespace blflux::classifier
