#include "blflux/riemann.hpp"

#include "blflux/error.hpp"
#include "blflux/flux.hpp"
#include "blflux/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blflux::riemann {

FluxFunction pair_flux(const models::ModelPair& pair, double clip) {
    return [pair, clip](double s) {
        try {
            return flux::f_jet(pair, s);
        } catch (const DomainError&) {
            const double inner = std::clamp(s, clip, 1.0 - clip);
            if (inner == s) throw;
            return flux::f_jet(pair, inner);
        }
    };
}

FluxFunction expr_flux(const models::ModelExpr& f) {
    return [f](double s) { return f.eval_at(s); };
}

namespace {

struct Point {
    double x;
    double y;
    double slope;
};

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Indices of the lower (upper) hull of points sorted by x.
std::vector<std::size_t> monotone_chain(const std::vector<Point>& pts, Orientation orientation) {
    const double want = orientation == Orientation::convex_lower ? 1.0 : -1.0;
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (hull.size() >= 2 &&
               want * cross(pts[hull[hull.size() - 2]], pts[hull.back()], pts[i]) < 0.0) {
            hull.pop_back();
        }
        hull.push_back(i);
    }
    return hull;
}

// Moves a chord end point from a hull sample to the nearby tangency point
// f'(x) = slope of the chord to the fixed opposite end. Keeps `x` when no
// bracket is found.
double refine_end(const FluxFunction& f, const std::vector<Point>& pts, std::size_t idx,
                  double fixed_x, double x, double tol) {
    const double fixed_y = f(fixed_x).f0;
    auto g = [&](double t) {
        const Jet3 j = f(t);
        return j.f1 * (fixed_x - t) - (fixed_y - j.f0);
    };
    const std::size_t n = pts.size();
    for (std::size_t width = 1; width <= 4; ++width) {
        const std::size_t lo_i = idx >= width ? idx - width : 0;
        const std::size_t hi_i = std::min(n - 1, idx + width);
        double lo = pts[lo_i].x;
        double hi = pts[hi_i].x;
        // Stay strictly on this side of the fixed end.
        if (fixed_x > x) hi = std::min(hi, fixed_x - tol);
        if (fixed_x < x) lo = std::max(lo, fixed_x + tol);
        if (!(lo < hi)) break;
        const int s_lo = sign_of(g(lo));
        const int s_hi = sign_of(g(hi));
        if (s_lo == 0) return lo;
        if (s_hi == 0) return hi;
        if (s_lo != s_hi) return bisect(g, lo, hi, tol);
    }
    return x;
}

// Where a rarefaction meets a shock at a refined tangency point the two
// speeds agree up to the refinement tolerance; make them equal so the fan
// is exactly ordered.
void snap_tangent_speeds(std::vector<Wave>& waves) {
    constexpr double rel = 1e-6;
    auto near = [](double a, double b) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); };
    for (std::size_t i = 0; i + 1 < waves.size(); ++i) {
        Wave& w = waves[i];
        Wave& next = waves[i + 1];
        if (!w.is_shock() && next.is_shock() && near(w.speed_hi, next.speed_lo)) {
            w.speed_hi = next.speed_lo;
        } else if (w.is_shock() && !next.is_shock() && near(next.speed_lo, w.speed_hi)) {
            next.speed_lo = w.speed_hi;
        }
    }
}

// Where f is flat to machine precision the sampled hull carries no
// curvature information and a contact arc may have decreasing f'. Such arcs
// become shocks, and shocks that then run out of order merge into one.
void regularize(std::vector<Wave>& waves, const FluxFunction& f) {
    auto rh_speed = [&](double l, double r) { return (f(r).f0 - f(l).f0) / (r - l); };
    for (auto& w : waves) {
        if (!w.is_shock() && w.speed_lo > w.speed_hi) {
            const double speed = rh_speed(w.left_state, w.right_state);
            w = {Wave::Kind::shock, w.left_state, w.right_state, speed, speed};
        }
    }
    for (std::size_t i = 0; i + 1 < waves.size();) {
        Wave& w = waves[i];
        const Wave& next = waves[i + 1];
        if (w.is_shock() && next.is_shock() && w.speed_hi > next.speed_lo) {
            const double speed = rh_speed(w.left_state, next.right_state);
            w = {Wave::Kind::shock, w.left_state, next.right_state, speed, speed};
            waves.erase(waves.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            if (i > 0) --i;
        } else {
            ++i;
        }
    }
}

}  // namespace

Envelope envelope(const FluxFunction& f, double a, double b, Orientation orientation,
                  const EnvelopeOptions& opt) {
    if (a > b) throw std::invalid_argument("envelope: a must not exceed b");
    if (opt.samples < 3) throw std::invalid_argument("envelope: need at least 3 samples");
    Envelope env;
    env.orientation = orientation;
    env.a = a;
    env.b = b;
    if (a == b) return env;

    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(opt.samples));
    for (double x : uniform_grid(a, b, opt.samples)) {
        const Jet3 j = f(x);
        pts.push_back({x, j.f0, j.f1});
    }

    const auto hull = monotone_chain(pts, orientation);
    const std::size_t last = pts.size() - 1;

    struct Chord {
        double lo, hi;
    };
    // Hull edges that stay within rounding of the sampled graph, and along
    // which f' is monotone the right way, are contact arcs; they come from f
    // being linear or flat to machine precision.
    double y_scale = 0.0;
    for (const auto& p : pts) y_scale = std::max(y_scale, std::abs(p.y));
    const double flat_tol = opt.flat_tol * y_scale;
    const double want = orientation == Orientation::convex_lower ? 1.0 : -1.0;
    auto max_gap = [&](std::size_t i, std::size_t j) {
        double gap = 0.0;
        const double slope = (pts[j].y - pts[i].y) / (pts[j].x - pts[i].x);
        for (std::size_t k = i + 1; k < j; ++k) {
            gap = std::max(gap, want * (pts[k].y - (pts[i].y + slope * (pts[k].x - pts[i].x))));
        }
        return gap;
    };
    auto monotone_slope = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = i; k < j; ++k) {
            if (want * (pts[k + 1].slope - pts[k].slope) < 0.0) return false;
        }
        return true;
    };

    std::vector<Chord> chords;
    double floor_x = a;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const std::size_t i = hull[k];
        const std::size_t j = hull[k + 1];
        if (j == i + 1 || (max_gap(i, j) <= flat_tol && monotone_slope(i, j))) continue;
        double lo = pts[i].x;
        double hi = pts[j].x;
        // Alternate the two tangency conditions until the bitangent settles.
        for (int iter = 0; iter < 50; ++iter) {
            const double prev_lo = lo, prev_hi = hi;
            if (i > 0) lo = refine_end(f, pts, i, hi, lo, opt.tol);
            if (j < last) hi = refine_end(f, pts, j, lo, hi, opt.tol);
            if (std::abs(lo - prev_lo) < opt.tol && std::abs(hi - prev_hi) < opt.tol) break;
        }
        lo = std::max(lo, floor_x);
        if (!(lo < hi)) continue;
        chords.push_back({lo, hi});
        floor_x = hi;
    }

    // Contact arcs fill the gaps between chords.
    double cursor = a;
    auto add_contact = [&](double to) {
        if (to > cursor) env.pieces.push_back({EnvelopePiece::Kind::contact, cursor, to});
    };
    for (const auto& c : chords) {
        add_contact(c.lo);
        env.pieces.push_back({EnvelopePiece::Kind::chord, c.lo, c.hi});
        cursor = c.hi;
    }
    add_contact(b);
    return env;
}

double envelope_value(const Envelope& env, const FluxFunction& f, double s) {
    for (const auto& p : env.pieces) {
        if (s < p.lo || s > p.hi) continue;
        if (p.kind == EnvelopePiece::Kind::contact) return f(s).f0;
        const double y0 = f(p.lo).f0;
        const double y1 = f(p.hi).f0;
        return y0 + (y1 - y0) * (s - p.lo) / (p.hi - p.lo);
    }
    return f(s).f0;
}

WaveFan solve(const RiemannProblem& problem, const EnvelopeOptions& options) {
    WaveFan fan;
    fan.s_left = problem.s_left;
    fan.s_right = problem.s_right;
    fan.flux = problem.flux;
    const double sl = problem.s_left;
    const double sr = problem.s_right;
    if (sl == sr) return fan;

    const FluxFunction& f = problem.flux;
    auto slope = [&](double x, double y) { return (f(y).f0 - f(x).f0) / (y - x); };
    auto deriv = [&](double x) { return f(x).f1; };

    if (sl < sr) {
        const Envelope env = envelope(f, sl, sr, Orientation::convex_lower, options);
        for (const auto& p : env.pieces) {
            if (p.kind == EnvelopePiece::Kind::chord) {
                const double speed = slope(p.lo, p.hi);
                fan.waves.push_back({Wave::Kind::shock, p.lo, p.hi, speed, speed});
            } else {
                fan.waves.push_back({Wave::Kind::rarefaction, p.lo, p.hi, deriv(p.lo), deriv(p.hi)});
            }
        }
    } else {
        const Envelope env = envelope(f, sr, sl, Orientation::concave_upper, options);
        for (auto it = env.pieces.rbegin(); it != env.pieces.rend(); ++it) {
            const auto& p = *it;
            if (p.kind == EnvelopePiece::Kind::chord) {
                const double speed = slope(p.lo, p.hi);
                fan.waves.push_back({Wave::Kind::shock, p.hi, p.lo, speed, speed});
            } else {
                fan.waves.push_back({Wave::Kind::rarefaction, p.hi, p.lo, deriv(p.hi), deriv(p.lo)});
            }
        }
    }
    regularize(fan.waves, f);
    snap_tangent_speeds(fan.waves);
    return fan;
}

double evaluate(const WaveFan& fan, double xi, double tol) {
    for (const auto& w : fan.waves) {
        if (xi < w.speed_lo) return w.left_state;
        if (w.is_shock()) continue;
        if (xi <= w.speed_hi) {
            const double lo = std::min(w.left_state, w.right_state);
            const double hi = std::max(w.left_state, w.right_state);
            auto g = [&](double s) { return fan.flux(s).f1 - xi; };
            if (sign_of(g(lo)) == 0) return lo;
            if (sign_of(g(hi)) == 0) return hi;
            if (sign_of(g(lo)) == sign_of(g(hi))) {
                // xi sits at an end speed up to rounding.
                return std::abs(g(w.left_state)) <= std::abs(g(w.right_state)) ? w.left_state
                                                                                : w.right_state;
            }
            return bisect(g, lo, hi, tol);
        }
    }
    return fan.waves.empty() ? fan.s_left : fan.waves.back().right_state;
}

}  // namespace blflux::riemann
