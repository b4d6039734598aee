#pragma once

#include "blflux/jet.hpp"
#include "blflux/models.hpp"

#include <functional>
#include <vector>

namespace blflux::riemann {

/// Flux f and its derivatives at a state s.
using FluxFunction = std::function<Jet3(double)>;

/// Buckley-Leverett flux of a mobility pair. States where the models cannot
/// be evaluated exactly (non-integer powers at s = 0 or 1) are clamped to
/// [clip, 1 - clip].
FluxFunction pair_flux(const models::ModelPair& pair, double clip = 1e-9);

/// A single expression used directly as the flux f(s).
FluxFunction expr_flux(const models::ModelExpr& f);

enum class Orientation { convex_lower, concave_upper };

struct EnvelopePiece {
    enum class Kind { contact, chord };
    Kind kind;
    double lo;
    double hi;
};

/// Convex (or concave) envelope of f on [a, b] as increasing, contiguous
/// pieces: contact arcs where the envelope equals f and straight chords.
struct Envelope {
    Orientation orientation = Orientation::convex_lower;
    double a = 0.0;
    double b = 0.0;
    std::vector<EnvelopePiece> pieces;

    bool empty() const noexcept { return pieces.empty(); }
};

struct EnvelopeOptions {
    int samples = 4096;
    double tol = 1e-10;
    /// Hull edges whose largest gap to the samples is below this (relative
    /// to max |f| on [a, b]) count as contact arcs.
    double flat_tol = 1e-13;
};

/// Monotone-chain hull of the sampled graph, with chord end points refined
/// to tangency f'(x) = chord slope. a == b yields an empty envelope; a > b
/// throws std::invalid_argument.
Envelope envelope(const FluxFunction& f, double a, double b, Orientation orientation,
                  const EnvelopeOptions& options = {});

/// Envelope value at s in [a, b].
double envelope_value(const Envelope& env, const FluxFunction& f, double s);

struct Wave {
    enum class Kind { shock, rarefaction };
    Kind kind;
    double left_state;
    double right_state;
    /// Shock: both equal the Rankine-Hugoniot speed. Rarefaction: f' at
    /// the left and right states.
    double speed_lo;
    double speed_hi;

    bool is_shock() const noexcept { return kind == Kind::shock; }
};

struct WaveFan {
    double s_left = 0.0;
    double s_right = 0.0;
    std::vector<Wave> waves;
    FluxFunction flux;
};

struct RiemannProblem {
    double s_left;
    double s_right;
    FluxFunction flux;
};

/// Entropy solution by the convex-hull construction: lower convex envelope
/// on [s_L, s_R] when s_L < s_R, upper concave envelope on [s_R, s_L] when
/// s_L > s_R. Contact arcs become rarefactions, chords become shocks.
WaveFan solve(const RiemannProblem& problem, const EnvelopeOptions& options = {});

/// s(x / t) of the self-similar solution.
double evaluate(const WaveFan& fan, double xi, double tol = 1e-10);

}  // namespace blflux::riemann
