#pragma once

#include "blflux/jet.hpp"
#include "blflux/models.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace blflux::flux {

using models::ModelPair;

/// Jet of f(s) = m_a(s) / (m_a(s) + m_b(1 - s)). Throws DomainError when the
/// total mobility vanishes.
Jet3 f_jet(const ModelPair& pair, double s);

/// f'' from the closed form
///   ((m_a'' m_b - m_a m_b'') m - 2 m' h) / m^3,
///   m = m_a + m_b,  m' = m_a' - m_b',  h = m_a' m_b + m_a m_b',
/// with m_b and its derivatives taken at 1 - s.
double f2_closed(const ModelPair& pair, double s);

/// h / m^2, the closed form of f'.
double f1_closed(const ModelPair& pair, double s);

/// Flux as a callable returning f and its derivatives at s.
std::function<Jet3(double)> as_function(const ModelPair& pair);

enum class Direction { rising, falling };  // f'' goes - to + / + to -

struct Inflection {
    double s;
    Direction direction;
};

struct AuxRoot {
    double s;
    /// Number of sign changes seen on the grid; > 1 means the root used is
    /// the first of several.
    int sign_changes = 1;
};

struct FluxAnalysis {
    std::vector<Inflection> inflections;
    /// Root of m_a'(s) - m_b'(1 - s).
    std::optional<AuxRoot> s1;
    /// Root of m_a''(s) m_b(1 - s) - m_a(s) m_b''(1 - s).
    std::optional<AuxRoot> s2;
    bool s_shaped = false;
    /// f'''(0.5); populated for symmetric pairs only.
    std::optional<double> f3_at_half;
    /// Grid points where |f''| is a tiny local minimum with no sign change.
    std::vector<double> tangency_warnings;
};

struct ScanOptions {
    int grid_n = 8192;
    double eps = 1e-6;
    double tol = 1e-12;
    /// |f''| below this at a grid point without a sign change is a tangency
    /// warning.
    double tangency_tol = 1e-13;
};

std::optional<AuxRoot> find_s1(const ModelPair& pair, const ScanOptions& options = {});
std::optional<AuxRoot> find_s2(const ModelPair& pair, const ScanOptions& options = {});

/// Transversal sign changes of f'' on the clipped grid, refined by
/// bisection. Throws std::invalid_argument when grid_n < 1000.
FluxAnalysis inflection_points(const ModelPair& pair, const ScanOptions& options = {});

struct Sample {
    double s;
    double f;
    double f2;
};

/// (s, f, f'') on n points of [0, 1] inclusive. f is exactly 0 and 1 at the
/// ends; f'' there is taken at the clip points eps and 1 - eps.
std::vector<Sample> tabulate(const ModelPair& pair, int n, double eps = 1e-6);

}  // namespace blflux::flux
