#include "blflux/jet.hpp"

#include "blflux/error.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace blflux {

namespace {

bool is_integer(double p) { return std::isfinite(p) && std::floor(p) == p; }

// Faa di Bruno through order 3 for g(u(s)) given g', g'', g''' at u.
Jet3 compose(const Jet3& u, double g0, double g1, double g2, double g3) noexcept {
    const double u1 = u.f1, u2 = u.f2, u3 = u.f3;
    return {g0,
            g1 * u1,
            g2 * u1 * u1 + g1 * u2,
            g3 * u1 * u1 * u1 + 3.0 * g2 * u1 * u2 + g1 * u3};
}

}  // namespace

Jet3 add(const Jet3& a, const Jet3& b) noexcept {
    return {a.f0 + b.f0, a.f1 + b.f1, a.f2 + b.f2, a.f3 + b.f3};
}

Jet3 sub(const Jet3& a, const Jet3& b) noexcept {
    return {a.f0 - b.f0, a.f1 - b.f1, a.f2 - b.f2, a.f3 - b.f3};
}

Jet3 neg(const Jet3& a) noexcept { return {-a.f0, -a.f1, -a.f2, -a.f3}; }

Jet3 scale(const Jet3& a, double c) noexcept {
    return {c * a.f0, c * a.f1, c * a.f2, c * a.f3};
}

Jet3 mul(const Jet3& a, const Jet3& b) noexcept {
    return {a.f0 * b.f0,
            a.f1 * b.f0 + a.f0 * b.f1,
            a.f2 * b.f0 + 2.0 * a.f1 * b.f1 + a.f0 * b.f2,
            a.f3 * b.f0 + 3.0 * a.f2 * b.f1 + 3.0 * a.f1 * b.f2 + a.f0 * b.f3};
}

Jet3 div(const Jet3& a, const Jet3& b) {
    if (b.f0 == 0.0) {
        throw DomainError("division by a jet with zero value");
    }
    const double inv = 1.0 / b.f0;
    const double q0 = a.f0 * inv;
    const double q1 = (a.f1 - q0 * b.f1) * inv;
    const double q2 = (a.f2 - 2.0 * q1 * b.f1 - q0 * b.f2) * inv;
    const double q3 = (a.f3 - 3.0 * q2 * b.f1 - 3.0 * q1 * b.f2 - q0 * b.f3) * inv;
    return {q0, q1, q2, q3};
}

Jet3 pow_const(const Jet3& a, double p) {
    if (!std::isfinite(p)) {
        throw DomainError("non-finite exponent");
    }
    const double u = a.f0;
    const bool integral = is_integer(p);
    if (!integral && u <= 0.0) {
        throw DomainError("non-integer power " + std::to_string(p) +
                          " of non-positive value " + std::to_string(u));
    }
    if (integral && p < 0.0 && u == 0.0) {
        throw DomainError("negative power of zero");
    }
    if (p == 0.0) {
        return Jet3::constant(1.0);
    }
    // g_k = p (p-1) ... (p-k+1) u^(p-k); the falling factorial vanishes for
    // integer p < k, which keeps u = 0 finite for polynomials.
    double g[4];
    double coef = 1.0;
    for (int k = 0; k < 4; ++k) {
        g[k] = coef == 0.0 ? 0.0 : coef * std::pow(u, p - k);
        coef *= (p - k);
    }
    return compose(a, g[0], g[1], g[2], g[3]);
}

Jet3 exp_jet(const Jet3& a) noexcept {
    const double e = std::exp(a.f0);
    return compose(a, e, e, e, e);
}

Jet3 reflect(const JetFunction& m, double s) {
    const Jet3 j = m(seed(1.0 - s));
    return {j.f0, -j.f1, j.f2, -j.f3};
}

std::ostream& operator<<(std::ostream& os, const Jet3& j) {
    return os << '(' << j.f0 << ", " << j.f1 << ", " << j.f2 << ", " << j.f3 << ')';
}

}  // namespace blflux
