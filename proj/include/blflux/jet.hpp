#pragma once

#include <functional>
#include <iosfwd>

namespace blflux {

/// Order-3 truncated Taylor jet: a value and its first three derivatives
/// with respect to the saturation s.
struct Jet3 {
    double f0 = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;

    constexpr Jet3() noexcept = default;
    constexpr Jet3(double v0, double v1, double v2, double v3) noexcept
        : f0(v0), f1(v1), f2(v2), f3(v3) {}

    static constexpr Jet3 constant(double c) noexcept { return {c, 0.0, 0.0, 0.0}; }

    /// k-th component, k in [0, 3].
    constexpr double operator[](int k) const noexcept {
        return k == 0 ? f0 : k == 1 ? f1 : k == 2 ? f2 : f3;
    }

    constexpr bool operator==(const Jet3&) const noexcept = default;
};

/// Jet of the identity s -> s at the point s.
constexpr Jet3 seed(double s) noexcept { return {s, 1.0, 0.0, 0.0}; }

Jet3 add(const Jet3& a, const Jet3& b) noexcept;
Jet3 sub(const Jet3& a, const Jet3& b) noexcept;
Jet3 neg(const Jet3& a) noexcept;
Jet3 mul(const Jet3& a, const Jet3& b) noexcept;
Jet3 scale(const Jet3& a, double c) noexcept;

/// Quotient rule through order 3. Throws DomainError when b.f0 == 0.
Jet3 div(const Jet3& a, const Jet3& b);

/// a^p. Non-integer p requires a.f0 > 0; integer p with a negative
/// exponent requires a.f0 != 0. Throws DomainError otherwise.
Jet3 pow_const(const Jet3& a, double p);

Jet3 exp_jet(const Jet3& a) noexcept;

/// Derivatives of a scalar function evaluated through jets.
using JetFunction = std::function<Jet3(const Jet3&)>;

/// Jet of s -> m(1 - s) at s: m's jet at 1 - s with the odd derivatives
/// negated.
Jet3 reflect(const JetFunction& m, double s);

inline Jet3 operator+(const Jet3& a, const Jet3& b) noexcept { return add(a, b); }
inline Jet3 operator-(const Jet3& a, const Jet3& b) noexcept { return sub(a, b); }
inline Jet3 operator-(const Jet3& a) noexcept { return neg(a); }
inline Jet3 operator*(const Jet3& a, const Jet3& b) noexcept { return mul(a, b); }
inline Jet3 operator/(const Jet3& a, const Jet3& b) { return div(a, b); }

std::ostream& operator<<(std::ostream& os, const Jet3& j);

}  // namespace blflux
