#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace blflux {

/// Raised when a jet or model cannot be evaluated (zero divisor, non-integer
/// power of a non-positive value, ...). `point()` is the saturation at which
/// evaluation failed, or NaN when the failing operation did not know it.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what,
                         double point = std::numeric_limits<double>::quiet_NaN())
        : std::domain_error(what), point_(point) {}

    double point() const noexcept { return point_; }
    bool has_point() const noexcept { return !std::isnan(point_); }

private:
    double point_;
};

/// Model text that does not conform to the expression grammar.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Preset constructed with parameters outside its valid domain.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace blflux
