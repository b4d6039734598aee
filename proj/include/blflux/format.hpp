#pragma once

#include <string>

namespace blflux {

/// Shortest decimal text that reads back to exactly `x`.
std::string format_double(double x);

}  // namespace blflux
