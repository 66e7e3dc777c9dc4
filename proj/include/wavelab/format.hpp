#pragma once

#include <string>

namespace wavelab {

/// Shortest decimal that round-trips to the same double (at most 17 digits).
std::string format_double(double v);

}  // namespace wavelab
