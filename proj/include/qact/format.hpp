#pragma once

#include <string>

namespace qact {

/// Shortest round-trippable decimal form of a double.
std::string format_double(double value);

}  // namespace qact
