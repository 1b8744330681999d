#pragma once

#include <cstddef>

#include "rainbow/instance.hpp"

namespace rainbow::reference {

/// Brute force over increasing color subsets and every edge choice.
[[nodiscard]] bool has_rainbow(const Instance& inst, std::size_t size);

/// Brute force over every t-tuple of (color, edge) picks.
[[nodiscard]] bool strong_property_holds(const Instance& inst);

} // namespace rainbow::reference
